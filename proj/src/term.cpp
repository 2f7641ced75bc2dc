#include "ctrsnc/term.hpp"

#include <deque>
#include <sstream>

namespace ctrsnc {

Term::Term() {
  static const std::shared_ptr<const Data> placeholder =
      std::make_shared<const Data>(Data{true, "_", {}});
  data_ = placeholder;
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const Data>(
      Data{true, std::move(name), {}}));
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  return Term(std::make_shared<const Data>(
      Data{false, std::move(symbol), std::move(args)}));
}

bool Term::operator==(const Term& other) const {
  if (data_ == other.data_) return true;
  if (data_->is_var != other.data_->is_var) return false;
  if (data_->head != other.data_->head) return false;
  if (data_->args.size() != other.data_->args.size()) return false;
  for (std::size_t i = 0; i < data_->args.size(); ++i)
    if (data_->args[i] != other.data_->args[i]) return false;
  return true;
}

bool Term::operator<(const Term& other) const {
  if (data_ == other.data_) return false;
  if (data_->is_var != other.data_->is_var) return data_->is_var;
  if (data_->head != other.data_->head) return data_->head < other.data_->head;
  if (data_->args.size() != other.data_->args.size())
    return data_->args.size() < other.data_->args.size();
  for (std::size_t i = 0; i < data_->args.size(); ++i) {
    if (data_->args[i] < other.data_->args[i]) return true;
    if (other.data_->args[i] < data_->args[i]) return false;
  }
  return false;
}

std::string Term::str() const {
  if (is_var() || args().empty()) return head();
  std::ostringstream out;
  out << head() << '(';
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i > 0) out << ',';
    out << args()[i].str();
  }
  out << ')';
  return out.str();
}

std::string position_str(const Position& p) {
  if (p.empty()) return "root";
  std::ostringstream out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out << '.';
    out << p[i];
  }
  return out.str();
}

const Term* subterm_at_opt(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int idx : p) {
    if (cur->is_var() || idx < 1 || idx > cur->arity()) return nullptr;
    cur = &cur->args()[static_cast<std::size_t>(idx - 1)];
  }
  return cur;
}

Term subterm_at(const Term& t, const Position& p) {
  const Term* sub = subterm_at_opt(t, p);
  if (!sub)
    throw PositionError("no subterm of " + t.str() + " at position " +
                        position_str(p));
  return *sub;
}

Term replace_at(const Term& t, const Position& p, const Term& u) {
  if (p.empty()) return u;
  if (t.is_var() || p.front() < 1 || p.front() > t.arity())
    throw PositionError("no subterm of " + t.str() + " at position " +
                        position_str(p));
  std::vector<Term> args = t.args();
  Position rest(p.begin() + 1, p.end());
  std::size_t i = static_cast<std::size_t>(p.front() - 1);
  args[i] = replace_at(args[i], rest, u);
  return Term::app(t.head(), std::move(args));
}

namespace {
void function_positions_impl(const Term& t, Position& here,
                             std::vector<Position>& out) {
  if (t.is_var()) return;
  out.push_back(here);
  for (int i = 1; i <= t.arity(); ++i) {
    here.push_back(i);
    function_positions_impl(t.args()[static_cast<std::size_t>(i - 1)], here, out);
    here.pop_back();
  }
}
}  // namespace

std::vector<Position> function_positions(const Term& t) {
  std::vector<Position> out;
  Position here;
  function_positions_impl(t, here, out);
  return out;
}

Substitution Substitution::singleton(const std::string& var, Term image) {
  Substitution s;
  s.bind(var, std::move(image));
  return s;
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term image) {
  if (image.is_var() && image.head() == var) {
    map_.erase(var);
    return;
  }
  map_.insert_or_assign(var, std::move(image));
}

Term Substitution::apply(const Term& t) const {
  if (map_.empty()) return t;
  if (t.is_var()) {
    const Term* image = lookup(t.head());
    return image ? *image : t;
  }
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term b = apply(a);
    if (b != a) changed = true;
    args.push_back(std::move(b));
  }
  if (!changed) return t;
  return Term::app(t.head(), std::move(args));
}

Substitution Substitution::compose(const Substitution& then) const {
  Substitution out;
  for (const auto& [var, image] : map_) out.bind(var, then.apply(image));
  for (const auto& [var, image] : then.map_)
    if (map_.find(var) == map_.end()) out.bind(var, image);
  return out;
}

Substitution Substitution::merge(const Substitution& other) const {
  Substitution out = *this;
  for (const auto& [var, image] : other.map_) {
    if (const Term* mine = out.lookup(var); mine && *mine != image)
      throw RewriteError("conflicting bindings for " + var);
    out.bind(var, image);
  }
  return out;
}

Substitution Substitution::restricted_to(
    const std::set<std::string>& domain) const {
  Substitution out;
  for (const auto& [var, image] : map_)
    if (domain.count(var)) out.bind(var, image);
  return out;
}

std::string Substitution::str() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [var, image] : map_) {
    if (!first) out << ", ";
    first = false;
    out << var << " -> " << image.str();
  }
  out << '}';
  return out.str();
}

void Renaming::add(std::string from, std::string to) {
  if (from == to) return;
  map_.insert_or_assign(std::move(from), std::move(to));
}

const std::string& Renaming::apply_name(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? name : it->second;
}

Term Renaming::apply(const Term& t) const {
  if (map_.empty()) return t;
  if (t.is_var()) {
    const std::string& to = apply_name(t.head());
    return to == t.head() ? t : Term::var(to);
  }
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term b = apply(a);
    if (b != a) changed = true;
    args.push_back(std::move(b));
  }
  if (!changed) return t;
  return Term::app(t.head(), std::move(args));
}

Renaming Renaming::inverse() const {
  Renaming out;
  for (const auto& [from, to] : map_) out.add(to, from);
  return out;
}

Substitution Renaming::as_substitution() const {
  Substitution out;
  for (const auto& [from, to] : map_) out.bind(from, Term::var(to));
  return out;
}

void collect_vars(const Term& t, std::vector<std::string>& order,
                  std::set<std::string>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.head()).second) order.push_back(t.head());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, order, seen);
}

std::set<std::string> vars_of(const Term& t) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_vars(t, order, seen);
  return seen;
}

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const Term& a : t.args())
    if (!is_ground(a)) return false;
  return true;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.head() == var;
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

std::string fresh_var_name(std::set<std::string>& used) {
  for (unsigned long n = 0;; ++n) {
    std::string name = "_v" + std::to_string(n);
    if (used.insert(name).second) return name;
  }
}

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sigma;
  std::deque<std::pair<Term, Term>> work;
  work.emplace_back(s, t);
  while (!work.empty()) {
    Term a = sigma.apply(work.front().first);
    Term b = sigma.apply(work.front().second);
    work.pop_front();
    if (a == b) continue;
    if (a.is_var()) {
      if (occurs(a.head(), b)) return std::nullopt;
      sigma = sigma.compose(Substitution::singleton(a.head(), b));
      continue;
    }
    if (b.is_var()) {
      if (occurs(b.head(), a)) return std::nullopt;
      sigma = sigma.compose(Substitution::singleton(b.head(), a));
      continue;
    }
    if (a.head() != b.head() || a.arity() != b.arity()) return std::nullopt;
    for (int i = a.arity() - 1; i >= 0; --i)
      work.emplace_front(a.args()[static_cast<std::size_t>(i)],
                         b.args()[static_cast<std::size_t>(i)]);
  }
  return sigma;
}

namespace {
// Bindings are tracked in a plain map so that "bound to itself" is
// distinguishable from "unbound" for non-linear patterns.
bool match_impl(const Term& pattern, const Term& subject,
                std::map<std::string, Term>& bound) {
  if (pattern.is_var()) {
    auto it = bound.find(pattern.head());
    if (it != bound.end()) return it->second == subject;
    bound.emplace(pattern.head(), subject);
    return true;
  }
  if (subject.is_var()) return false;
  if (pattern.head() != subject.head() || pattern.arity() != subject.arity())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_impl(pattern.args()[i], subject.args()[i], bound)) return false;
  return true;
}
}  // namespace

std::optional<Substitution> match_term(const Term& pattern,
                                       const Term& subject) {
  std::map<std::string, Term> bound;
  if (!match_impl(pattern, subject, bound)) return std::nullopt;
  Substitution out;
  for (auto& [var, image] : bound) out.bind(var, std::move(image));
  return out;
}

std::pair<Term, Renaming> rename_apart(const Term& t,
                                       const std::set<std::string>& avoid) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_vars(t, order, seen);
  std::set<std::string> used = avoid;
  used.insert(seen.begin(), seen.end());
  Renaming ren;
  for (const std::string& name : order)
    if (avoid.count(name)) ren.add(name, fresh_var_name(used));
  return {ren.apply(t), ren};
}

}  // namespace ctrsnc
