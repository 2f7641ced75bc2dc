#include "ctrsnc/ctrs.hpp"

#include <sstream>

namespace ctrsnc {

bool Rule::operator==(const Rule& other) const {
  return lhs == other.lhs && rhs == other.rhs &&
         conditions == other.conditions && label == other.label;
}

std::string Rule::str() const {
  std::ostringstream out;
  out << lhs.str() << " -> " << rhs.str();
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    out << (i == 0 ? " | " : ", ");
    out << conditions[i].first.str() << " == " << conditions[i].second.str();
  }
  return out.str();
}

void collect_vars(const Rule& rule, std::vector<std::string>& order,
                  std::set<std::string>& seen) {
  collect_vars(rule.lhs, order, seen);
  collect_vars(rule.rhs, order, seen);
  for (const auto& [s, t] : rule.conditions) {
    collect_vars(s, order, seen);
    collect_vars(t, order, seen);
  }
}

std::set<std::string> vars_of(const Rule& rule) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_vars(rule, order, seen);
  return seen;
}

Rule apply_substitution(const Rule& rule, const Substitution& sigma) {
  Rule out;
  out.lhs = sigma.apply(rule.lhs);
  out.rhs = sigma.apply(rule.rhs);
  out.conditions.reserve(rule.conditions.size());
  for (const auto& [s, t] : rule.conditions)
    out.conditions.emplace_back(sigma.apply(s), sigma.apply(t));
  out.label = rule.label;
  return out;
}

Rule apply_renaming(const Rule& rule, const Renaming& pi) {
  Rule out;
  out.lhs = pi.apply(rule.lhs);
  out.rhs = pi.apply(rule.rhs);
  out.conditions.reserve(rule.conditions.size());
  for (const auto& [s, t] : rule.conditions)
    out.conditions.emplace_back(pi.apply(s), pi.apply(t));
  out.label = rule.label;
  return out;
}

std::pair<Rule, Renaming> rename_apart(const Rule& rule,
                                       const std::set<std::string>& avoid) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_vars(rule, order, seen);
  std::set<std::string> used = avoid;
  used.insert(seen.begin(), seen.end());
  Renaming ren;
  for (const std::string& name : order)
    if (avoid.count(name)) ren.add(name, fresh_var_name(used));
  return {apply_renaming(rule, ren), ren};
}

namespace {
void check_term(const Term& t, std::map<std::string, int>& signature,
                std::set<std::string>& var_names, int rule_number) {
  if (t.is_var()) {
    var_names.insert(t.head());
    return;
  }
  auto [it, inserted] = signature.emplace(t.head(), t.arity());
  if (!inserted && it->second != t.arity())
    throw SystemError("symbol " + t.head() + " used with arities " +
                      std::to_string(it->second) + " and " +
                      std::to_string(t.arity()) + " (rule " +
                      std::to_string(rule_number) + ")");
  for (const Term& a : t.args())
    check_term(a, signature, var_names, rule_number);
}
}  // namespace

Ctrs Ctrs::make(std::vector<Rule> rules) {
  Ctrs out;
  std::set<std::string> var_names;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& rule = rules[i];
    int number = static_cast<int>(i) + 1;
    if (rule.lhs.is_var())
      throw SystemError("left-hand side of rule " + std::to_string(number) +
                        " is a variable");
    check_term(rule.lhs, out.signature_, var_names, number);
    check_term(rule.rhs, out.signature_, var_names, number);
    for (const auto& [s, t] : rule.conditions) {
      check_term(s, out.signature_, var_names, number);
      check_term(t, out.signature_, var_names, number);
    }
  }
  for (const std::string& v : var_names)
    if (out.signature_.count(v))
      throw SystemError("name " + v +
                        " used both as a variable and as a function symbol");
  out.rules_ = std::move(rules);
  return out;
}

std::set<std::string> Ctrs::all_vars() const {
  std::set<std::string> out;
  for (const Rule& rule : rules_) {
    std::set<std::string> vs = vars_of(rule);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

CtrsType classify(const Ctrs& system) {
  bool type1 = true, type2 = true, type3 = true;
  for (const Rule& rule : system.rules()) {
    std::set<std::string> lhs_vars = vars_of(rule.lhs);
    std::set<std::string> rhs_vars = vars_of(rule.rhs);
    std::set<std::string> cond_vars;
    for (const auto& [s, t] : rule.conditions) {
      std::set<std::string> vs = vars_of(s);
      cond_vars.insert(vs.begin(), vs.end());
      std::set<std::string> vt = vars_of(t);
      cond_vars.insert(vt.begin(), vt.end());
    }
    auto subset = [](const std::set<std::string>& a,
                     const std::set<std::string>& b) {
      for (const std::string& x : a)
        if (!b.count(x)) return false;
      return true;
    };
    std::set<std::string> lhs_and_cond = lhs_vars;
    lhs_and_cond.insert(cond_vars.begin(), cond_vars.end());
    if (!subset(rhs_vars, lhs_vars) || !subset(cond_vars, lhs_vars))
      type1 = false;
    if (!subset(rhs_vars, lhs_vars)) type2 = false;
    if (!subset(rhs_vars, lhs_and_cond)) type3 = false;
  }
  if (type1) return CtrsType::Type1;
  if (type2) return CtrsType::Type2;
  if (type3) return CtrsType::Type3;
  return CtrsType::Type4;
}

Ctrs underlying_trs(const Ctrs& system) {
  std::vector<Rule> rules;
  rules.reserve(system.rules().size());
  for (const Rule& rule : system.rules())
    rules.push_back(Rule{rule.lhs, rule.rhs, {}, rule.label});
  return Ctrs::make(std::move(rules));
}

bool is_unconditional(const Ctrs& system) {
  for (const Rule& rule : system.rules())
    if (!rule.unconditional()) return false;
  return true;
}

}  // namespace ctrsnc
