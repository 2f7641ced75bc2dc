#include "ctrsnc/analysis.hpp"

#include <algorithm>

#include "ctrsnc/rewriting.hpp"

namespace ctrsnc {

std::vector<Overlap> overlaps(const Ctrs& system) {
  std::vector<Overlap> out;
  const auto& rules = system.rules();
  for (std::size_t outer = 0; outer < rules.size(); ++outer) {
    std::set<std::string> outer_vars = vars_of(rules[outer]);
    for (std::size_t inner = 0; inner < rules.size(); ++inner) {
      auto [variant, rho] = rename_apart(rules[inner], outer_vars);
      for (const Position& p : function_positions(rules[outer].lhs)) {
        if (outer == inner && p.empty()) continue;
        std::optional<Substitution> mgu =
            unify(subterm_at(rules[outer].lhs, p), variant.lhs);
        if (!mgu) continue;
        Overlap o;
        o.outer_index = static_cast<int>(outer);
        o.inner_index = static_cast<int>(inner);
        o.inner_renaming = rho;
        o.position = p;
        o.mgu = std::move(*mgu);
        out.push_back(std::move(o));
      }
    }
  }
  return out;
}

std::vector<CriticalPair> critical_pairs(const Ctrs& system) {
  std::vector<CriticalPair> out;
  for (Overlap& o : overlaps(system)) {
    const Rule& outer = system.rules()[static_cast<std::size_t>(o.outer_index)];
    Rule inner = apply_renaming(
        system.rules()[static_cast<std::size_t>(o.inner_index)],
        o.inner_renaming);
    CriticalPair cp;
    cp.left = o.mgu.apply(replace_at(outer.lhs, o.position, inner.rhs));
    cp.right = o.mgu.apply(outer.rhs);
    for (const auto& [s, t] : outer.conditions)
      cp.conditions.emplace_back(o.mgu.apply(s), o.mgu.apply(t));
    for (const auto& [s, t] : inner.conditions)
      cp.conditions.emplace_back(o.mgu.apply(s), o.mgu.apply(t));
    cp.source = std::move(o);
    out.push_back(std::move(cp));
  }
  return out;
}

namespace {
Term tcap_impl(const Term& t, const Ctrs& trs, std::set<std::string>& used) {
  if (t.is_var()) return Term::var(fresh_var_name(used));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(tcap_impl(a, trs, used));
  Term cap = Term::app(t.head(), std::move(args));
  for (const Rule& rule : trs.rules()) {
    auto [lhs_variant, rho] = rename_apart(rule.lhs, used);
    if (unify(cap, lhs_variant)) return Term::var(fresh_var_name(used));
  }
  return cap;
}
}  // namespace

Term tcap(const Term& t, const Ctrs& trs, const std::set<std::string>& avoid) {
  if (!is_unconditional(trs))
    throw std::invalid_argument("tcap requires an unconditional system");
  std::set<std::string> used = avoid;
  {
    std::set<std::string> vs = vars_of(t);
    used.insert(vs.begin(), vs.end());
    vs = trs.all_vars();
    used.insert(vs.begin(), vs.end());
  }
  return tcap_impl(t, trs, used);
}

const char* evidence_kind_name(NonJoinabilityEvidence::Kind kind) {
  switch (kind) {
    case NonJoinabilityEvidence::Kind::DistinctNormalForms:
      return "distinct_normal_forms";
    case NonJoinabilityEvidence::Kind::TcapNonUnifiable:
      return "tcap_nonunifiable";
  }
  return "?";
}

std::optional<NonJoinabilityEvidence> non_joinability_evidence(
    const Term& t, const Term& u, const Ctrs& trs) {
  if (!is_unconditional(trs))
    throw std::invalid_argument(
        "non_joinability_evidence requires an unconditional system");
  if (t == u) return std::nullopt;
  if (is_normal_form(t, trs) && is_normal_form(u, trs))
    return NonJoinabilityEvidence{
        NonJoinabilityEvidence::Kind::DistinctNormalForms, t, u};
  // The two caps must not share variables, otherwise unification could
  // fail for the wrong reason.
  Term cap_t = tcap(t, trs);
  std::set<std::string> avoid = vars_of(cap_t);
  Term cap_u = tcap(u, trs, avoid);
  if (!unify(cap_t, cap_u))
    return NonJoinabilityEvidence{
        NonJoinabilityEvidence::Kind::TcapNonUnifiable, t, u};
  return std::nullopt;
}

bool condition_tcap_infeasible(const Ctrs& system, const Term& cond_lhs,
                               const Term& cond_rhs) {
  Ctrs trs = underlying_trs(system);
  std::set<std::string> avoid = vars_of(cond_rhs);
  Term cap = tcap(cond_lhs, trs, avoid);
  return !unify(cap, cond_rhs).has_value();
}

bool condition_root_unreachable(const Ctrs& system, const Term& cond_lhs,
                                const Term& cond_rhs) {
  if (cond_lhs.is_var() || cond_rhs.is_var()) return false;
  // Edges root(l) -> root(r) per rule; a variable right-hand side can
  // become anything, which poisons the closure.
  std::map<std::string, std::set<std::string>> edges;
  std::set<std::string> poisoned;
  for (const Rule& rule : system.rules()) {
    const std::string& from = rule.lhs.head();
    if (rule.rhs.is_var())
      poisoned.insert(from);
    else
      edges[from].insert(rule.rhs.head());
  }
  std::set<std::string> closure{cond_lhs.head()};
  std::vector<std::string> frontier{cond_lhs.head()};
  while (!frontier.empty()) {
    std::string sym = frontier.back();
    frontier.pop_back();
    if (poisoned.count(sym)) return false;
    auto it = edges.find(sym);
    if (it == edges.end()) continue;
    for (const std::string& next : it->second)
      if (closure.insert(next).second) frontier.push_back(next);
  }
  return !closure.count(cond_rhs.head());
}

const char* removal_reason_name(RemovedRule::Reason reason) {
  switch (reason) {
    case RemovedRule::Reason::TcapNonUnifiable:
      return "tcap-nonunifiable";
    case RemovedRule::Reason::RootUnreachable:
      return "root-unreachable";
  }
  return "?";
}

namespace {
Ctrs subsystem(const Ctrs& system, const std::vector<bool>& removed) {
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < system.rules().size(); ++i)
    if (!removed[i]) rules.push_back(system.rules()[i]);
  return Ctrs::make(std::move(rules));
}
}  // namespace

RemovalResult remove_infeasible_rules(const Ctrs& system) {
  std::vector<bool> removed(system.rules().size(), false);
  RemovalResult result;
  bool changed = true;
  while (changed) {
    changed = false;
    Ctrs current = subsystem(system, removed);
    for (std::size_t i = 0; i < system.rules().size() && !changed; ++i) {
      if (removed[i]) continue;
      const Rule& rule = system.rules()[i];
      for (std::size_t c = 0; c < rule.conditions.size() && !changed; ++c) {
        const auto& [s, t] = rule.conditions[c];
        std::optional<RemovedRule::Reason> reason;
        if (condition_tcap_infeasible(current, s, t))
          reason = RemovedRule::Reason::TcapNonUnifiable;
        else if (condition_root_unreachable(current, s, t))
          reason = RemovedRule::Reason::RootUnreachable;
        if (reason) {
          removed[i] = true;
          result.removed.push_back(RemovedRule{static_cast<int>(i),
                                               static_cast<int>(c), *reason});
          changed = true;
        }
      }
    }
  }
  result.system = subsystem(system, removed);
  for (std::size_t i = 0; i < system.rules().size(); ++i)
    if (!removed[i]) result.index_map.push_back(static_cast<int>(i));
  return result;
}

}  // namespace ctrsnc
