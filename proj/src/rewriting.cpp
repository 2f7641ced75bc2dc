#include "ctrsnc/rewriting.hpp"

#include <deque>
#include <sstream>

namespace ctrsnc {

bool RewriteSequence::operator==(const RewriteSequence& other) const {
  return start == other.start && steps == other.steps;
}

bool RewriteStep::operator==(const RewriteStep& other) const {
  return position == other.position && rule_index == other.rule_index &&
         substitution == other.substitution &&
         condition_justifications == other.condition_justifications;
}

Term step_target(const Ctrs& system, const Term& source,
                 const RewriteStep& step) {
  if (step.rule_index < 0 ||
      step.rule_index >= static_cast<int>(system.rules().size()))
    throw RewriteError("rule index " + std::to_string(step.rule_index) +
                       " out of range");
  const Rule& rule = system.rules()[static_cast<std::size_t>(step.rule_index)];
  const Term* sub = subterm_at_opt(source, step.position);
  if (!sub)
    throw RewriteError("position " + position_str(step.position) +
                       " not in " + source.str());
  if (*sub != step.substitution.apply(rule.lhs))
    throw RewriteError("left-hand side of rule " +
                       std::to_string(step.rule_index) + " does not match at " +
                       position_str(step.position));
  return replace_at(source, step.position, step.substitution.apply(rule.rhs));
}

Term sequence_end(const Ctrs& system, const RewriteSequence& seq) {
  Term cur = seq.start;
  for (const RewriteStep& step : seq.steps) cur = step_target(system, cur, step);
  return cur;
}

namespace {

Validation fail(const std::string& where, const std::string& why) {
  return Validation{false, where + ": " + why};
}

Validation validate_impl(const Ctrs& system, const RewriteSequence& seq,
                         const std::string& where, Term* end_out) {
  Term cur = seq.start;
  for (std::size_t k = 0; k < seq.steps.size(); ++k) {
    const RewriteStep& step = seq.steps[k];
    std::string here = where + " step " + std::to_string(k);
    if (step.rule_index < 0 ||
        step.rule_index >= static_cast<int>(system.rules().size()))
      return fail(here, "rule index out of range");
    const Rule& rule =
        system.rules()[static_cast<std::size_t>(step.rule_index)];
    const Term* sub = subterm_at_opt(cur, step.position);
    if (!sub)
      return fail(here, "invalid position " + position_str(step.position) +
                            " in " + cur.str());
    std::set<std::string> rule_vars = vars_of(rule);
    for (const auto& [var, image] : step.substitution.bindings()) {
      (void)image;
      if (!rule_vars.count(var))
        return fail(here, "substitution binds " + var +
                              ", which is not a variable of rule " +
                              std::to_string(step.rule_index));
    }
    if (*sub != step.substitution.apply(rule.lhs))
      return fail(here, "left-hand side mismatch: expected " +
                            step.substitution.apply(rule.lhs).str() +
                            ", found " + sub->str());
    if (step.condition_justifications.size() != rule.conditions.size())
      return fail(here, "expected " + std::to_string(rule.conditions.size()) +
                            " condition justifications, found " +
                            std::to_string(
                                step.condition_justifications.size()));
    for (std::size_t j = 0; j < rule.conditions.size(); ++j) {
      const auto& [cond_lhs, cond_rhs] = rule.conditions[j];
      const RewriteSequence& just = step.condition_justifications[j];
      std::string cond_here = here + " condition " + std::to_string(j);
      if (just.start != step.substitution.apply(cond_lhs))
        return fail(cond_here, "justification starts at " + just.start.str() +
                                   ", expected " +
                                   step.substitution.apply(cond_lhs).str());
      Term just_end = just.start;
      Validation v = validate_impl(system, just, cond_here, &just_end);
      if (!v.ok) return v;
      if (just_end != step.substitution.apply(cond_rhs))
        return fail(cond_here, "condition chain broken: justification ends at " +
                                   just_end.str() + ", expected " +
                                   step.substitution.apply(cond_rhs).str());
    }
    cur = replace_at(cur, step.position, step.substitution.apply(rule.rhs));
  }
  if (end_out) *end_out = cur;
  return Validation{};
}

}  // namespace

Validation validate_sequence(const Ctrs& system, const RewriteSequence& seq) {
  return validate_impl(system, seq, "", nullptr);
}

RewriteStep apply_substitution(const RewriteStep& step,
                               const Substitution& sigma) {
  RewriteStep out;
  out.position = step.position;
  out.rule_index = step.rule_index;
  for (const auto& [var, image] : step.substitution.bindings())
    out.substitution.bind(var, sigma.apply(image));
  out.condition_justifications.reserve(step.condition_justifications.size());
  for (const RewriteSequence& just : step.condition_justifications)
    out.condition_justifications.push_back(apply_substitution(just, sigma));
  return out;
}

RewriteSequence apply_substitution(const RewriteSequence& seq,
                                   const Substitution& sigma) {
  RewriteSequence out;
  out.start = sigma.apply(seq.start);
  out.steps.reserve(seq.steps.size());
  for (const RewriteStep& step : seq.steps)
    out.steps.push_back(apply_substitution(step, sigma));
  return out;
}

RewriteSequence remap_rule_indices(const RewriteSequence& seq,
                                   const std::vector<int>& index_map) {
  RewriteSequence out;
  out.start = seq.start;
  out.steps.reserve(seq.steps.size());
  for (const RewriteStep& step : seq.steps) {
    RewriteStep mapped;
    mapped.position = step.position;
    mapped.rule_index = index_map.at(static_cast<std::size_t>(step.rule_index));
    mapped.substitution = step.substitution;
    for (const RewriteSequence& just : step.condition_justifications)
      mapped.condition_justifications.push_back(
          remap_rule_indices(just, index_map));
    out.steps.push_back(std::move(mapped));
  }
  return out;
}

namespace {

struct ReachNode {
  Term term;
  int parent;  // index into the node list, -1 for the root
  RewriteStep step;
};

std::vector<std::pair<Term, RewriteStep>> successors_impl(
    const Term& t, const Ctrs& system, int level, int budget,
    const std::set<std::string>& avoid);

std::vector<ReachNode> reach_nodes(const Term& from, const Ctrs& system,
                                   int level, int budget,
                                   const std::set<std::string>& avoid) {
  std::vector<ReachNode> nodes;
  nodes.push_back(ReachNode{from, -1, {}});
  std::set<Term> visited{from};
  std::size_t next = 0;
  std::vector<int> depth{0};
  while (next < nodes.size()) {
    std::size_t cur = next++;
    if (depth[cur] >= budget) continue;
    auto succs = successors_impl(nodes[cur].term, system, level, budget, avoid);
    for (auto& [term, step] : succs) {
      if (!visited.insert(term).second) continue;
      nodes.push_back(ReachNode{term, static_cast<int>(cur), std::move(step)});
      depth.push_back(depth[cur] + 1);
    }
  }
  return nodes;
}

RewriteSequence node_sequence(const std::vector<ReachNode>& nodes, int index) {
  std::vector<const ReachNode*> path;
  for (int i = index; i > 0; i = nodes[static_cast<std::size_t>(i)].parent)
    path.push_back(&nodes[static_cast<std::size_t>(i)]);
  RewriteSequence seq;
  seq.start = nodes[0].term;
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    seq.steps.push_back((*it)->step);
  return seq;
}

// Resolves the conditions of a rule variant left to right. For a condition
// (u, v), enumerates terms reachable from u under the current bindings and
// extends the bindings by matching v against each reached term. Justifying
// sequences are re-instantiated by the final substitution before emission.
struct ConditionResolution {
  Substitution sigma;
  std::vector<RewriteSequence> justifications;
};

void solve_conditions(const std::vector<std::pair<Term, Term>>& conditions,
                      std::size_t index, const Substitution& sigma,
                      std::vector<RewriteSequence>& justifications,
                      const Ctrs& system, int cond_level, int budget,
                      const std::set<std::string>& avoid,
                      std::vector<ConditionResolution>& out) {
  if (index == conditions.size()) {
    out.push_back(ConditionResolution{sigma, justifications});
    return;
  }
  const auto& [cond_lhs, cond_rhs] = conditions[index];
  Term from = sigma.apply(cond_lhs);
  Term pattern = sigma.apply(cond_rhs);
  std::set<std::string> reach_avoid = avoid;
  {
    std::set<std::string> vs = vars_of(from);
    reach_avoid.insert(vs.begin(), vs.end());
    vs = vars_of(pattern);
    reach_avoid.insert(vs.begin(), vs.end());
  }
  std::vector<ReachNode> nodes =
      reach_nodes(from, system, cond_level, budget, reach_avoid);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::optional<Substitution> ext = match_term(pattern, nodes[i].term);
    if (!ext) continue;
    // The reached term must be fixed by the extension, otherwise the
    // recorded sequence would not end at the instantiated right side
    // (a variable matched against a term containing itself).
    bool circular = false;
    for (const auto& [var, image] : ext->bindings()) {
      (void)image;
      if (occurs(var, nodes[i].term)) circular = true;
    }
    if (circular) continue;
    Substitution extended = sigma.merge(*ext);
    justifications.push_back(node_sequence(nodes, static_cast<int>(i)));
    solve_conditions(conditions, index + 1, extended, justifications, system,
                     cond_level, budget, avoid, out);
    justifications.pop_back();
  }
}

std::vector<std::pair<Term, RewriteStep>> successors_impl(
    const Term& t, const Ctrs& system, int level, int budget,
    const std::set<std::string>& avoid) {
  std::vector<std::pair<Term, RewriteStep>> out;
  if (level <= 0) return out;
  std::set<std::string> base_avoid = avoid;
  {
    std::set<std::string> vs = vars_of(t);
    base_avoid.insert(vs.begin(), vs.end());
    vs = system.all_vars();
    base_avoid.insert(vs.begin(), vs.end());
  }
  for (const Position& p : function_positions(t)) {
    Term sub = subterm_at(t, p);
    for (std::size_t ri = 0; ri < system.rules().size(); ++ri) {
      auto [variant, rho] = rename_apart(system.rules()[ri], base_avoid);
      std::optional<Substitution> matched = match_term(variant.lhs, sub);
      if (!matched) continue;
      std::vector<ConditionResolution> resolutions;
      if (variant.unconditional()) {
        resolutions.push_back(ConditionResolution{*matched, {}});
      } else {
        std::set<std::string> cond_avoid = base_avoid;
        std::set<std::string> vs = vars_of(variant);
        cond_avoid.insert(vs.begin(), vs.end());
        std::vector<RewriteSequence> justifications;
        solve_conditions(variant.conditions, 0, *matched, justifications,
                         system, level - 1, budget, cond_avoid, resolutions);
      }
      std::set<std::string> rule_vars = vars_of(system.rules()[ri]);
      for (ConditionResolution& res : resolutions) {
        // Bindings for the original rule: x goes through the variant
        // renaming, then through the accumulated substitution. Unbound
        // extra variables stay as their (fresh) variant names.
        RewriteStep step;
        step.position = p;
        step.rule_index = static_cast<int>(ri);
        for (const std::string& x : rule_vars) {
          Term image = res.sigma.apply(Term::var(rho.apply_name(x)));
          step.substitution.bind(x, image);
        }
        step.condition_justifications.reserve(res.justifications.size());
        for (const RewriteSequence& just : res.justifications)
          step.condition_justifications.push_back(
              apply_substitution(just, res.sigma));
        Term target =
            replace_at(t, p, step.substitution.apply(system.rules()[ri].rhs));
        out.emplace_back(std::move(target), std::move(step));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Term, RewriteStep>> successors(const Term& t,
                                                     const Ctrs& system,
                                                     int max_level,
                                                     int step_budget) {
  return successors_impl(t, system, max_level, step_budget, {});
}

std::vector<ReachableTerm> reach_all(const Term& from, const Ctrs& system,
                                     int max_level, int step_budget) {
  std::vector<ReachNode> nodes =
      reach_nodes(from, system, max_level, step_budget, {});
  std::vector<ReachableTerm> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.push_back(
        ReachableTerm{nodes[i].term, node_sequence(nodes, static_cast<int>(i))});
  return out;
}

std::optional<RewriteSequence> reachable(const Term& from, const Term& to,
                                         const Ctrs& system, int max_level,
                                         int step_budget) {
  // Breadth-first discovery order makes the first hit a shortest sequence.
  std::vector<ReachNode> nodes =
      reach_nodes(from, system, max_level, step_budget, {});
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].term == to) return node_sequence(nodes, static_cast<int>(i));
  return std::nullopt;
}

bool is_normal_form(const Term& t, const Ctrs& trs) {
  if (!is_unconditional(trs))
    throw std::invalid_argument(
        "is_normal_form requires an unconditional system");
  for (const Position& p : function_positions(t)) {
    Term sub = subterm_at(t, p);
    for (const Rule& rule : trs.rules())
      if (match_term(rule.lhs, sub)) return false;
  }
  return true;
}

}  // namespace ctrsnc
