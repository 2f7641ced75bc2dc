#include "ctrsnc/narrowing.hpp"

#include <algorithm>

namespace ctrsnc {

bool NarrowSequence::operator==(const NarrowSequence& other) const {
  return start == other.start && steps == other.steps &&
         composed == other.composed && end == other.end;
}

bool CondSolution::operator==(const CondSolution& other) const {
  return solution == other.solution && close == other.close;
}

bool NarrowStep::operator==(const NarrowStep& other) const {
  return position == other.position && rule_index == other.rule_index &&
         variant == other.variant && unifier == other.unifier &&
         conditions == other.conditions;
}

namespace {

void check_deadline(const NarrowConfig& config) {
  if (config.deadline &&
      std::chrono::steady_clock::now() > *config.deadline)
    throw TimeoutError();
}

void collect_subst_vars(const Substitution& sigma,
                        std::vector<std::string>& order,
                        std::set<std::string>& seen) {
  for (const auto& [var, image] : sigma.bindings()) {
    if (seen.insert(var).second) order.push_back(var);
    collect_vars(image, order, seen);
  }
}

void collect_step_vars(const NarrowStep& step, std::vector<std::string>& order,
                       std::set<std::string>& seen);

void collect_sequence_vars(const NarrowSequence& seq,
                           std::vector<std::string>& order,
                           std::set<std::string>& seen) {
  collect_vars(seq.start, order, seen);
  for (const NarrowStep& step : seq.steps) collect_step_vars(step, order, seen);
  collect_subst_vars(seq.composed, order, seen);
  collect_vars(seq.end, order, seen);
}

void collect_step_vars(const NarrowStep& step, std::vector<std::string>& order,
                       std::set<std::string>& seen) {
  for (const auto& [from, to] : step.variant.mapping()) {
    (void)from;  // rule-side name, not part of the derivation's space
    if (seen.insert(to).second) order.push_back(to);
  }
  collect_subst_vars(step.unifier, order, seen);
  for (const CondSolution& cond : step.conditions) {
    collect_sequence_vars(cond.solution, order, seen);
    collect_subst_vars(cond.close, order, seen);
  }
}

Substitution rename_subst(const Substitution& sigma, const Renaming& pi) {
  Substitution out;
  for (const auto& [var, image] : sigma.bindings())
    out.bind(pi.apply_name(var), pi.apply(image));
  return out;
}

NarrowStep rename_step(const NarrowStep& step, const Renaming& pi);

NarrowSequence rename_sequence(const NarrowSequence& seq, const Renaming& pi) {
  NarrowSequence out;
  out.start = pi.apply(seq.start);
  out.steps.reserve(seq.steps.size());
  for (const NarrowStep& step : seq.steps)
    out.steps.push_back(rename_step(step, pi));
  out.composed = rename_subst(seq.composed, pi);
  out.end = pi.apply(seq.end);
  return out;
}

NarrowStep rename_step(const NarrowStep& step, const Renaming& pi) {
  NarrowStep out;
  out.position = step.position;
  out.rule_index = step.rule_index;
  for (const auto& [from, to] : step.variant.mapping())
    out.variant.add(from, pi.apply_name(to));
  out.unifier = rename_subst(step.unifier, pi);
  out.conditions.reserve(step.conditions.size());
  for (const CondSolution& cond : step.conditions)
    out.conditions.push_back(
        CondSolution{rename_sequence(cond.solution, pi),
                     rename_subst(cond.close, pi)});
  return out;
}

struct SeqNode {
  NarrowSequence seq;
  std::set<std::string> avoid;  // everything this derivation has touched
};

std::vector<SeqNode> narrow_sequences_impl(const Term& start,
                                           const Ctrs& system,
                                           const NarrowConfig& config,
                                           const std::set<std::string>& avoid,
                                           int max_length, int remaining_level);

// One full resolution of a variant's condition list: the factor list is the
// chain [c1.composed, nu1, c2.composed, nu2, ...] used to assemble both the
// step unifier and the per-condition closing substitutions.
struct ChainSolution {
  std::vector<NarrowSequence> solutions;
  std::vector<Substitution> factors;
  std::set<std::string> avoid;
  int total_steps = 0;
};

void solve_chain(const std::vector<std::pair<Term, Term>>& conditions,
                 std::size_t index, const Substitution& theta,
                 ChainSolution partial, const Ctrs& system,
                 const NarrowConfig& config, int remaining_level,
                 std::vector<ChainSolution>& out) {
  check_deadline(config);
  if (index == conditions.size()) {
    out.push_back(std::move(partial));
    return;
  }
  const auto& [cond_lhs, cond_rhs] = conditions[index];
  Term from = theta.apply(cond_lhs);
  std::vector<SeqNode> candidates =
      narrow_sequences_impl(from, system, config, partial.avoid,
                            config.condition_max_length, remaining_level - 1);
  for (SeqNode& cand : candidates) {
    Substitution theta_chi = theta.compose(cand.seq.composed);
    std::optional<Substitution> nu =
        unify(cand.seq.end, theta_chi.apply(cond_rhs));
    if (!nu) continue;
    ChainSolution next = partial;
    next.solutions.push_back(cand.seq);
    next.factors.push_back(cand.seq.composed);
    next.factors.push_back(*nu);
    next.avoid = cand.avoid;
    next.total_steps += static_cast<int>(cand.seq.steps.size());
    solve_chain(conditions, index + 1, theta_chi.compose(*nu), std::move(next),
                system, config, remaining_level, out);
  }
}

std::vector<std::pair<Term, NarrowStep>> narrow_step_impl(
    const Term& s, const Ctrs& system, const NarrowConfig& config,
    const std::set<std::string>& avoid, int remaining_level,
    std::set<std::string>* result_avoid_base) {
  std::vector<std::pair<Term, NarrowStep>> out;
  if (remaining_level <= 0) return out;
  std::set<std::string> base = avoid;
  {
    std::set<std::string> vs = vars_of(s);
    base.insert(vs.begin(), vs.end());
    vs = system.all_vars();
    base.insert(vs.begin(), vs.end());
  }
  if (result_avoid_base) *result_avoid_base = base;
  for (const Position& p : function_positions(s)) {
    Term sub = subterm_at(s, p);
    for (std::size_t ri = 0; ri < system.rules().size(); ++ri) {
      check_deadline(config);
      auto [variant, rho] = rename_apart(system.rules()[ri], base);
      std::optional<Substitution> theta0 = unify(sub, variant.lhs);
      if (!theta0) continue;
      std::set<std::string> step_avoid = base;
      {
        std::set<std::string> vs = vars_of(variant);
        step_avoid.insert(vs.begin(), vs.end());
      }
      std::vector<ChainSolution> chains;
      if (variant.unconditional()) {
        chains.push_back(ChainSolution{{}, {}, step_avoid, 0});
      } else {
        ChainSolution empty;
        empty.avoid = step_avoid;
        solve_chain(variant.conditions, 0, *theta0, std::move(empty), system,
                    config, remaining_level, chains);
        std::stable_sort(chains.begin(), chains.end(),
                         [](const ChainSolution& a, const ChainSolution& b) {
                           return a.total_steps < b.total_steps;
                         });
      }
      for (ChainSolution& chain : chains) {
        Substitution sigma = *theta0;
        for (const Substitution& factor : chain.factors)
          sigma = sigma.compose(factor);
        NarrowStep step;
        step.position = p;
        step.rule_index = static_cast<int>(ri);
        step.variant = rho;
        step.unifier = sigma;
        step.conditions.reserve(chain.solutions.size());
        for (std::size_t j = 0; j < chain.solutions.size(); ++j) {
          // Everything composed after this condition's own narrowing:
          // its closing unifier and all later conditions' factors.
          Substitution close = chain.factors[2 * j + 1];
          for (std::size_t k = 2 * j + 2; k < chain.factors.size(); ++k)
            close = close.compose(chain.factors[k]);
          step.conditions.push_back(
              CondSolution{chain.solutions[j], std::move(close)});
        }
        Term target = sigma.apply(replace_at(s, p, variant.rhs));
        out.emplace_back(std::move(target), std::move(step));
      }
    }
  }
  return out;
}

std::vector<SeqNode> narrow_sequences_impl(const Term& start,
                                           const Ctrs& system,
                                           const NarrowConfig& config,
                                           const std::set<std::string>& avoid,
                                           int max_length,
                                           int remaining_level) {
  SeqNode root;
  root.seq.start = start;
  root.seq.end = start;
  root.avoid = avoid;
  {
    std::set<std::string> vs = vars_of(start);
    root.avoid.insert(vs.begin(), vs.end());
    vs = system.all_vars();
    root.avoid.insert(vs.begin(), vs.end());
  }
  std::vector<SeqNode> all{std::move(root)};
  std::size_t next = 0;
  while (next < all.size()) {
    check_deadline(config);
    std::size_t cur = next++;
    if (static_cast<int>(all[cur].seq.steps.size()) >= max_length) continue;
    std::set<std::string> base;
    auto extensions = narrow_step_impl(all[cur].seq.end, system, config,
                                       all[cur].avoid, remaining_level, &base);
    for (auto& [term, step] : extensions) {
      SeqNode child;
      child.seq.start = all[cur].seq.start;
      child.seq.steps = all[cur].seq.steps;
      child.seq.steps.push_back(step);
      child.seq.composed = all[cur].seq.composed.compose(step.unifier);
      child.seq.end = term;
      child.avoid = base;
      std::vector<std::string> order;
      std::set<std::string> seen;
      collect_step_vars(step, order, seen);
      collect_vars(term, order, seen);
      child.avoid.insert(seen.begin(), seen.end());
      all.push_back(std::move(child));
    }
  }
  return all;
}

}  // namespace

std::vector<std::pair<Term, NarrowStep>> narrow_step(
    const Term& s, const Ctrs& system, const NarrowConfig& config,
    const std::set<std::string>& avoid, int remaining_level) {
  return narrow_step_impl(s, system, config, avoid, remaining_level, nullptr);
}

std::vector<NarrowSequence> narrow_sequences(const Term& start,
                                             const Ctrs& system,
                                             const NarrowConfig& config) {
  std::vector<SeqNode> nodes = narrow_sequences_impl(
      start, system, config, {}, config.max_length, config.max_level);
  std::vector<NarrowSequence> out;
  out.reserve(nodes.size());
  for (SeqNode& node : nodes) out.push_back(std::move(node.seq));
  return out;
}

RewriteSequence to_rewrite_sequence(const Ctrs& system,
                                    const NarrowSequence& seq,
                                    const Substitution& closing) {
  std::size_t n = seq.steps.size();
  // theta[i] composes the unifiers of steps i.. with the closing; term i of
  // the rewrite sequence is narrowing term i instantiated by theta[i].
  std::vector<Substitution> theta(n + 1);
  theta[n] = closing;
  for (std::size_t i = n; i-- > 0;)
    theta[i] = seq.steps[i].unifier.compose(theta[i + 1]);

  RewriteSequence out;
  out.start = theta[0].apply(seq.start);
  for (std::size_t i = 0; i < n; ++i) {
    const NarrowStep& nstep = seq.steps[i];
    const Rule& rule = system.rules()[static_cast<std::size_t>(nstep.rule_index)];
    RewriteStep rstep;
    rstep.position = nstep.position;
    rstep.rule_index = nstep.rule_index;
    std::vector<std::string> rule_var_order;
    std::set<std::string> rule_var_seen;
    collect_vars(rule, rule_var_order, rule_var_seen);
    for (const std::string& x : rule_var_order)
      rstep.substitution.bind(
          x, theta[i].apply(Term::var(nstep.variant.apply_name(x))));
    rstep.condition_justifications.reserve(nstep.conditions.size());
    for (const CondSolution& cond : nstep.conditions)
      rstep.condition_justifications.push_back(to_rewrite_sequence(
          system, cond.solution, cond.close.compose(theta[i + 1])));
    out.steps.push_back(std::move(rstep));
  }
  return out;
}

std::set<std::string> vars_of(const NarrowSequence& seq) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_sequence_vars(seq, order, seen);
  return seen;
}

NarrowSequence rename_sequence_apart(const NarrowSequence& seq,
                                     const std::set<std::string>& avoid) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  collect_sequence_vars(seq, order, seen);
  std::set<std::string> used = avoid;
  used.insert(seen.begin(), seen.end());
  Renaming pi;
  for (const std::string& name : order)
    if (avoid.count(name)) pi.add(name, fresh_var_name(used));
  return rename_sequence(seq, pi);
}

std::optional<Substitution> solve_conditions_by_narrowing(
    const std::vector<std::pair<Term, Term>>& conditions, const Ctrs& system,
    const NarrowConfig& config) {
  std::set<std::string> avoid = system.all_vars();
  for (const auto& [s, t] : conditions) {
    std::set<std::string> vs = vars_of(s);
    avoid.insert(vs.begin(), vs.end());
    vs = vars_of(t);
    avoid.insert(vs.begin(), vs.end());
  }
  ChainSolution empty;
  empty.avoid = avoid;
  std::vector<ChainSolution> chains;
  solve_chain(conditions, 0, Substitution{}, std::move(empty), system, config,
              config.max_level, chains);
  if (chains.empty()) return std::nullopt;
  Substitution sigma;
  for (const Substitution& factor : chains.front().factors)
    sigma = sigma.compose(factor);
  return sigma;
}

}  // namespace ctrsnc
