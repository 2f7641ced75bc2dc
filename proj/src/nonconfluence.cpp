#include "ctrsnc/nonconfluence.hpp"

#include <future>

#include "ctrsnc/cops.hpp"
#include "ctrsnc/witness.hpp"

namespace ctrsnc {

bool Witness::operator==(const Witness& other) const {
  return peak == other.peak && left == other.left && right == other.right &&
         evidence == other.evidence && method == other.method &&
         preprocessing == other.preprocessing &&
         system_text == other.system_text;
}

const char* method_name(Witness::Method method) {
  switch (method) {
    case Witness::Method::Urnf:
      return "URNF";
    case Witness::Method::Ucp:
      return "UCP";
    case Witness::Method::Narrowing:
      return "NARROWING";
  }
  return "?";
}

namespace {

RemovalResult no_removal(const Ctrs& system) {
  RemovalResult result;
  result.system = system;
  for (std::size_t i = 0; i < system.rules().size(); ++i)
    result.index_map.push_back(static_cast<int>(i));
  return result;
}

void check_deadline(
    const std::optional<std::chrono::steady_clock::time_point>& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline)
    throw TimeoutError();
}

}  // namespace

std::optional<Witness> method_urnf(const Ctrs& system) {
  Ctrs trs = underlying_trs(system);
  for (std::size_t i = 0; i < system.rules().size(); ++i) {
    const Rule& rule = system.rules()[i];
    if (!rule.unconditional()) continue;
    std::set<std::string> lhs_vars = vars_of(rule.lhs);
    std::vector<std::string> rhs_order;
    std::set<std::string> rhs_seen;
    collect_vars(rule.rhs, rhs_order, rhs_seen);
    std::string extra;
    for (const std::string& x : rhs_order)
      if (!lhs_vars.count(x)) {
        extra = x;
        break;
      }
    if (extra.empty()) continue;
    if (!is_normal_form(rule.rhs, trs)) continue;

    std::set<std::string> used = vars_of(rule);
    Substitution sigma =
        Substitution::singleton(extra, Term::var(fresh_var_name(used)));
    Witness w;
    w.method = Witness::Method::Urnf;
    w.peak = rule.lhs;
    w.left.start = rule.lhs;
    w.left.steps.push_back(RewriteStep{{}, static_cast<int>(i), {}, {}});
    w.right.start = rule.lhs;
    w.right.steps.push_back(RewriteStep{{}, static_cast<int>(i), sigma, {}});
    w.evidence = NonJoinabilityEvidence{
        NonJoinabilityEvidence::Kind::DistinctNormalForms, rule.rhs,
        sigma.apply(rule.rhs)};
    w.system_text = print_cops(system);
    return w;
  }
  return std::nullopt;
}

std::optional<Witness> method_ucp(const Ctrs& system, bool preprocess) {
  RemovalResult removal =
      preprocess ? remove_infeasible_rules(system) : no_removal(system);
  Ctrs trs = underlying_trs(removal.system);
  for (const CriticalPair& cp : critical_pairs(removal.system)) {
    if (!cp.unconditional()) continue;
    std::optional<NonJoinabilityEvidence> evidence =
        non_joinability_evidence(cp.left, cp.right, trs);
    if (!evidence) continue;

    const Rule& outer =
        removal.system.rules()[static_cast<std::size_t>(cp.source.outer_index)];
    const Rule& inner =
        removal.system.rules()[static_cast<std::size_t>(cp.source.inner_index)];
    Term peak = cp.source.mgu.apply(outer.lhs);

    // Inner rule fires at the overlap position, outer rule at the root;
    // bindings route original variables through the variant renamings.
    RewriteStep left_step;
    left_step.position = cp.source.position;
    left_step.rule_index = removal.index_map[
        static_cast<std::size_t>(cp.source.inner_index)];
    for (const std::string& x : vars_of(inner))
      left_step.substitution.bind(
          x, cp.source.mgu.apply(
                 Term::var(cp.source.inner_renaming.apply_name(x))));
    RewriteStep right_step;
    right_step.rule_index = removal.index_map[
        static_cast<std::size_t>(cp.source.outer_index)];
    for (const std::string& x : vars_of(outer))
      right_step.substitution.bind(
          x, cp.source.mgu.apply(
                 Term::var(cp.source.outer_renaming.apply_name(x))));

    Witness w;
    w.method = Witness::Method::Ucp;
    w.peak = peak;
    w.left.start = peak;
    w.left.steps.push_back(std::move(left_step));
    w.right.start = peak;
    w.right.steps.push_back(std::move(right_step));
    w.evidence = *evidence;
    w.preprocessing = removal.removed;
    w.system_text = print_cops(system);
    return w;
  }
  return std::nullopt;
}

std::optional<Witness> method_narrowing(
    const Ctrs& system, const NarrowConfig& config, bool preprocess, int jobs,
    const std::optional<std::chrono::steady_clock::time_point>& deadline) {
  RemovalResult removal =
      preprocess ? remove_infeasible_rules(system) : no_removal(system);
  const Ctrs& reduced = removal.system;
  Ctrs trs = underlying_trs(reduced);

  NarrowConfig cfg = config;
  cfg.deadline = deadline;

  std::set<std::string> system_vars = reduced.all_vars();
  std::vector<Term> starts;
  starts.reserve(reduced.rules().size());
  for (const Rule& rule : reduced.rules())
    starts.push_back(rename_apart(rule.lhs, system_vars).first);

  // Sequence sets per start term; generation may fan out, the pair scan
  // below stays in enumeration order either way.
  std::vector<std::vector<NarrowSequence>> sequences(starts.size());
  if (jobs > 1 && starts.size() > 1) {
    std::vector<std::future<std::vector<NarrowSequence>>> futures;
    futures.reserve(starts.size());
    for (const Term& start : starts)
      futures.push_back(std::async(std::launch::async, [&, start] {
        return narrow_sequences(start, reduced, cfg);
      }));
    for (std::size_t k = 0; k < futures.size(); ++k)
      sequences[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < starts.size(); ++k)
      sequences[k] = narrow_sequences(starts[k], reduced, cfg);
  }

  for (std::size_t k1 = 0; k1 < starts.size(); ++k1) {
    for (std::size_t k2 = 0; k2 < starts.size(); ++k2) {
      for (const NarrowSequence& first : sequences[k1]) {
        std::set<std::string> first_vars = vars_of(first);
        Term first_start = first.composed.apply(first.start);
        for (const NarrowSequence& second_raw : sequences[k2]) {
          check_deadline(deadline);
          NarrowSequence second = rename_sequence_apart(second_raw, first_vars);
          std::optional<Substitution> mu =
              unify(first_start, second.composed.apply(second.start));
          if (!mu) continue;
          Term left_end = mu->apply(first.end);
          Term right_end = mu->apply(second.end);
          if (left_end == right_end) continue;
          std::optional<NonJoinabilityEvidence> evidence =
              non_joinability_evidence(left_end, right_end, trs);
          if (!evidence) continue;

          Witness w;
          w.method = Witness::Method::Narrowing;
          w.peak = mu->apply(first_start);
          w.left = remap_rule_indices(to_rewrite_sequence(reduced, first, *mu),
                                      removal.index_map);
          w.right = remap_rule_indices(
              to_rewrite_sequence(reduced, second, *mu), removal.index_map);
          w.evidence = *evidence;
          w.preprocessing = removal.removed;
          w.system_text = print_cops(system);
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> prove_nonconfluence(const Ctrs& system,
                                           const ProveOptions& options) {
  std::optional<Witness> found;
  if (options.use_urnf) {
    check_deadline(options.deadline);
    found = method_urnf(system);
  }
  if (!found && options.use_ucp) {
    check_deadline(options.deadline);
    found = method_ucp(system, options.preprocess);
  }
  if (!found && options.use_narrowing) {
    check_deadline(options.deadline);
    found = method_narrowing(system, options.narrow, options.preprocess,
                             options.jobs, options.deadline);
  }
  if (!found) return std::nullopt;
  CheckResult check = check_witness(system, *found);
  if (!check.ok)
    throw CertificationError("freshly built witness failed its own check: " +
                             check.message);
  return found;
}

}  // namespace ctrsnc
