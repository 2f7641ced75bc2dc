#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "ctrsnc/rewriting.hpp"

namespace ctrsnc {

/// Search bounds for conditional narrowing.
struct NarrowConfig {
  int max_length = 3;            // steps per top-level sequence
  int max_level = 2;             // nesting depth of condition evaluation
  int condition_max_length = 3;  // steps per condition-solving sequence
  /// Optional wall-clock cutoff; the search throws TimeoutError past it.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct NarrowStep;

/// A narrowing derivation. `composed` is the left-to-right composition of
/// all step unifiers; `end` is the final term (equal to `start` for the
/// empty sequence). Instantiating `start` with `composed` and rewriting
/// yields `end` (the translation below makes this explicit).
struct NarrowSequence {
  Term start;
  std::vector<NarrowStep> steps;
  Substitution composed;
  Term end;

  bool operator==(const NarrowSequence& other) const;
};

/// A solved condition of a narrowing step: the narrowing sequence that
/// rewrote the instantiated condition left-hand side, plus the closing
/// substitution that was composed after it within the same step (the
/// unifier against the condition right-hand side and every extension made
/// by later conditions). Kept so the step can be replayed as rewriting.
struct CondSolution {
  NarrowSequence solution;
  Substitution close;

  bool operator==(const CondSolution& other) const;
};

/// One narrowing step: at a non-variable position, the left-hand side of a
/// rule variant (renamed apart from everything seen so far in the
/// derivation) is unified with the subterm, conditions are solved
/// recursively, and `unifier` is the fully extended substitution.
struct NarrowStep {
  Position position;
  int rule_index = 0;
  Renaming variant;  // original rule variables -> variant variables
  Substitution unifier;
  std::vector<CondSolution> conditions;

  bool operator==(const NarrowStep& other) const;
};

/// Single narrowing steps from s, for every non-variable position and every
/// rule variant renamed apart from `avoid`. Conditions (u, v) are solved
/// left to right by narrowing u up to condition_max_length steps at
/// remaining_level - 1 and unifying each reachable term with the
/// instantiated v; a zero-step solution is the direct unification of the
/// two sides. Solutions are ordered by total condition narrowing steps.
std::vector<std::pair<Term, NarrowStep>> narrow_step(
    const Term& s, const Ctrs& system, const NarrowConfig& config,
    const std::set<std::string>& avoid, int remaining_level);

/// All narrowing sequences from `start` of length 0..max_length in
/// breadth-first order, beginning with the empty sequence. Every rule
/// variant is fresh wrt all previous terms and variants of its derivation.
std::vector<NarrowSequence> narrow_sequences(const Term& start,
                                             const Ctrs& system,
                                             const NarrowConfig& config);

/// Replays a narrowing sequence as a justified rewrite sequence: term i is
/// instantiated by the composition of the unifiers of steps i.. and
/// `closing`, each step cites the rule and position of the narrowing step,
/// and condition solutions are translated recursively. The result passes
/// validate_sequence against `system` for any closing substitution.
RewriteSequence to_rewrite_sequence(const Ctrs& system,
                                    const NarrowSequence& seq,
                                    const Substitution& closing);

/// Collects every variable occurring anywhere in the sequence (terms,
/// variant images, substitutions, condition solutions).
std::set<std::string> vars_of(const NarrowSequence& seq);

/// Renames the sequence's variables that collide with `avoid` to fresh
/// names, consistently across all fields. Equivalent to having re-derived
/// the sequence with differently chosen variants.
NarrowSequence rename_sequence_apart(const NarrowSequence& seq,
                                     const std::set<std::string>& avoid);

/// Searches for a substitution satisfying all conditions at once, by the
/// same bounded narrowing used inside narrow_step. Present results are
/// genuine: the conditions hold under the returned substitution.
std::optional<Substitution> solve_conditions_by_narrowing(
    const std::vector<std::pair<Term, Term>>& conditions, const Ctrs& system,
    const NarrowConfig& config);

}  // namespace ctrsnc
