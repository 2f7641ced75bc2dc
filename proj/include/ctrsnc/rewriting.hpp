#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctrsnc/ctrs.hpp"

namespace ctrsnc {

struct RewriteStep;

/// A rewrite derivation: a start term and a chain of steps. Each step's
/// source is the previous step's target; targets are recomputed from the
/// rules, not stored.
struct RewriteSequence {
  Term start;
  std::vector<RewriteStep> steps;

  bool operator==(const RewriteSequence& other) const;
};

/// One application of a rule, fully justified: the substitution instantiates
/// the rule and every condition carries an explicit rewrite sequence from
/// its instantiated left to its instantiated right side.
struct RewriteStep {
  Position position;
  int rule_index = 0;
  Substitution substitution;
  std::vector<RewriteSequence> condition_justifications;

  bool operator==(const RewriteStep& other) const;
};

struct Validation {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

/// Target of applying `step` to `source`; throws RewriteError when the step
/// does not fit (bad position, index out of range, left-hand side mismatch).
Term step_target(const Ctrs& system, const Term& source,
                 const RewriteStep& step);

/// Final term of the sequence; throws RewriteError on a malformed sequence.
Term sequence_end(const Ctrs& system, const RewriteSequence& seq);

/// Checks every step invariant against `system`, recursively descending
/// into condition justifications. Performs no search: all evidence must be
/// explicit in the sequence. The diagnostic names the first failing
/// obligation.
Validation validate_sequence(const Ctrs& system, const RewriteSequence& seq);

/// Instantiates a sequence: rewriting is closed under substitution, so the
/// result of applying sigma to every term and binding image stays valid.
RewriteSequence apply_substitution(const RewriteSequence& seq,
                                   const Substitution& sigma);
RewriteStep apply_substitution(const RewriteStep& step,
                               const Substitution& sigma);

/// Rewrites rule indices through `index_map` (old index -> new index),
/// recursively. Used when a search ran on a reduced system whose witness
/// must cite the original rule list.
RewriteSequence remap_rule_indices(const RewriteSequence& seq,
                                   const std::vector<int>& index_map);

/// All one-step reducts of t, each with its justifying step. A step at
/// remaining level 0 is impossible; an unconditional rule applies at any
/// level >= 1; a conditional rule applies at level l >= 1 when its
/// conditions can be established at level l - 1 by sequences of at most
/// `step_budget` steps (instantiating condition variables by matching
/// reached terms). Extra right-hand-side variables are kept as fresh
/// variables of the applied rule variant. Deterministic order: position
/// (leftmost-outermost), then rule index, then condition-solution order.
std::vector<std::pair<Term, RewriteStep>> successors(const Term& t,
                                                     const Ctrs& system,
                                                     int max_level,
                                                     int step_budget);

struct ReachableTerm {
  Term term;
  RewriteSequence sequence;
};

/// Breadth-first reachable set from `from` within the given bounds,
/// including `from` itself with the empty sequence. Discovery order is
/// deterministic.
std::vector<ReachableTerm> reach_all(const Term& from, const Ctrs& system,
                                     int max_level, int step_budget);

/// Shortest justified sequence from -> ... -> to of length <= step_budget
/// within the level bound, if one is found. Absence means "not found within
/// bounds", never "proven unreachable".
std::optional<RewriteSequence> reachable(const Term& from, const Term& to,
                                         const Ctrs& system, int max_level,
                                         int step_budget);

/// True iff no subterm of t matches a left-hand side of `trs`. The system
/// must be unconditional (use underlying_trs first); otherwise
/// std::invalid_argument is thrown.
bool is_normal_form(const Term& t, const Ctrs& trs);

}  // namespace ctrsnc
