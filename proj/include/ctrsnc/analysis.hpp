#pragma once

#include <optional>
#include <vector>

#include "ctrsnc/ctrs.hpp"

namespace ctrsnc {

/// Two rule variants whose left-hand sides unify at a non-variable position
/// of the outer one. The outer rule is taken verbatim (identity renaming);
/// the inner rule is renamed apart from it. A rule overlapping a variant of
/// itself at the root is excluded.
struct Overlap {
  int outer_index = 0;
  Renaming outer_renaming;
  int inner_index = 0;
  Renaming inner_renaming;
  Position position;
  Substitution mgu;
};

struct CriticalPair {
  Term left;   // outer lhs with the inner rhs plugged in at the position
  Term right;  // outer rhs
  std::vector<std::pair<Term, Term>> conditions;  // outer's first, then inner's
  Overlap source;

  bool unconditional() const { return conditions.empty(); }
};

/// All overlaps between variable-disjoint variants of rule pairs, in
/// (outer index, inner index, position) order.
std::vector<Overlap> overlaps(const Ctrs& system);

/// One critical pair per overlap, in overlap order. Both orientations of
/// root overlaps between distinct rules are present.
std::vector<CriticalPair> critical_pairs(const Ctrs& system);

/// The stable top part of t wrt an unconditional system: variables become
/// fresh variables, and a subterm whose recursive cap unifies with some
/// left-hand side collapses to a fresh variable. The result is linear and
/// its variables avoid `avoid`, the variables of t, and those of `trs`.
/// Throws std::invalid_argument when `trs` has a conditional rule.
Term tcap(const Term& t, const Ctrs& trs,
          const std::set<std::string>& avoid = {});

/// Certifiable reason why two terms have no common reduct. Checked wrt an
/// unconditional over-approximation, so it carries over to any CTRS with
/// that underlying TRS.
struct NonJoinabilityEvidence {
  enum class Kind {
    DistinctNormalForms,
    TcapNonUnifiable,
  };
  Kind kind = Kind::DistinctNormalForms;
  Term left;
  Term right;

  bool operator==(const NonJoinabilityEvidence& other) const {
    return kind == other.kind && left == other.left && right == other.right;
  }
};

const char* evidence_kind_name(NonJoinabilityEvidence::Kind kind);

/// Tries the two evidence kinds in order (distinct normal forms, then
/// non-unifiable caps) and returns the first that applies. A present result
/// is sound: t and u are not joinable in `trs`, hence in no CTRS whose
/// underlying TRS is `trs`.
std::optional<NonJoinabilityEvidence> non_joinability_evidence(const Term& t,
                                                               const Term& u,
                                                               const Ctrs& trs);

/// Sound per-condition unsatisfiability checks. Both abstain (return false)
/// rather than guess.
///
/// The cap check: every term reachable from any instance of `cond_lhs` is
/// an instance of its cap, so if the cap does not unify with `cond_rhs`
/// no instance of the condition holds.
bool condition_tcap_infeasible(const Ctrs& system, const Term& cond_lhs,
                               const Term& cond_rhs);
/// The root check: the root symbol of a term evolves only through root
/// steps, each stamping the right-hand-side root of some rule. If the root
/// of `cond_rhs` is outside the closure of the root of `cond_lhs` in that
/// symbol graph, the condition is unsatisfiable. Rules with a variable
/// right-hand side make every symbol reachable, so the check abstains.
/// Requires both sides to be non-variables; abstains otherwise.
bool condition_root_unreachable(const Ctrs& system, const Term& cond_lhs,
                                const Term& cond_rhs);

struct RemovedRule {
  enum class Reason {
    TcapNonUnifiable,
    RootUnreachable,
  };
  int index = 0;  // index into the original rule list
  int condition_index = 0;
  Reason reason = Reason::TcapNonUnifiable;

  bool operator==(const RemovedRule& other) const {
    return index == other.index && condition_index == other.condition_index &&
           reason == other.reason;
  }
};

const char* removal_reason_name(RemovedRule::Reason reason);

struct RemovalResult {
  Ctrs system;                     // surviving rules, original order
  std::vector<RemovedRule> removed;  // in removal order
  std::vector<int> index_map;      // reduced index -> original index
};

/// Drops every rule with a condition proven unsatisfiable by one of the two
/// checks above, iterating to a fixpoint (a removal can enable further
/// removals). Removed rules are never applicable, so the rewrite relation
/// is unchanged. Justifications are recorded in removal order and each one
/// re-verifies against the system as it was when the rule was dropped.
RemovalResult remove_infeasible_rules(const Ctrs& system);

}  // namespace ctrsnc
