#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "ctrsnc/analysis.hpp"
#include "ctrsnc/narrowing.hpp"
#include "ctrsnc/rewriting.hpp"

namespace ctrsnc {

/// A self-contained non-confluence proof: a peak term with two justified
/// diverging rewrite sequences whose endpoints carry non-joinability
/// evidence. Rule indices refer to the original system; `preprocessing`
/// lists the rules whose removal the evidence relies on.
struct Witness {
  enum class Method { Urnf, Ucp, Narrowing };

  Term peak;
  RewriteSequence left;
  RewriteSequence right;
  NonJoinabilityEvidence evidence;
  Method method = Method::Urnf;
  std::vector<RemovedRule> preprocessing;
  std::string system_text;

  bool operator==(const Witness& other) const;
};

const char* method_name(Witness::Method method);

struct ProveOptions {
  bool use_urnf = true;
  bool use_ucp = true;
  bool use_narrowing = true;
  bool preprocess = true;
  NarrowConfig narrow;
  /// Bounds for condition solving in the rewrite semantics; exposed for
  /// callers that drive `successors`/`reachable` alongside the prover.
  int rewrite_level = 2;
  int rewrite_budget = 4;
  int jobs = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Extra-variable criterion: an unconditional rule l -> r with a variable
/// of r absent from l and r a normal form of the underlying TRS forks into
/// two distinct normal forms r and r{x -> y}. First matching rule wins.
std::optional<Witness> method_urnf(const Ctrs& system);

/// Critical-pair criterion: an unconditional critical pair whose sides are
/// not joinable wrt the underlying TRS (after optional infeasible-rule
/// removal) yields the critical peak as a fork. First pair with evidence
/// wins.
std::optional<Witness> method_ucp(const Ctrs& system, bool preprocess);

/// Narrowing criterion: narrows renamed copies of rule left-hand sides,
/// unifies the instantiated starts of sequence pairs, and checks the
/// instantiated endpoints for non-joinability. Pairs are enumerated by
/// (first start index, second start index, first sequence, second
/// sequence); the second sequence is renamed apart before unification.
/// `jobs` > 1 parallelizes sequence generation per start term; results are
/// reconciled in enumeration order, so the outcome does not depend on it.
std::optional<Witness> method_narrowing(
    const Ctrs& system, const NarrowConfig& config, bool preprocess,
    int jobs = 1,
    const std::optional<std::chrono::steady_clock::time_point>& deadline = {});

/// Runs the enabled methods in order (urnf, ucp, narrowing) and returns the
/// first witness. Every returned witness has passed check_witness; a
/// witness failing its own check raises CertificationError (a bug signal).
/// Throws TimeoutError when the deadline elapses mid-search.
std::optional<Witness> prove_nonconfluence(const Ctrs& system,
                                           const ProveOptions& options = {});

}  // namespace ctrsnc
