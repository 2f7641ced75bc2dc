#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "ctrsnc/analysis.hpp"
#include "ctrsnc/cops.hpp"
#include "ctrsnc/narrowing.hpp"
#include "ctrsnc/rewriting.hpp"
#include "support/gen.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace ctrsnc;
using testsupport::Gen;
using testsupport::alpha_eq;
using testsupport::alpha_eq2;
using testsupport::load_fixture;
using testsupport::parse_system;

namespace {
Term v(const std::string& name) { return Term::var(name); }
Term c(const std::string& name) { return Term::app(name); }

Ctrs cops271_without_rule3() {
  Ctrs full = load_fixture("cops_271.trs");
  std::vector<Rule> kept(full.rules().begin(), full.rules().begin() + 2);
  kept.push_back(full.rules()[3]);
  return Ctrs::make(kept);
}
}  // namespace

TEST_CASE("overlaps: fixtures") {
  Ctrs c271 = load_fixture("cops_271.trs");
  auto found = overlaps(c271);
  REQUIRE(found.size() == 1);
  CHECK(found[0].outer_index == 0);
  CHECK(found[0].inner_index == 1);
  CHECK(found[0].position == Position{1});

  CHECK(overlaps(load_fixture("cops_262.trs")).empty());

  // A rule does not overlap a variant of itself at the root.
  CHECK(overlaps(parse_system("(VAR x)(RULES f(x) -> x)")).empty());
  // At a proper subterm it does.
  CHECK(overlaps(parse_system("(VAR x)(RULES f(f(x)) -> x)")).size() == 1);
}

TEST_CASE("critical_pairs: fixtures and root orientation") {
  auto cps = critical_pairs(cops271_without_rule3());
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].unconditional());
  CHECK(alpha_eq2(cps[0].left, cps[0].right,
                  Term::app("p", {Term::app("r", {v("z")})}),
                  Term::app("p", {Term::app("r", {Term::app("h", {v("z")})})})));

  CHECK(critical_pairs(load_fixture("cops_262.trs")).empty());

  // Root overlaps of distinct rules keep both orientations; the left
  // component carries the inner rule's right-hand side.
  auto both = critical_pairs(parse_system("(RULES a -> b  a -> c)"));
  REQUIRE(both.size() == 2);
  CHECK(both[0].left == c("c"));
  CHECK(both[0].right == c("b"));
  CHECK(both[1].left == c("b"));
  CHECK(both[1].right == c("c"));
}

TEST_CASE("critical_pairs: conditional pairs collect both condition lists") {
  Ctrs system = parse_system(
      "(CONDITIONTYPE ORIENTED)(VAR x y)"
      "(RULES f(g(x)) -> a | x == b  g(y) -> c | y == d)");
  auto cps = critical_pairs(system);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].conditions.size() == 2);
  CHECK(!cps[0].unconditional());
}

TEST_CASE("critical_pairs: agree with brute-force enumeration") {
  Gen gen(4001);
  for (int i = 0; i < 500; ++i) {
    Gen::SystemOptions opts;
    opts.conditional = 0.0;
    opts.max_depth = 2;
    Ctrs system = gen.system(opts);
    auto mine = critical_pairs(system);
    auto naive = oracles::naive_critical_pairs(system);
    REQUIRE(mine.size() == naive.size());
    for (std::size_t k = 0; k < mine.size(); ++k)
      CHECK_MESSAGE(
          alpha_eq2(mine[k].left, mine[k].right, naive[k].left, naive[k].right),
          "pair ", k, " differs on ", print_cops(system));
  }
}

TEST_CASE("tcap: examples") {
  Ctrs trs271 = underlying_trs(load_fixture("cops_271.trs"));
  CHECK(tcap(v("x"), trs271).is_var());

  Ctrs reduced = underlying_trs(cops271_without_rule3());
  Term capped = tcap(Term::app("p", {Term::app("r", {v("z")})}), reduced);
  REQUIRE(!capped.is_var());
  CHECK(alpha_eq(capped, Term::app("p", {Term::app("r", {v("w")})})));
  // The fresh variable really is fresh.
  CHECK(capped.args()[0].args()[0].head() != "z");

  CHECK(tcap(Term::app("s", {v("x")}), trs271).is_var());
}

TEST_CASE("tcap: output is linear and fresh") {
  Gen gen(4002);
  for (int i = 0; i < 300; ++i) {
    Gen::SystemOptions opts;
    opts.conditional = 0.0;
    opts.max_depth = 2;
    Ctrs system = gen.system(opts);
    Term t = gen.term(3);
    Term capped = tcap(t, system);
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_vars(capped, order, seen);
    CHECK(order.size() == seen.size());  // linear
    for (const std::string& name : order) {
      CHECK(!vars_of(t).count(name));
      CHECK(name.rfind("_v", 0) == 0);
    }
  }
}

TEST_CASE("tcap: reducts of instances are instances of the cap") {
  Gen gen(4003);
  for (int i = 0; i < 300; ++i) {
    Gen::SystemOptions opts;
    opts.conditional = 0.0;
    opts.max_depth = 2;
    opts.allow_extra_rhs_vars = false;
    Ctrs system = gen.system(opts);
    Term pattern = gen.term(2);
    Substitution sigma;
    for (const std::string& var : vars_of(pattern))
      sigma.bind(var, gen.term(1, false));
    Term instance = sigma.apply(pattern);
    Term capped = tcap(pattern, system);
    for (const Term& reduct : oracles::reducts_to_depth(instance, system, 4))
      CHECK_MESSAGE(match_term(capped, reduct).has_value(), "cap ",
                    capped.str(), " misses reduct ", reduct.str(), " of ",
                    instance.str(), " in ", print_cops(system));
  }
}

TEST_CASE("non_joinability_evidence: examples") {
  Ctrs trs320 = underlying_trs(load_fixture("cops_320.trs"));
  Term left = Term::app("h", {v("x1"), v("x1")});
  Term right = Term::app("h", {v("x2"), v("x2")});
  auto ev = non_joinability_evidence(left, right, trs320);
  REQUIRE(ev);
  CHECK(ev->kind == NonJoinabilityEvidence::Kind::DistinctNormalForms);

  // Identical terms are joinable.
  CHECK(!non_joinability_evidence(left, left, trs320));

  Ctrs reduced = underlying_trs(cops271_without_rule3());
  Term a = Term::app("p", {Term::app("r", {v("z")})});
  Term b = Term::app("p", {Term::app("r", {Term::app("h", {v("z")})})});
  auto ev2 = non_joinability_evidence(a, b, reduced);
  REQUIRE(ev2);
  CHECK(ev2->kind == NonJoinabilityEvidence::Kind::DistinctNormalForms);
  // The cap route alone cannot settle this pair: both caps unify.
  Term cap_a = tcap(a, reduced);
  Term cap_b = tcap(b, reduced, vars_of(cap_a));
  CHECK(unify(cap_a, cap_b));
}

TEST_CASE("non_joinability_evidence: cap route fires when normal forms fail") {
  // Both sides reduce inside, but their tops are stable and clash.
  Ctrs system = parse_system("(RULES a -> b)");
  Term left = Term::app("g", {c("a")});
  Term right = Term::app("h", {c("a")});
  auto ev = non_joinability_evidence(left, right, system);
  REQUIRE(ev);
  CHECK(ev->kind == NonJoinabilityEvidence::Kind::TcapNonUnifiable);
}

TEST_CASE("non_joinability_evidence: corroborated by joint reduction") {
  Gen gen(4004);
  for (int i = 0; i < 500; ++i) {
    Gen::SystemOptions opts;
    opts.conditional = 0.0;
    opts.max_depth = 2;
    opts.allow_extra_rhs_vars = false;
    Ctrs system = gen.system(opts);
    Term left = gen.term(2);
    Term right = gen.term(2);
    if (non_joinability_evidence(left, right, system))
      CHECK_MESSAGE(!oracles::joinable_within(left, right, system, 4),
                    left.str(), " and ", right.str(), " join in ",
                    print_cops(system));
  }
}

TEST_CASE("remove_infeasible_rules: fixture and abstentions") {
  Ctrs c271 = load_fixture("cops_271.trs");
  RemovalResult removal = remove_infeasible_rules(c271);
  REQUIRE(removal.removed.size() == 1);
  CHECK(removal.removed[0].index == 2);
  CHECK(removal.removed[0].condition_index == 0);
  CHECK(removal.removed[0].reason == RemovedRule::Reason::RootUnreachable);
  CHECK(removal.system.rules().size() == 3);
  CHECK(removal.index_map == std::vector<int>{0, 1, 3});

  // Trivially satisfiable condition: kept.
  Ctrs trivial = parse_system("(CONDITIONTYPE ORIENTED)(RULES a -> b | c == c)");
  CHECK(remove_infeasible_rules(trivial).removed.empty());

  // A variable condition side defeats both checks: kept.
  Ctrs open_lhs = parse_system(
      "(CONDITIONTYPE ORIENTED)(VAR x)(RULES a -> b | x == 0)");
  CHECK(remove_infeasible_rules(open_lhs).removed.empty());

  // 262: the condition can be satisfied, nothing is removed.
  CHECK(remove_infeasible_rules(load_fixture("cops_262.trs")).removed.empty());
}

TEST_CASE("remove_infeasible_rules: cap check fires on stable clashes") {
  Ctrs system = parse_system(
      "(CONDITIONTYPE ORIENTED)(VAR x)(RULES f(x) -> x | g(x) == h(x))");
  RemovalResult removal = remove_infeasible_rules(system);
  REQUIRE(removal.removed.size() == 1);
  CHECK(removal.removed[0].reason == RemovedRule::Reason::TcapNonUnifiable);
  CHECK(removal.system.empty());
}

TEST_CASE("remove_infeasible_rules: removal can cascade") {
  // Dropping the second rule cuts the bridge that made the first condition
  // look satisfiable.
  Ctrs system = parse_system(
      "(CONDITIONTYPE ORIENTED)(VAR x)"
      "(RULES a -> b | g(x) == k(x,x)  g(x) -> k(x,x) | g(c) == c)");
  RemovalResult removal = remove_infeasible_rules(system);
  REQUIRE(removal.removed.size() == 2);
  CHECK(removal.removed[0].index == 1);
  CHECK(removal.removed[1].index == 0);
  CHECK(removal.system.empty());
}

TEST_CASE("remove_infeasible_rules: never removes a satisfiable rule") {
  Gen gen(4005);
  NarrowConfig cfg;
  for (int i = 0; i < 500; ++i) {
    Gen::SystemOptions opts;
    opts.max_depth = 2;
    opts.conditional = 0.6;
    Ctrs system = gen.system(opts);
    RemovalResult removal = remove_infeasible_rules(system);
    for (const RemovedRule& rr : removal.removed) {
      const Rule& rule = system.rules()[static_cast<std::size_t>(rr.index)];
      auto solution =
          solve_conditions_by_narrowing(rule.conditions, system, cfg);
      CHECK_MESSAGE(!solution, "removed rule ", rule.str(),
                    " has the solution ", solution ? solution->str() : "",
                    " in ", print_cops(system));
    }
  }
}

TEST_CASE("remove_infeasible_rules: preserves the rewrite relation") {
  Gen gen(4006);
  for (int i = 0; i < 300; ++i) {
    Gen::SystemOptions opts;
    opts.max_depth = 2;
    opts.conditional = 0.6;
    Ctrs system = gen.system(opts);
    RemovalResult removal = remove_infeasible_rules(system);
    if (removal.removed.empty()) continue;
    Term t = gen.term(3);
    std::vector<Term> before, after;
    for (auto& [term, step] : successors(t, system, 3, 4))
      before.push_back(term);
    for (auto& [term, step] : successors(t, removal.system, 3, 4))
      after.push_back(term);
    CHECK_MESSAGE(before == after, "reducts of ", t.str(), " changed in ",
                  print_cops(system));
  }
}
