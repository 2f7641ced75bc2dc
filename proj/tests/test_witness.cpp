#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrsnc/cops.hpp"
#include "ctrsnc/witness.hpp"
#include "support/helpers.hpp"
#include "support/mutate.hpp"

using namespace ctrsnc;
using testsupport::load_fixture;

namespace {
Witness fixture_witness(const std::string& name) {
  auto w = prove_nonconfluence(load_fixture(name));
  REQUIRE(w);
  return *w;
}
}  // namespace

TEST_CASE("structured round-trip on all fixture witnesses") {
  for (const char* name : {"cops_320.trs", "cops_271.trs", "cops_262.trs"}) {
    Witness w = fixture_witness(name);
    std::string doc = emit_witness(w, WitnessFormat::Structured);
    Witness back = parse_witness(doc);
    CHECK(back == w);
    CHECK(emit_witness(back, WitnessFormat::Structured) == doc);
    // The parsed witness still certifies against the embedded system.
    Ctrs system = parse_cops(back.system_text).system;
    CHECK(check_witness(system, back).ok);
  }
}

TEST_CASE("text narration names the peak and the endpoints") {
  Witness w = fixture_witness("cops_262.trs");
  std::string text = emit_witness(w, WitnessFormat::Text);
  CHECK(text.find(w.peak.str()) != std::string::npos);
  CHECK(text.find(w.evidence.left.str()) != std::string::npos);
  CHECK(text.find(w.evidence.right.str()) != std::string::npos);
  CHECK(text.find("NARROWING") != std::string::npos);

  Witness w271 = fixture_witness("cops_271.trs");
  std::string text271 = emit_witness(w271, WitnessFormat::Text);
  CHECK(text271.find("rule 3") != std::string::npos);  // the removed rule
}

TEST_CASE("unknown schema versions are refused") {
  Witness w = fixture_witness("cops_320.trs");
  std::string doc = emit_witness(w, WitnessFormat::Structured);
  std::string bumped = doc;
  bumped.replace(bumped.find("\"schema_version\": 1"),
                 std::string("\"schema_version\": 1").size(),
                 "\"schema_version\": 2");
  CHECK_THROWS_AS(parse_witness(bumped), WitnessError);
  CHECK_THROWS_AS(parse_witness("not json at all"), WitnessError);
  CHECK_THROWS_AS(parse_witness("{}"), WitnessError);
  CHECK_THROWS_AS(parse_witness("{\"schema_version\": 1}"), WitnessError);
}

TEST_CASE("checker rejects hand-picked tampering") {
  Ctrs system = load_fixture("cops_271.trs");
  Witness w = fixture_witness("cops_271.trs");

  Witness wrong_rule = w;
  wrong_rule.left.steps[0].rule_index = 3;
  CheckResult r1 = check_witness(system, wrong_rule);
  CHECK(!r1.ok);
  CHECK(r1.message.find("left") != std::string::npos);

  Witness equal_endpoints = w;
  equal_endpoints.right = equal_endpoints.left;
  equal_endpoints.evidence.right = equal_endpoints.evidence.left;
  CHECK(!check_witness(system, equal_endpoints).ok);

  // Claiming the removal was justified by the cap check lies: the cap of
  // s(x) collapses to a fresh variable, which unifies with 0.
  Witness wrong_reason = w;
  REQUIRE(wrong_reason.preprocessing.size() == 1);
  wrong_reason.preprocessing[0].reason = RemovedRule::Reason::TcapNonUnifiable;
  CheckResult r2 = check_witness(system, wrong_reason);
  CHECK(!r2.ok);
  CHECK(r2.message.find("re-verify") != std::string::npos);

  // A removal the original system never needed also fails re-verification
  // when it cites a rule without conditions.
  Witness extra_removal = w;
  extra_removal.preprocessing.push_back(
      RemovedRule{3, 0, RemovedRule::Reason::TcapNonUnifiable});
  CHECK(!check_witness(system, extra_removal).ok);
}

TEST_CASE("checker rejects witnesses for the wrong system") {
  Witness w = fixture_witness("cops_320.trs");
  CHECK(!check_witness(load_fixture("cops_271.trs"), w).ok);
}

TEST_CASE("every single-field mutation is rejected") {
  for (const char* name : {"cops_320.trs", "cops_271.trs", "cops_262.trs"}) {
    Ctrs system = load_fixture(name);
    Witness w = fixture_witness(name);
    REQUIRE(check_witness(system, w).ok);
    auto mutations = testsupport::witness_mutations(w);
    CHECK(mutations.size() >= 10);
    for (std::size_t k = 0; k < mutations.size(); ++k)
      CHECK_MESSAGE(!check_witness(system, mutations[k]).ok, "mutation ", k,
                    " of ", name, " slipped through");
  }
}
