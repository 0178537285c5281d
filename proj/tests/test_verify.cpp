#include <doctest.h>

#include <string>

#include "halftree/verify.hpp"
#include "support.hpp"

using namespace halftree;

TEST_SUITE_BEGIN("verify");

namespace {

InstanceInfo info_for(const SkewMatrix& m, std::uint64_t seed) {
  InstanceInfo info;
  info.n = m.n();
  info.r = m.r();
  info.seed = seed;
  return info;
}

std::string strip_timing(std::string json) {
  const auto pos = json.find("\"elapsed_ms\"");
  return pos == std::string::npos ? json : json.substr(0, pos);
}

const CheckResult* find_check(const VerificationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("all suites pass on a healthy instance") {
  InstanceSpec spec;
  spec.n = 4;
  spec.r = 2;
  spec.seed = 77;
  const SkewMatrix m = random_instance(spec);
  const VerificationReport rep = run_suite(m, info_for(m, 77), "all", 77);
  CHECK(rep.passed());
  for (const auto& c : rep.checks) CHECK(c.status != CheckResult::Status::fail);
  // every identity actually ran on this even-size zero-sum instance
  for (const char* name :
       {"zero-column-sums", "pfaffian-oracles-minor", "determinant-is-pfaffian-squared",
        "matching-expansion-per-reference", "half-forest-expansion-per-reference",
        "determinant-forest-expansions", "opening-weight-preservation",
        "opening-correspondence", "cycle-cover-expansion",
        "twisted-determinant-crsf-expansion", "trivial-connection-vanishes"}) {
    const CheckResult* c = find_check(rep, name);
    REQUIRE(c != nullptr);
    CHECK(c->status == CheckResult::Status::pass);
  }
}

TEST_CASE("odd total size skips only the line-bundle identity") {
  const SkewMatrix m = testsupport::canonical_instance();
  const VerificationReport rep = run_suite(m, info_for(m, 3), "all", 3);
  CHECK(rep.passed());
  const CheckResult* twisted = find_check(rep, "twisted-determinant-crsf-expansion");
  REQUIRE(twisted != nullptr);
  CHECK(twisted->status == CheckResult::Status::skip);
  const CheckResult* forests = find_check(rep, "half-forest-expansion-per-reference");
  REQUIRE(forests != nullptr);
  CHECK(forests->status == CheckResult::Status::pass);
}

TEST_CASE("single perturbed edge weight fails exactly the hypothesis check") {
  InstanceSpec spec;
  spec.n = 4;
  spec.r = 2;
  spec.seed = 31;
  SkewMatrix m = random_instance(spec);
  m.set_pair(0, 1, m.at(0, 1) + Rational(1));  // stays skew, breaks two row sums

  const VerificationReport rep = run_suite(m, info_for(m, 31), "all", 31);
  CHECK(!rep.passed());
  const CheckResult* zero = find_check(rep, "zero-column-sums");
  REQUIRE(zero != nullptr);
  CHECK(zero->status == CheckResult::Status::fail);
  CHECK(!zero->counterexample.empty());
  CHECK(zero->counterexample[0].first == "row");

  // hypothesis-dependent identities report skip rather than noise failures
  for (const char* name : {"half-forest-expansion-per-reference",
                           "determinant-forest-expansions", "opening-correspondence"}) {
    const CheckResult* c = find_check(rep, name);
    REQUIRE(c != nullptr);
    CHECK(c->status == CheckResult::Status::skip);
  }
  // identities that do not need zero sums still pass
  const CheckResult* oracle = find_check(rep, "pfaffian-oracles-minor");
  REQUIRE(oracle != nullptr);
  CHECK(oracle->status == CheckResult::Status::pass);
  const CheckResult* matching = find_check(rep, "matching-expansion-per-reference");
  REQUIRE(matching != nullptr);
  CHECK(matching->status == CheckResult::Status::pass);
}

TEST_CASE("reports are deterministic apart from timing") {
  InstanceSpec spec;
  spec.n = 4;
  spec.r = 1;
  spec.seed = 5;
  const SkewMatrix m = random_instance(spec);
  const std::string a =
      strip_timing(report_to_json(run_suite(m, info_for(m, 5), "all", 5)));
  const std::string b =
      strip_timing(report_to_json(run_suite(m, info_for(m, 5), "all", 5)));
  CHECK(a == b);
  CHECK(a.find("\"suite\": \"all\"") != std::string::npos);
  CHECK(a.find("\"checks\"") != std::string::npos);
}

TEST_CASE("halftree suite records the surviving family sizes") {
  const SkewMatrix m = testsupport::canonical_instance();
  const VerificationReport rep = run_suite(m, info_for(m, 3), "halftree", 3);
  CHECK(rep.passed());
  const CheckResult* c = find_check(rep, "half-forest-expansion-per-reference");
  REQUIRE(c != nullptr);
  bool found = false;
  for (const auto& [k, v] : c->counterexample) {
    if (k == "surviving[1-4 2-3]") {
      found = true;
      CHECK(v == "4");
    }
  }
  CHECK(found);
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"detail\"") != std::string::npos);
}

TEST_CASE("all suites pass on a larger instance") {
  InstanceSpec spec;
  spec.n = 6;
  spec.r = 2;
  spec.seed = 61;
  const SkewMatrix m = random_instance(spec);
  const VerificationReport rep = run_suite(m, info_for(m, 61), "all", 61);
  CHECK(rep.passed());
}

TEST_CASE("thread count env var does not change the result") {
  InstanceSpec spec;
  spec.n = 4;
  spec.r = 2;
  spec.seed = 12;
  const SkewMatrix m = random_instance(spec);
  const std::string serial =
      strip_timing(report_to_json(run_suite(m, info_for(m, 12), "all", 12)));
  setenv("HALFTREE_THREADS", "4", 1);
  const std::string threaded =
      strip_timing(report_to_json(run_suite(m, info_for(m, 12), "all", 12)));
  unsetenv("HALFTREE_THREADS");
  CHECK(serial == threaded);
}

TEST_CASE("suite names") {
  CHECK(is_suite("pfaffian"));
  CHECK(is_suite("all"));
  CHECK(!is_suite("everything"));
  CHECK_THROWS(run_suite(testsupport::canonical_instance(), InstanceInfo{}, "nope", 0));
}

TEST_SUITE_END();
