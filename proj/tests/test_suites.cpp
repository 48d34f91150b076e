#include "taut/error.hpp"
#include "taut/suites.hpp"

#include <doctest.h>

using namespace taut;

namespace {

SuiteOptions small(int samples) {
  SuiteOptions o;
  o.samples = samples;
  return o;
}

bool check_named(const SuiteReport& r, const std::string& prefix, bool holds) {
  for (const auto& c : r.checks)
    if (c.identity.rfind(prefix, 0) == 0)
      return c.holds == holds;
  return false;
}

} // namespace

TEST_CASE("range parsing") {
  CHECK(parse_n_range("4..8") == std::pair{4, 8});
  CHECK(parse_n_range("6") == std::pair{6, 6});
  CHECK_THROWS_AS(parse_n_range("8..4"), UsageError);
  CHECK_THROWS_AS(parse_n_range("3..5"), UsageError);
  CHECK_THROWS_AS(parse_n_range("4..17"), UsageError);
  CHECK_THROWS_AS(parse_n_range("x"), UsageError);
}

TEST_CASE("suite names and unknown suites") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("nonsense", {}), UsageError);
  SuiteOptions bad;
  bad.samples = -1;
  CHECK_THROWS_AS(run_suite("mumford", bad), UsageError);
}

TEST_CASE("passing suites") {
  SuiteOptions keel;
  keel.n_range = std::pair{4, 6};
  CHECK(run_suite("keel", keel).ok());
  CHECK(run_suite("positivity", {}).ok());
  CHECK(run_suite("mumford", small(3)).ok());
  CHECK(run_suite("discrepancy", small(5)).ok());
  CHECK(run_suite("n6-relations", {}).ok());
  CHECK(run_suite("git-descent", small(5)).ok());
  SuiteOptions nef = small(3);
  nef.n_range = std::pair{5, 6};
  CHECK(run_suite("theorem-nef", nef).ok());
}

TEST_CASE("replacement suite: corrected form holds, literal form is reported violated") {
  const SuiteReport r = run_suite("replacement", small(12));
  CHECK_FALSE(r.ok());
  CHECK(check_named(r, "chi^* A(b) = A(a) + (1 - a_i) psi_i", false));
  CHECK(check_named(r, "chi^* A(b) = A(a) + (k - 1) C_i(a)", true));
  CHECK(check_named(r, "k = 1", true));
  CHECK(r.results["literal_fails"].get<int>() >= 1);
}

TEST_CASE("discrepancy on a single instance") {
  SuiteOptions o;
  o.weights = std::vector<Rational>{1, 1, frac(1, 10), frac(1, 10), frac(1, 10)};
  const SuiteReport r = run_suite("discrepancy", o);
  CHECK(r.ok());
  const auto j = r.to_json(o.seed);
  CHECK(j["status"] == "holds");
  CHECK(j.dump().find("\"value\":\"7/5\"") != std::string::npos);
}

TEST_CASE("git-descent with explicit x, including the atypical n=4 point") {
  SuiteOptions o;
  o.x = std::vector<Rational>(4, frac(1, 2));
  const SuiteReport r = run_suite("git-descent", o);
  CHECK(r.ok());
  CHECK_FALSE(r.notes.empty());
  o.x = std::vector<Rational>{frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 4)};
  CHECK_THROWS_AS(run_suite("git-descent", o), UsageError);
}

TEST_CASE("JSON is byte-identical for any number of jobs") {
  for (const char* name : {"replacement", "discrepancy", "theorem-nef"}) {
    SuiteOptions one = small(6), three = small(6);
    three.jobs = 3;
    if (std::string(name) == "theorem-nef")
      one.n_range = three.n_range = std::pair{5, 6};
    CHECK(run_suite(name, one).to_json(one.seed).dump() ==
          run_suite(name, three).to_json(three.seed).dump());
  }
}

TEST_CASE("report JSON layout") {
  const auto j = run_suite("positivity", {}).to_json(7);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items())
    keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"suite", "seed", "parameters", "status", "checks", "notes",
                                         "results"});
  CHECK(j["suite"] == "positivity");
  CHECK(j["seed"] == 7);
  CHECK(j["results"]["6"]["2"] == "3/5");
}
