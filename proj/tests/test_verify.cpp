#include "doctest.h"

#include <set>

#include "asymspec/error.hpp"
#include "asymspec/verify.hpp"
#include "json.hpp"

using namespace asymspec;

TEST_CASE("suite names are unique and runnable one at a time") {
  const auto names = verify_suite_names();
  CHECK(names.size() >= 12);
  std::set<std::string> seen(names.begin(), names.end());
  CHECK(seen.size() == names.size());
  const auto r = run_verify(kDefaultSeed, "bracket_recurrence");
  REQUIRE(r.suites.size() == 1);
  CHECK(r.suites[0].name == "bracket_recurrence");
  CHECK(r.passed());
}

TEST_CASE("unknown suite") {
  try {
    run_verify(kDefaultSeed, "no_such_suite");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadParameter);
  }
}

TEST_CASE("report JSON is stable and self-consistent") {
  const auto a = to_json(run_verify(7, "commuting_collapse"));
  const auto b = to_json(run_verify(7, "commuting_collapse"));
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["seed"] == 7);
  for (const auto& suite : j["suites"])
    for (const auto& check : suite["checks"]) {
      const double v = check["value"], t = check["threshold"];
      const bool expect = check["relation"] == "<=" ? v <= t : v >= t;
      CHECK(check["passed"] == expect);
    }
}
