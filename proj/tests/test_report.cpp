#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "toa/report.hpp"

using namespace toa::report;

namespace {

const RunContext kCtx{ToleranceProfile::default_profile, 42};

}  // namespace

TEST_CASE("empty suite passes with an empty report") {
  const SuiteResult s = run_suite({}, kCtx);
  CHECK(s.exit_status == 0);
  const json j = to_json(s);
  CHECK(j["schema"] == 1);
  CHECK(j["reports"].empty());
}

TEST_CASE("one passing report serialises pass = true") {
  const SuiteResult s = run_suite({{"clifford"}}, kCtx);
  REQUIRE(s.reports.size() == 1);
  CHECK(s.exit_status == 0);
  const json j = json::parse(emit_report(s, Format::json));
  CHECK(j["reports"][0]["pass"] == true);
  CHECK(j["reports"][0]["residual"] == 0.0);
  for (const char* field : {"check_id", "anchor", "parameters", "residual", "residuals", "order", "order_band",
                            "tolerance", "pass", "runtime_ms", "notes"})
    CHECK(j["reports"][0].contains(field));
}

TEST_CASE("full precision survives the JSON round trip") {
  VerificationReport r;
  r.check_id = "synthetic";
  r.residual = 1.7e-5 + 1.234567890123e-17;
  SuiteResult s;
  s.reports.push_back(r);
  const json j = json::parse(emit_report(s, Format::json));
  CHECK(j["reports"][0]["residual"].get<double>() == *r.residual);
  // The table carries the same digits.
  const std::string table = emit_report(s, Format::table);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *r.residual);
  CHECK(table.find(buf) != std::string::npos);
}

TEST_CASE("coarse grid with a tight tolerance fails and records the residual") {
  CheckSpec spec{"commutators", json{{"step", 0.2}}, 1e-9, 1};
  const SuiteResult s = run_suite({spec}, kCtx);
  CHECK(s.exit_status != 0);
  REQUIRE(s.reports[0].residual.has_value());
  CHECK(*s.reports[0].residual > 1e-9);
  CHECK_FALSE(s.reports[0].pass);
}

TEST_CASE("unknown ids and invalid parameters are reported, not thrown") {
  CheckSpec grid_through_origin{"appendix-a-plus", json{{"p_min", -1.0}, {"p_max", 1.0}, {"grid", 21}}};
  const SuiteResult s = run_suite({{"no-such-check"}, grid_through_origin, {"clifford"}}, kCtx);
  REQUIRE(s.reports.size() == 3);
  CHECK_FALSE(s.reports[0].pass);
  CHECK(s.reports[0].notes.front().find("unknown check_id") != std::string::npos);
  CHECK_FALSE(s.reports[1].pass);
  CHECK_FALSE(s.reports[1].residual.has_value());
  CHECK(s.reports[1].notes.back().find("origin") != std::string::npos);
  CHECK(s.reports[2].pass);
  CHECK(s.exit_status == 1);
  CHECK_THROWS_AS(run_check({"no-such-check"}, kCtx), UnknownCheck);
}

TEST_CASE("spec invariants are enforced") {
  CheckSpec zero_tol{"clifford", json::object(), 0.0};
  CHECK_FALSE(run_check(zero_tol, kCtx).pass);
  CheckSpec no_refine{"flow", json::object(), std::nullopt, 0};
  CHECK_FALSE(run_check(no_refine, kCtx).pass);
}

TEST_CASE("strict profile scales tolerances") {
  const VerificationReport d = run_check({"spinors"}, kCtx);
  const VerificationReport s = run_check({"spinors"}, {ToleranceProfile::strict, 42});
  CHECK(s.tolerance == doctest::Approx(0.1 * d.tolerance));
  CHECK_THROWS_AS(parse_profile("loose"), std::invalid_argument);
}

TEST_CASE("json and table carry identical residuals") {
  const SuiteResult s = run_suite({{"spinors"}, {"derivative-identity"}}, kCtx);
  const json j = json::parse(emit_report(s, Format::json));
  const std::string table = emit_report(s, Format::table);
  for (const auto& r : j["reports"]) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r["residual"].get<double>());
    CHECK(table.find(buf) != std::string::npos);
  }
}

TEST_CASE("reruns are byte-identical without runtime, serial or concurrent") {
  std::vector<CheckSpec> specs{{"spinors"}, {"fock-stats"}, {"derivative-identity"}, {"f-vector"}, {"clifford"}};
  const std::string a = emit_report(run_suite(specs, kCtx, 1), Format::json, false);
  const std::string b = emit_report(run_suite(specs, kCtx, 4), Format::json, false);
  CHECK(a == b);
  CHECK(a.find("runtime_ms") == std::string::npos);
  const std::string c = emit_report(run_suite(specs, {ToleranceProfile::default_profile, 43}, 1), Format::json, false);
  CHECK(a != c);
}

TEST_CASE("registry ids are unique and every id has one anchor") {
  std::set<std::string> ids;
  for (const auto& info : registry()) {
    CHECK(ids.insert(info.id).second);
    CHECK_FALSE(info.anchor.empty());
    CHECK(explain({info.id}).find(info.anchor) != std::string::npos);
  }
  CHECK(default_suite().size() == registry().size());
  CHECK_THROWS_AS(explain({"nope"}), UnknownCheck);
}
