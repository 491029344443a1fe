#pragma once

// Named verification checks, the suite runner and report serialisation.
//
// JSON schema 1:
//   { "schema": 1, "seed": u64, "tolerance_profile": "default" | "strict",
//     "reports": [ { "check_id", "anchor", "parameters", "residual", "residuals",
//                    "order", "order_band", "tolerance", "pass", "runtime_ms",
//                    "notes" } ... ],
//     "summary": { "total", "passed", "failed" } }
// "residual" is null when a check could not run; "order" and "order_band" are
// null unless the check asserts a convergence order.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace toa::report {

using json = nlohmann::ordered_json;

enum class ToleranceProfile { default_profile, strict };
enum class Format { json, table };

std::string to_string(ToleranceProfile p);
/// Throws std::invalid_argument for anything but "default" or "strict".
ToleranceProfile parse_profile(const std::string& name);

class UnknownCheck : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckSpec {
  std::string check_id;
  json parameters = json::object();  // overrides of the check's defaults
  std::optional<double> tolerance;   // overrides the default; must be > 0
  int refinements = 3;               // >= 1
};

struct VerificationReport {
  std::string check_id;
  std::string anchor;
  json parameters = json::object();  // effective parameters after defaults
  std::optional<double> residual;
  json residuals = json::object();   // named components
  std::optional<double> order;
  std::optional<std::pair<double, double>> order_band;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::vector<std::string> notes;
};

struct CheckInfo {
  std::string id;
  std::string anchor;
  std::string summary;
  double default_tolerance = 0.0;  // 0 marks an exact (integer-valued) check
};

/// All checks in registry order.
const std::vector<CheckInfo>& registry();
/// nullptr when unknown.
const CheckInfo* find_check(const std::string& id);

struct RunContext {
  ToleranceProfile profile = ToleranceProfile::default_profile;
  std::uint64_t seed = 0;
};

/// Runs one check. Unknown ids throw UnknownCheck; invalid parameters or
/// numerical failures inside the check are reported as a failing report.
VerificationReport run_check(const CheckSpec& spec, const RunContext& ctx);

struct SuiteResult {
  std::vector<VerificationReport> reports;
  ToleranceProfile profile = ToleranceProfile::default_profile;
  std::uint64_t seed = 0;
  int exit_status = 0;  // 0 iff every report passed
};

/// Runs the specs (up to `jobs` concurrently) and returns reports in
/// declaration order. Unknown ids are reported as failing reports.
SuiteResult run_suite(const std::vector<CheckSpec>& specs, const RunContext& ctx, unsigned jobs = 1);

/// Every registered check with default parameters.
std::vector<CheckSpec> default_suite();

json to_json(const VerificationReport& r, bool include_runtime = true);
json to_json(const SuiteResult& s, bool include_runtime = true);
std::string emit_report(const SuiteResult& s, Format format, bool include_runtime = true);

/// "check_id: anchor" lines for the given ids (all checks when empty).
std::string explain(const std::vector<std::string>& ids);

}  // namespace toa::report
