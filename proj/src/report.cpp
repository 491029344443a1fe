#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "toa/report.hpp"

namespace toa::report {

std::string to_string(ToleranceProfile p) { return p == ToleranceProfile::strict ? "strict" : "default"; }

ToleranceProfile parse_profile(const std::string& name) {
  if (name == "default") return ToleranceProfile::default_profile;
  if (name == "strict") return ToleranceProfile::strict;
  throw std::invalid_argument("unknown tolerance profile '" + name + "' (expected strict or default)");
}

SuiteResult run_suite(const std::vector<CheckSpec>& specs, const RunContext& ctx, unsigned jobs) {
  SuiteResult out;
  out.profile = ctx.profile;
  out.seed = ctx.seed;
  out.reports.resize(specs.size());

  auto run_one = [&](std::size_t i) {
    try {
      out.reports[i] = run_check(specs[i], ctx);
    } catch (const UnknownCheck& ex) {
      VerificationReport r;
      r.check_id = specs[i].check_id;
      r.parameters = specs[i].parameters;
      r.tolerance = specs[i].tolerance.value_or(0.0);
      r.notes.push_back(std::string("error: ") + ex.what());
      out.reports[i] = std::move(r);
    }
  };

  // Each worker writes only its own slot; the merge order is the declaration order.
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(specs.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) run_one(i);
      });
    for (auto& t : pool) t.join();
  }

  out.exit_status = std::all_of(out.reports.begin(), out.reports.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
  return out;
}

json to_json(const VerificationReport& r, bool include_runtime) {
  json j;
  j["check_id"] = r.check_id;
  j["anchor"] = r.anchor;
  j["parameters"] = r.parameters;
  j["residual"] = r.residual ? json(*r.residual) : json(nullptr);
  j["residuals"] = r.residuals;
  j["order"] = r.order ? json(*r.order) : json(nullptr);
  j["order_band"] = r.order_band ? json::array({r.order_band->first, r.order_band->second}) : json(nullptr);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  j["notes"] = r.notes;
  return j;
}

json to_json(const SuiteResult& s, bool include_runtime) {
  json j;
  j["schema"] = 1;
  j["seed"] = s.seed;
  j["tolerance_profile"] = to_string(s.profile);
  json reports = json::array();
  std::size_t passed = 0;
  for (const auto& r : s.reports) {
    reports.push_back(to_json(r, include_runtime));
    passed += r.pass ? 1 : 0;
  }
  j["reports"] = std::move(reports);
  j["summary"] = {{"total", s.reports.size()}, {"passed", passed}, {"failed", s.reports.size() - passed}};
  return j;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string emit_report(const SuiteResult& s, Format format, bool include_runtime) {
  if (format == Format::json) return to_json(s, include_runtime).dump(2) + "\n";

  std::ostringstream os;
  os << "seed " << s.seed << ", tolerance profile " << to_string(s.profile) << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-5s %-24s %-12s %-16s %s\n", "check", "pass", "residual", "tolerance",
                "order", include_runtime ? "runtime_ms" : "");
  os << line;
  std::size_t passed = 0;
  for (const auto& r : s.reports) {
    passed += r.pass ? 1 : 0;
    // %.17g keeps the full double so table and JSON carry the same value.
    const std::string residual = r.residual ? fmt("%.17g", *r.residual) : "-";
    std::string order = "-";
    if (r.order) {
      order = fmt("%.3f", *r.order);
      if (r.order_band) order += " [" + fmt("%.1f", r.order_band->first) + "," + fmt("%.1f", r.order_band->second) + "]";
    }
    std::snprintf(line, sizeof line, "%-22s %-5s %-24s %-12s %-16s %s\n", r.check_id.c_str(), r.pass ? "PASS" : "FAIL",
                  residual.c_str(), fmt("%.3g", r.tolerance).c_str(), order.c_str(),
                  include_runtime ? fmt("%.1f", r.runtime_ms).c_str() : "");
    os << line;
    for (const auto& n : r.notes) os << "    " << n << "\n";
  }
  os << passed << "/" << s.reports.size() << " checks passed\n";
  return os.str();
}

std::string explain(const std::vector<std::string>& ids) {
  std::ostringstream os;
  auto one = [&](const CheckInfo& info) { os << info.id << ": " << info.anchor << "\n    " << info.summary << "\n"; };
  if (ids.empty()) {
    for (const auto& info : registry()) one(info);
    return os.str();
  }
  for (const auto& id : ids) {
    const CheckInfo* info = find_check(id);
    if (!info) throw UnknownCheck("unknown check_id '" + id + "'");
    one(*info);
  }
  return os.str();
}

}  // namespace toa::report
