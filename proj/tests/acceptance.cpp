// Acceptance criteria 1-10, one PASS/FAIL line each. Tolerances are pinned
// here rather than taken from the check registry.

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "toa/report.hpp"

using namespace toa::report;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Line {
  bool pass;
  std::string detail;
};

bool in_band(double v, double centre, double half) { return std::abs(v - centre) <= half; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

double residual_of(const VerificationReport& r) { return r.residual.value_or(kInf); }

double last_error(const json& study) { return study.at("errors").back().get<double>(); }

}  // namespace

int main() {
  const RunContext ctx{ToleranceProfile::default_profile, kSeed};
  const SuiteResult first = run_suite(default_suite(), ctx, 4);
  std::map<std::string, const VerificationReport*> by_id;
  for (const auto& r : first.reports) by_id[r.check_id] = &r;
  auto get = [&](const std::string& id) -> const VerificationReport& { return *by_id.at(id); };

  std::map<int, Line> lines;

  {
    const double c = residual_of(get("clifford"));
    const double car = residual_of(get("fock-car"));
    lines[1] = {c == 0.0 && car == 0.0, "gamma algebra " + num(c) + ", CAR " + num(car) + " (tolerance 0)"};
  }
  {
    const double r = residual_of(get("spinors"));
    lines[2] = {r <= 1e-12, "max residual " + num(r) + " over 100 samples (<= 1e-12)"};
  }
  {
    const double plus = residual_of(get("appendix-a-plus"));
    const double minus = residual_of(get("appendix-a-minus"));
    const auto& fd = get("appendix-a-fd");
    const double order = fd.order.value_or(kNaN);
    const double conj = get("appendix-a-minus").residuals.value("conjugate_mass_operator", kNaN);
    lines[3] = {plus <= 1e-11 && minus <= 1e-11 && in_band(order, 2.0, 0.3),
                "plus " + num(plus) + ", minus " + num(minus) + " (<= 1e-11; minus vs mass -m operator " + num(conj) +
                    "), FD order " + fixed(order) + " (2.0 +- 0.3)"};
  }
  {
    const auto& r = get("derivative-identity");
    const double amp = residual_of(r);
    const double margin = r.residuals.value("margin", 0.0);
    const double noise = r.residuals.value("noise_floor", kInf);
    std::string selected = "none";
    for (const auto& n : r.notes)
      if (n.rfind("prefactor oracle selected ", 0) == 0) selected = n.substr(26);
    lines[4] = {amp <= 1e-9 && margin >= 10.0 * noise,
                "amplitude identity " + num(amp) + " (<= 1e-9), selected " + selected + ", margin/noise " +
                    num(margin / noise) + " (>= 10)"};
  }
  {
    const auto& r = get("commutators");
    const double a = r.residuals.value("H_T_dirac_order", kNaN);
    const double b = r.residuals.value("T_dual_H_dual_order", kNaN);
    const auto levels = r.residuals.at("H_T_dirac").at("steps").size();
    lines[5] = {in_band(a, 2.0, 0.3) && in_band(b, 2.0, 0.3) && levels >= 4,
                "[H,T]-i order " + fixed(a) + ", [T_dual,H_dual]+i order " + fixed(b) + " over " +
                    std::to_string(levels - 1) + " refinements (2.0 +- 0.3)"};
  }
  {
    const auto& r = get("energy-shift");
    const double order = r.order.value_or(kNaN);
    const double phase = r.residuals.value("eigen_phase", kInf);
    const double semi = r.residuals.value("semigroup", kInf);
    lines[6] = {in_band(order, 2.0, 0.3) && phase <= 1e-10 && semi <= 1e-10,
                "PDE order " + fixed(order) + " (2.0 +- 0.3), phase " + num(phase) + ", semigroup " + num(semi) +
                    " (<= 1e-10)"};
  }
  {
    const auto& r = get("action");
    const double drift = r.residuals.value("charge_drift", kInf);
    const double exponent = r.order.value_or(kNaN);
    lines[7] = {drift <= 1e-6 && in_band(exponent, 2.0, 0.2),
                "charge drift " + num(drift) + " (<= 1e-6), perturbation exponent " + fixed(exponent) +
                    " (2.0 +- 0.2)"};
  }
  {
    const auto& r = get("flow");
    const double drift = residual_of(r);
    const double order = r.order.value_or(kNaN);
    const double t0 = r.residuals.value("t0", kNaN);
    lines[8] = {drift <= 1e-8 && in_band(order, 4.0, 0.3) && std::abs(t0 + std::sqrt(2.0)) <= 1e-15,
                "T0 " + num(t0) + ", relative drift " + num(drift) + " (<= 1e-8), step order " + fixed(order) +
                    " (4.0 +- 0.3)"};
  }
  {
    const auto& r = get("fock-reconstruction");
    const auto& pair = r.residuals.at("pair");
    const auto& lattice = r.residuals.at("lattice");
    const double dev = std::max(pair.at("deviation").get<double>(), lattice.at("deviation").get<double>());
    const int s1 = pair.at("sign").get<int>();
    const int s2 = lattice.at("sign").get<int>();
    const bool vacuum = pair.at("vacuum_gap").get<double>() == 0.0 && lattice.at("vacuum_gap").get<double>() == 0.0;
    const double delta = residual_of(get("field-car"));
    bool complete = false;
    for (const auto& n : get("field-car").notes) complete = complete || n == "holds: mode set is a complete basis";
    lines[9] = {dev <= 1e-10 && s1 == s2 && vacuum && delta <= 1e-12 && complete,
                "quadratic form " + num(dev) + " (<= 1e-10), sigma " + std::to_string(s1) + "/" + std::to_string(s2) +
                    ", vacuum exact " + (vacuum ? "yes" : "no") + ", discrete delta " + num(delta) + " (<= 1e-12, " + (complete ? "complete" : "incomplete") + " lattice)"};
  }
  {
    const std::string a = emit_report(first, Format::json, false);
    const std::string b = emit_report(run_suite(default_suite(), ctx, 1), Format::json, false);
    lines[10] = {a == b, std::string("default suite rerun (4 workers vs 1) ") + (a == b ? "byte-identical" : "differs") +
                             ", " + std::to_string(a.size()) + " bytes"};
  }

  int failed = 0;
  for (const auto& [id, line] : lines) {
    std::printf("criterion %2d %s  %s\n", id, line.pass ? "PASS" : "FAIL", line.detail.c_str());
    failed += line.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
