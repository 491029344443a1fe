#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>

#include <CLI11.hpp>

#include "toa/dual_flow.hpp"
#include "toa/fock.hpp"
#include "toa/kernels.hpp"
#include "toa/report.hpp"

namespace {

using toa::report::json;

struct Options {
  std::optional<double> m, x, tau, p_min, p_max, eps_span, step, tolerance, dp, offset;
  std::optional<std::size_t> grid, lattice_n;
  std::optional<std::string> spin, spins, species;
  std::vector<int> lattice_k;
  int refinements = 3;
  std::uint64_t seed = 20240601;
  std::string format = "table";
  std::string profile = "default";
  std::string output;
  bool explain = false;
  bool no_runtime = false;
  unsigned jobs = 1;
};

const std::map<std::string, std::vector<std::string>> kVerifyTargets = {
    {"clifford", {"clifford", "fock-car"}},
    {"spinors", {"spinors"}},
    {"appendix-a", {"appendix-a-plus", "appendix-a-minus", "appendix-a-fd", "derivative-identity", "f-vector"}},
    {"commutators", {"commutators"}},
    {"energy-shift", {"energy-shift", "action"}},
    {"field-car", {"field-car"}},
};

json overrides(const Options& o) {
  json p = json::object();
  if (o.m) {
    p["m"] = *o.m;
    p["masses"] = json::array({*o.m});
  }
  if (o.x) {
    p["x"] = *o.x;
    p["positions"] = json::array({*o.x});
  }
  if (o.tau) p["tau"] = *o.tau;
  if (o.p_min) p["p_min"] = *o.p_min;
  if (o.p_max) p["p_max"] = *o.p_max;
  if (o.grid) p["grid"] = *o.grid;
  if (o.eps_span) p["eps_span"] = *o.eps_span;
  if (o.step) p["step"] = *o.step;
  if (o.spin) p["spin"] = *o.spin;
  if (o.spins) p["spins"] = *o.spins;
  if (o.species) p["species"] = *o.species;
  if (!o.lattice_k.empty()) p["lattice_k"] = o.lattice_k;
  if (o.lattice_n) p["lattice_n"] = *o.lattice_n;
  if (o.dp) p["dp"] = *o.dp;
  if (o.offset) p["offset"] = *o.offset;
  return p;
}

toa::report::Format parse_format(const std::string& f) {
  return f == "json" ? toa::report::Format::json : toa::report::Format::table;
}

void write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw std::runtime_error("cannot open " + o.output);
  f << text;
}

int run_ids(const Options& o, const std::vector<std::string>& ids) {
  if (o.explain) {
    std::cout << toa::report::explain(ids);
    return 0;
  }
  std::vector<toa::report::CheckSpec> specs;
  for (const auto& id : ids) specs.push_back({id, overrides(o), o.tolerance, o.refinements});
  const toa::report::RunContext ctx{toa::report::parse_profile(o.profile), o.seed};
  const auto suite = toa::report::run_suite(specs, ctx, o.jobs);
  write_out(o, toa::report::emit_report(suite, parse_format(o.format), !o.no_runtime));
  return suite.exit_status;
}

int run_flow(const Options& o, std::size_t sample_every) {
  if (o.explain) return run_ids(o, {"flow"});
  const double m = o.m.value_or(1.0);
  const toa::DualFlowState start{0.0, {o.x.value_or(1.0)}, {1.0}};
  const double span = o.eps_span.value_or(10.0);
  const double h = o.step.value_or(1e-3);
  const toa::TimeFunction t = toa::arrival_time_function(m);
  const toa::FlowResult r = toa::integrate_flow(start, t, span, h, sample_every);
  const double tol = o.tolerance.value_or(1e-8) * (o.profile == "strict" ? 0.1 : 1.0);
  const bool pass = r.max_rel_drift <= tol;

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = 1;
    j["parameters"] = {{"m", m}, {"q0", start.q[0]}, {"k0", start.k[0]}, {"eps_span", span}, {"step", h}};
    j["t0"] = r.t0;
    j["max_abs_drift"] = r.max_abs_drift;
    j["max_rel_drift"] = r.max_rel_drift;
    j["tolerance"] = tol;
    j["pass"] = pass;
    json rows = json::array();
    for (const auto& s : r.trajectory) rows.push_back({s.eps, s.q[0], s.k[0], t(s.q, s.k)});
    j["columns"] = {"eps", "q", "k", "T"};
    j["trajectory"] = rows;
    os << j.dump(2) << "\n";
  } else {
    char line[160];
    os << "eps q k T\n";
    for (const auto& s : r.trajectory) {
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g\n", s.eps, s.q[0], s.k[0], t(s.q, s.k));
      os << line;
    }
    std::snprintf(line, sizeof line, "# T0 %.17g  max relative drift %.3e  tolerance %.1e  %s\n", r.t0,
                  r.max_rel_drift, tol, pass ? "PASS" : "FAIL");
    os << line;
  }
  write_out(o, os.str());
  return pass ? 0 : 1;
}

toa::Grid1D fock_grid(const Options& o) {
  return toa::Grid1D::symmetric(toa::Axis::momentum, o.lattice_n.value_or(8), o.dp.value_or(0.5));
}

toa::ModeSet fock_modes(const Options& o, const toa::Grid1D& pg) {
  std::vector<int> ks = o.lattice_k.empty() ? std::vector<int>{1, 2} : o.lattice_k;
  const std::string spins = o.spins.value_or("both");
  const std::string species = o.species.value_or("both");
  std::vector<toa::Spin> sp;
  if (spins == "both" || spins == "up") sp.push_back(toa::Spin::up);
  if (spins == "both" || spins == "down") sp.push_back(toa::Spin::down);
  std::vector<toa::Species> se;
  if (species == "both" || species == "electron") se.push_back(toa::Species::electron_event);
  if (species == "both" || species == "positron") se.push_back(toa::Species::positron_event);
  return toa::ModeSet::conjugate_lattice(pg, ks, o.offset.value_or(0.0), sp, se, o.tau.value_or(0.75));
}

std::vector<double> sorted_diagonal(const toa::FockOperator& t) {
  std::vector<double> v;
  for (std::size_t i = 0; i < t.rows(); ++i) v.push_back(t(i, i).real());
  std::sort(v.begin(), v.end());
  return v;
}

json modes_json(const toa::ModeSet& modes) {
  json arr = json::array();
  for (const auto& m : modes.labels())
    arr.push_back({{"species", toa::to_string(m.species)}, {"x", m.x}, {"s", toa::spin_value(m.s)},
                   {"tau", m.tau}, {"T_x", m.arrival_time()}});
  return arr;
}

void print_values(std::ostream& os, const char* title, const std::vector<double>& v) {
  os << title << "\n";
  char line[64];
  for (double x : v) {
    std::snprintf(line, sizeof line, "%.17g\n", x);
    os << line;
  }
}

int run_fock(const Options& o, const std::string& action) {
  if (o.explain) {
    const std::map<std::string, std::vector<std::string>> ids{
        {"build", {"fock-car"}}, {"compare", {"fock-reconstruction"}}, {"stats", {"fock-stats"}}};
    return run_ids(o, ids.at(action));
  }
  const toa::Grid1D pg = fock_grid(o);
  const toa::ModeSet modes = fock_modes(o, pg);
  const toa::FockOperator t35 = toa::build_T_quantized(modes);
  json j;
  j["schema"] = 1;
  j["modes"] = modes_json(modes);
  j["fock_dimension"] = modes.fock_dimension();
  std::ostringstream os;
  int status = 0;

  if (action == "build") {
    const double car = toa::car_residual(toa::build_ladder_ops(modes));
    j["car_residual"] = car;
    j["spectrum"] = sorted_diagonal(t35);
    status = car == 0.0 ? 0 : 1;
    if (o.format != "json") {
      os << modes.size() << " modes, Fock dimension " << modes.fock_dimension() << ", CAR residual " << car << "\n";
      print_values(os, "sorted spectrum:", sorted_diagonal(t35));
    }
  } else if (action == "compare") {
    const toa::QuadraticFormResult q = toa::quadratic_form_T(modes, pg);
    const double tol = o.tolerance.value_or(1e-10) * (o.profile == "strict" ? 0.1 : 1.0);
    j["sign"] = q.sign;
    j["deviation"] = q.deviation;
    j["deviation_opposite_sign"] = q.deviation_opposite;
    j["tolerance"] = tol;
    j["pass"] = q.deviation <= tol;
    j["spectrum_quantized"] = sorted_diagonal(t35);
    j["spectrum_quadratic_form"] = sorted_diagonal(q.t_quad);
    status = q.deviation <= tol ? 0 : 1;
    if (o.format != "json") {
      char line[160];
      std::snprintf(line, sizeof line, "sigma %+d  deviation %.3e  opposite sign %.3e  %s\n", q.sign, q.deviation,
                    q.deviation_opposite, status == 0 ? "PASS" : "FAIL");
      os << line;
      print_values(os, "sorted spectrum of the quadratic form:", sorted_diagonal(q.t_quad));
    }
  } else {
    const toa::EventStatistics vac = toa::event_statistics(toa::basis_state(modes, {}), t35);
    j["vacuum_mean"] = vac.mean;
    j["vacuum_variance"] = vac.variance;
    json per_mode = json::array();
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::size_t occ[] = {i};
      const toa::EventStatistics s = toa::event_statistics(toa::basis_state(modes, occ), t35);
      per_mode.push_back({{"mode", i}, {"mean", s.mean}, {"variance", s.variance}});
    }
    j["one_event_states"] = per_mode;
    if (o.format != "json") {
      char line[160];
      std::snprintf(line, sizeof line, "vacuum mean %.17g  variance %.3g\n", vac.mean, vac.variance);
      os << line;
      for (const auto& row : per_mode) {
        std::snprintf(line, sizeof line, "mode %zu: mean %.17g  variance %.3g\n", row["mode"].get<std::size_t>(),
                      row["mean"].get<double>(), row["variance"].get<double>());
        os << line;
      }
    }
  }
  if (o.format == "json") os << j.dump(2) << "\n";
  write_out(o, os.str());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toalab: numerical checks for the relativistic time-of-arrival operator"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--m", o.m, "mass m");
  app.add_option("--x", o.x, "arrival position x (flow: initial q)");
  app.add_option("--tau", o.tau, "proper time tau");
  app.add_option("--spin", o.spin, "spin for single-spin checks")->check(CLI::IsMember({"up", "down"}));
  app.add_option("--p-min", o.p_min, "lower end of the momentum grid");
  app.add_option("--p-max", o.p_max, "upper end of the momentum grid");
  app.add_option("--grid", o.grid, "number of momentum grid points")->check(CLI::Range(std::size_t{3}, std::size_t{4096}));
  app.add_option("--refinements", o.refinements, "grid refinements in convergence studies")->check(CLI::PositiveNumber);
  app.add_option("--eps-span", o.eps_span, "extent of the energy parameter")->check(CLI::PositiveNumber);
  app.add_option("--step", o.step, "base step (flow: RK4 step)")->check(CLI::PositiveNumber);
  app.add_option("--lattice-k", o.lattice_k, "conjugate-lattice indices, e.g. 1,2")->delimiter(',');
  app.add_option("--lattice-n", o.lattice_n, "points of the Fock momentum lattice (even)");
  app.add_option("--dp", o.dp, "spacing of the Fock momentum lattice")->check(CLI::PositiveNumber);
  app.add_option("--offset", o.offset, "fractional shift of the conjugate lattice (0 or 0.5)");
  app.add_option("--spins", o.spins, "spins of the mode set")->check(CLI::IsMember({"up", "down", "both"}));
  app.add_option("--species", o.species, "species of the mode set")->check(CLI::IsMember({"electron", "positron", "both"}));
  app.add_option("--seed", o.seed, "seed for randomized sweeps");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--tolerance-profile", o.profile, "tolerance profile")->check(CLI::IsMember({"strict", "default"}));
  app.add_option("--tolerance", o.tolerance, "override the check tolerance (> 0)")->check(CLI::PositiveNumber);
  app.add_option("--jobs", o.jobs, "checks run concurrently")->check(CLI::Range(1u, 64u));
  app.add_option("-o,--output", o.output, "write the report to a file");
  app.add_flag("--explain", o.explain, "print the anchor of each check instead of running it");
  app.add_flag("--no-runtime", o.no_runtime, "omit runtime_ms from reports");
  std::string kernels = "auto";
  app.add_option("--kernels", kernels, "dense kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  std::string target;
  auto* verify = app.add_subcommand("verify", "run one group of checks");
  verify->add_option("target", target, "check group or check id")->required();

  std::size_t sample_every = 100;
  auto* flow = app.add_subcommand("flow", "integrate the dual flow and export (eps, q, k, T)");
  flow->add_option("--sample-every", sample_every, "export every n-th step")->check(CLI::PositiveNumber);

  auto* fock = app.add_subcommand("fock", "finite Fock-space tools");
  fock->require_subcommand(1);
  auto* fock_build = fock->add_subcommand("build", "ladder operators, CAR residual and the T spectrum");
  auto* fock_compare = fock->add_subcommand("compare", "quadratic-form charge against the number-operator sum");
  auto* fock_stats = fock->add_subcommand("stats", "event statistics of occupation states");

  auto* report = app.add_subcommand("report", "run the default suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    using toa::kernels::Backend;
    const Backend b = kernels == "scalar" ? Backend::scalar : kernels == "avx2" ? Backend::avx2 : Backend::automatic;
    if (!toa::kernels::select(b)) {
      std::cerr << "kernel backend '" << kernels << "' is not available on this machine\n";
      return 2;
    }
    toa::report::parse_profile(o.profile);

    if (*verify) {
      std::vector<std::string> ids;
      if (auto it = kVerifyTargets.find(target); it != kVerifyTargets.end()) {
        ids = it->second;
      } else if (toa::report::find_check(target)) {
        ids = {target};
      } else {
        std::cerr << "unknown verify target '" << target << "'\n";
        return 2;
      }
      return run_ids(o, ids);
    }
    if (*flow) return run_flow(o, sample_every);
    if (*fock_build) return run_fock(o, "build");
    if (*fock_compare) return run_fock(o, "compare");
    if (*fock_stats) return run_fock(o, "stats");
    if (*report) {
      std::vector<std::string> ids;
      for (const auto& s : toa::report::default_suite()) ids.push_back(s.check_id);
      return run_ids(o, ids);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
