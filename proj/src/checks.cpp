#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "toa/convergence.hpp"
#include "toa/dirac.hpp"
#include "toa/dual_flow.hpp"
#include "toa/energy_shift.hpp"
#include "toa/fock.hpp"
#include "toa/grid.hpp"
#include "toa/report.hpp"
#include "toa/spectral.hpp"

namespace toa::report {

namespace {

struct Outcome {
  double residual = 0.0;
  json residuals = json::object();
  std::optional<double> order;
  std::optional<std::pair<double, double>> order_band;
  std::vector<std::pair<std::string, bool>> conditions;
  std::vector<std::string> notes;
};

using CheckFn = std::function<Outcome(const json& params, int refinements, std::uint64_t seed)>;

struct Entry {
  CheckInfo info;
  json defaults;
  CheckFn run;
};

constexpr std::pair<double, double> kOrder2{1.7, 2.3};
constexpr std::pair<double, double> kOrder4{3.7, 4.3};

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  return v;
}

std::vector<Spin> spins_from(const json& p) {
  const std::string s = p.at("spins").get<std::string>();
  if (s == "both") return {Spin::up, Spin::down};
  if (s == "up") return {Spin::up};
  if (s == "down") return {Spin::down};
  throw std::invalid_argument("spins must be up, down or both");
}

std::vector<Species> species_from(const json& p) {
  const std::string s = p.at("species").get<std::string>();
  if (s == "both") return {Species::electron_event, Species::positron_event};
  if (s == "electron") return {Species::electron_event};
  if (s == "positron") return {Species::positron_event};
  throw std::invalid_argument("species must be electron, positron or both");
}

Spin spin_from(const json& p) {
  const std::string s = p.at("spin").get<std::string>();
  if (s == "up") return Spin::up;
  if (s == "down") return Spin::down;
  throw std::invalid_argument("spin must be up or down");
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

json study_json(const RefinementStudy& s) {
  return json{{"steps", s.steps}, {"errors", s.errors}};
}

// ---------------------------------------------------------------- dirac_core

Outcome check_clifford(const json&, int, std::uint64_t) {
  const DiracBasis basis = build_dirac_basis();
  Outcome o;
  o.residual = clifford_residual(basis);
  const ComplexMatrix a1b = anticommutator(basis.alpha1, basis.beta);
  o.residuals["alpha1_beta_anticommutator"] = a1b.max_abs();
  o.residual = std::max(o.residual, a1b.max_abs());
  return o;
}

Outcome check_spinors(const json& p, int, std::uint64_t seed) {
  const auto n = p.at("samples").get<std::size_t>();
  const double lo = p.at("range_min").get<double>();
  const double hi = p.at("range_max").get<double>();
  if (n == 0 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("spinors: need samples >= 1 and 0 < range_min < range_max");

  // m, p and x each run over the same log-spaced values; the seed fixes how
  // they are paired and the signs of p and x.
  std::vector<double> ms = logspace(lo, hi, n);
  std::vector<double> ps = ms;
  std::vector<double> xs = ms;
  std::mt19937_64 rng(seed);
  std::shuffle(ps.begin(), ps.end(), rng);
  std::shuffle(xs.begin(), xs.end(), rng);
  for (auto& v : ps) v = (rng() & 1u) ? -v : v;
  for (auto& v : xs) v = (rng() & 1u) ? -v : v;

  const auto& basis = dirac_basis();
  double norm = 0.0, particle = 0.0, dual = 0.0, ortho = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const MomentumKinematics k(ms[i], ps[i]);
    const EventKinematics e = EventKinematics::from_momentum(k, xs[i]);
    const EventKinematics mirrored(-e.x(), e.tau());
    const ComplexMatrix h = dirac_hamiltonian(k.p(), k.m());
    const ComplexMatrix h_neg = dirac_hamiltonian(-k.p(), k.m());
    const double scale = std::max(1.0, k.energy());
    const double dual_scale = std::max(1.0, e.arrival_time());
    for (Spin s : {Spin::up, Spin::down}) {
      const Spinor4 u = u_spinor(k, s);
      const Spinor4 v = v_spinor(k, s);
      const Spinor4 z = zeta_spinor(e, s);
      const Spinor4 x = xi_spinor(e, s);
      norm = std::max({norm, std::abs(inner(u, u) - 1.0), std::abs(inner(v, v) - 1.0),
                       std::abs(inner(z, z) - 1.0), std::abs(inner(x, x) - 1.0)});
      particle = std::max(particle, (apply(h, u) - cplx{k.energy()} * u).norm() / scale);
      particle = std::max(particle, (apply(h_neg, v) + cplx{k.energy()} * v).norm() / scale);
      const auto [rz, rx] = dual_eigen_residual(e, s);
      dual = std::max({dual, rz / dual_scale, rx / dual_scale});
      for (Spin s2 : {Spin::up, Spin::down}) ortho = std::max(ortho, std::abs(inner(z, xi_spinor(mirrored, s2))));
    }
  }
  (void)basis;
  Outcome o;
  o.residuals["normalisation"] = norm;
  o.residuals["mass_shell_eigen"] = particle;
  o.residuals["dual_eigen"] = dual;
  o.residuals["zeta_xi_mirror_overlap"] = ortho;
  o.residual = std::max({norm, particle, dual, ortho});
  o.notes.push_back("eigen residuals are divided by max(1, E) and max(1, T_x)");
  o.notes.push_back(std::to_string(n) + " samples, both spins");
  return o;
}

// -------------------------------------------------------------- toa_spectral

Grid1D eigen_grid(const json& p, std::size_t n) {
  return Grid1D::uniform(Axis::momentum, n, p.at("p_min").get<double>(), p.at("p_max").get<double>());
}

Outcome appendix_a_analytic(const json& p, Branch branch) {
  const Grid1D grid = eigen_grid(p, p.at("grid").get<std::size_t>());
  const auto masses = p.at("masses").get<std::vector<double>>();
  const auto positions = p.at("positions").get<std::vector<double>>();
  double worst = 0.0;
  double conjugate = 0.0;
  for (double m : masses)
    for (double x : positions)
      for (Spin s : {Spin::up, Spin::down}) {
        const ToaEigenfunction f{branch, x, s, m};
        worst = std::max(worst, appendix_a_residual(f, grid, DiffMode::analytic).max);
        conjugate = std::max(conjugate, appendix_a_residual(f, grid, DiffMode::analytic, -m).max);
      }
  Outcome o;
  o.residual = worst;
  o.residuals["eigen_relation"] = worst;
  o.residuals["conjugate_mass_operator"] = conjugate;
  o.notes.push_back("branch " + to_string(branch) + ", analytic derivatives, both spins");
  if (branch == Branch::minus) {
    o.notes.push_back("v(p,s) exp(+ipx) against the operator with mass m: " + sci(worst) +
                      "; against the operator with mass -m: " + sci(conjugate));
  }
  return o;
}

Outcome check_appendix_plus(const json& p, int, std::uint64_t) { return appendix_a_analytic(p, Branch::plus); }
Outcome check_appendix_minus(const json& p, int, std::uint64_t) { return appendix_a_analytic(p, Branch::minus); }

Outcome check_appendix_fd(const json& p, int refinements, std::uint64_t) {
  const double p_min = p.at("p_min").get<double>();
  const double p_max = p.at("p_max").get<double>();
  const auto masses = p.at("masses").get<std::vector<double>>();
  const auto positions = p.at("positions").get<std::vector<double>>();
  const Branch branch = p.at("branch").get<std::string>() == "minus" ? Branch::minus : Branch::plus;
  const double h0 = (p_max - p_min) / static_cast<double>(p.at("grid").get<std::size_t>() - 1);

  const RefinementStudy study = refinement_study(h0, refinements + 1, [&](double h) {
    const auto n = static_cast<std::size_t>(std::llround((p_max - p_min) / h)) + 1;
    const Grid1D grid = Grid1D::uniform(Axis::momentum, n, p_min, p_max);
    double worst = 0.0;
    for (double m : masses)
      for (double x : positions)
        for (Spin s : {Spin::up, Spin::down})
          worst = std::max(worst, appendix_a_residual({branch, x, s, m}, grid, DiffMode::finite_difference).max);
    return worst;
  });
  Outcome o;
  o.residual = study.errors.back();
  o.order = study.order;
  o.order_band = kOrder2;
  o.residuals["refinement"] = study_json(study);
  o.notes.push_back("branch " + to_string(branch) + ", central differences, end points skipped");
  return o;
}

Outcome check_derivative_identity(const json& p, int, std::uint64_t) {
  const DerivativeIdentityResult r = derivative_identity_check(p.at("m").get<double>(), p.at("p").get<double>());
  Outcome o;
  o.residual = r.amplitude_residual;
  o.residuals["amplitude_identity"] = r.amplitude_residual;
  o.residuals["measured_prefactor"] = r.measured_prefactor;
  o.residuals["candidate_m_over_2E2"] = r.candidate_linear;
  o.residuals["candidate_m2_over_2E2"] = r.candidate_quadratic;
  o.residuals["margin"] = r.margin;
  o.residuals["noise_floor"] = r.noise_floor;
  o.conditions.push_back({"prefactor oracle discriminates (margin >= 10 x noise floor)", r.discriminates});
  o.notes.push_back("prefactor oracle selected " + r.selected);
  if (r.degenerate) o.notes.push_back("candidates coincide at this mass");
  return o;
}

Outcome check_f_vector(const json& p, int, std::uint64_t) {
  const auto masses = p.at("masses").get<std::vector<double>>();
  const double mom = p.at("p").get<double>();
  const Spin s = spin_from(p);
  Outcome o;
  bool all = true;
  for (double m : masses) {
    const FVectorResult r = f_vector_check(m, mom, s);
    const std::string key = "m=" + sci(m);
    o.residuals[key] = json{{"printed", r.printed_norm}, {"alternate", r.alternate_norm}, {"vanishing", r.vanishing}};
    o.residual = std::max(o.residual, std::min(r.printed_norm, r.alternate_norm));
    all = all && r.pass;
    o.notes.push_back(key + ": vanishing assembly " + r.vanishing + (r.degenerate ? " (assemblies coincide)" : ""));
  }
  o.conditions.push_back({"exactly one assembly vanishes, or both when they coincide", all});
  return o;
}

// ------------------------------------------------------------------ grid_ops

Outcome check_commutators(const json& p, int refinements, std::uint64_t) {
  const double m = p.at("m").get<double>();
  const double tau = p.at("tau").get<double>();
  const double lo = p.at("lower").get<double>();
  const double hi = p.at("upper").get<double>();
  const double h0 = p.at("step").get<double>();
  const double centre = 0.5 * (lo + hi);
  const double half_width = 0.3 * (hi - lo);
  const Spinor4 probe_spinor{{cplx{1.0}, cplx{0.5, 0.25}, cplx{-0.25}, cplx{0.0, 0.75}}};

  auto grid_at = [&](Axis axis, double h) {
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
    return Grid1D::uniform(axis, n, lo, hi);
  };
  const RefinementStudy particle = refinement_study(h0, refinements + 1, [&](double h) {
    const Grid1D g = grid_at(Axis::momentum, h);
    return commutator_residual(build_H_momentum(g, m), build_T_dirac_momentum(g, m), cplx{0.0, 1.0},
                               bump_probe(g, centre, half_width, probe_spinor));
  });
  const RefinementStudy dual = refinement_study(h0, refinements + 1, [&](double h) {
    const Grid1D g = grid_at(Axis::position, h);
    return commutator_residual(build_T_dual_position(g, tau), build_H_dual_position(g, tau), cplx{0.0, -1.0},
                               bump_probe(g, centre, half_width, probe_spinor));
  });
  Outcome o;
  o.residual = std::max(particle.errors.back(), dual.errors.back());
  o.order = std::min(particle.order, dual.order);
  o.order_band = kOrder2;
  o.residuals["H_T_dirac"] = study_json(particle);
  o.residuals["H_T_dirac_order"] = particle.order;
  o.residuals["T_dual_H_dual"] = study_json(dual);
  o.residuals["T_dual_H_dual_order"] = dual.order;
  o.conditions.push_back({"both orders in band", particle.order >= kOrder2.first && particle.order <= kOrder2.second &&
                                                     dual.order >= kOrder2.first && dual.order <= kOrder2.second});
  o.notes.push_back("interior-supported bump probes; boundary rows never touch the probe");
  return o;
}

// -------------------------------------------------------------- energy_shift

Outcome check_energy_shift(const json& p, int refinements, std::uint64_t) {
  const double tau = p.at("tau").get<double>();
  const double x = p.at("x").get<double>();
  const Spin s = spin_from(p);
  const double delta = p.at("delta_eps").get<double>();
  const double eps_span = p.at("eps_span").get<double>();
  const double p_min = p.at("p_min").get<double>();
  const double p_max = p.at("p_max").get<double>();
  const double h0 = p.at("step").get<double>();
  const EventKinematics e(x, tau);

  // PDE residual of a superposition of both branches under joint refinement.
  const RefinementStudy pde = refinement_study(h0, refinements + 1, [&](double h) {
    const auto ne = static_cast<std::size_t>(std::llround(eps_span / h)) + 1;
    const auto np = static_cast<std::size_t>(std::llround((p_max - p_min) / h)) + 1;
    const Grid1D eg = Grid1D::uniform(Axis::energy, ne, 0.0, eps_span);
    const Grid1D pg = Grid1D::uniform(Axis::momentum, np, p_min, p_max);
    const ShiftField field = sample_elementary(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, s, eg, pg) +
                             cplx{0.5, -0.25} * sample_elementary(ShiftForm::c_number_tau, ShiftBranch::plus_Tx, e, s, eg, pg);
    return pde_residual_16(field, tau);
  });

  // Eigen-probe phase: zeta(x_j) on a position grid is an eigenvector of the
  // block-diagonal generator with eigenvalue -T_{x_j}.
  const Grid1D xg = Grid1D::uniform(Axis::position, p.at("phase_points").get<std::size_t>(), 0.5 * x, 2.0 * x);
  const GridOperator t_pos = build_T_dual_position(xg, tau);
  const GridSpinorField eig = GridSpinorField::sample(xg, [&](double xx) { return zeta_spinor(EventKinematics(xx, tau), s); });
  const GridSpinorField evolved = shift_evolve(eig, t_pos, delta);
  double phase = 0.0;
  for (std::size_t j = 0; j < xg.size(); ++j) {
    const double t = EventKinematics(xg[j], tau).arrival_time();
    phase = std::max(phase, max_abs_diff(evolved.values[j], std::polar(1.0, -t * delta) * eig.values[j]));
  }

  // Semigroup on the momentum-space generator with a derivative part.
  const Grid1D pg = Grid1D::uniform(Axis::momentum, p.at("semigroup_points").get<std::size_t>(), p_min, p_max);
  const GridOperator t_mom = build_T_dual_momentum(pg, tau);
  const GridSpinorField start = bump_probe(pg, 0.5 * (p_min + p_max), 0.3 * (p_max - p_min), zeta_spinor(e, s));
  const GridSpinorField two_step = shift_evolve(shift_evolve(start, t_mom, 0.4 * delta), t_mom, 0.6 * delta);
  const GridSpinorField one_step = shift_evolve(start, t_mom, delta);
  double semigroup = 0.0;
  for (std::size_t j = 0; j < pg.size(); ++j) semigroup = std::max(semigroup, max_abs_diff(two_step.values[j], one_step.values[j]));
  const GridSpinorField identity = shift_evolve(start, t_mom, 0.0);
  double zero_step = 0.0;
  for (std::size_t j = 0; j < pg.size(); ++j) zero_step = std::max(zero_step, max_abs_diff(identity.values[j], start.values[j]));

  Outcome o;
  o.residual = std::max({phase, semigroup, zero_step});
  o.residuals["eigen_phase"] = phase;
  o.residuals["semigroup"] = semigroup;
  o.residuals["zero_step"] = zero_step;
  o.residuals["pde"] = study_json(pde);
  o.order = pde.order;
  o.order_band = kOrder2;
  o.notes.push_back("elementary solutions follow the branch labels minus_Tx / plus_Tx");
  o.notes.push_back("conservation law certified through the energy-shift PDE residual");
  return o;
}

Outcome check_action(const json& p, int, std::uint64_t) {
  const double tau = p.at("tau").get<double>();
  const double x = p.at("x").get<double>();
  const Spin s = spin_from(p);
  const auto ne = p.at("eps_points").get<std::size_t>();
  const auto np = p.at("grid").get<std::size_t>();
  const Grid1D eg = Grid1D::uniform(Axis::energy, ne, 0.0, p.at("eps_span").get<double>());
  const Grid1D pg = Grid1D::uniform(Axis::momentum, np, p.at("p_min").get<double>(), p.at("p_max").get<double>());
  const EventKinematics e(x, tau);

  // Conserved charge of a sampled elementary solution.
  const ShiftField field = sample_elementary(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, s, eg, pg);
  const ActionDensities d = action_and_densities(field, tau);
  const auto [cmin, cmax] = std::minmax_element(d.charge.begin(), d.charge.end());
  const double drift = *cmax - *cmin;
  const double expected = -e.arrival_time() * d.mode_norm.front();

  // Perturbation of a discretely on-shell field by delta * bump.
  const ShiftField onshell = lattice_elementary(ShiftBranch::minus_Tx, e, s, eg, pg);
  const double ec = 0.5 * (eg.lower() + eg.upper());
  const double pc = 0.5 * (pg.lower() + pg.upper());
  const double we = 0.3 * (eg.upper() - eg.lower());
  const double wp = 0.3 * (pg.upper() - pg.lower());
  const ShiftField eta = ShiftField::sample(eg, pg, [&](double eps, double mom) {
    const double r2 = std::pow((eps - ec) / we, 2) + std::pow((mom - pc) / wp, 2);
    Spinor4 v;
    if (r2 < 1.0) v[0] = std::exp(1.0 - 1.0 / (1.0 - r2));
    return v;
  });
  const cplx a0 = action_and_densities(onshell, tau).action;
  const auto deltas = p.at("deltas").get<std::vector<double>>();
  std::vector<double> changes;
  for (double dl : deltas) changes.push_back(std::abs(action_and_densities(onshell + cplx{dl} * eta, tau).action - a0));
  const double exponent = fit_order(deltas, changes);

  Outcome o;
  o.residual = drift;
  o.order = exponent;
  o.order_band = {1.8, 2.2};
  o.residuals["charge_drift"] = drift;
  o.residuals["charge"] = *cmin;
  o.residuals["minus_T_x_times_norm"] = expected;
  o.residuals["conjugate_momentum"] = d.conjugate_momentum_residual;
  o.residuals["deltas"] = deltas;
  o.residuals["action_changes"] = changes;
  o.conditions.push_back({"conjugate momentum equals i phi^dagger", d.conjugate_momentum_residual <= 1e-14});
  o.notes.push_back("order field: measured exponent of |A(delta) - A(0)|");
  return o;
}

// ------------------------------------------------------------ dual_mechanics

Outcome check_flow(const json& p, int refinements, std::uint64_t) {
  const double m = p.at("m").get<double>();
  const DualFlowState start{0.0, {p.at("q0").get<double>()}, {p.at("k0").get<double>()}};
  const double span = p.at("eps_span").get<double>();
  const double h = p.at("step").get<double>();
  const TimeFunction t = arrival_time_function(m);

  const FlowResult fine = integrate_flow(start, t, span, h, 1000);
  const FlowResult fd = integrate_flow(start, t.without_analytic_gradients(), span, h, 1000);
  double gradient_gap = 0.0;
  for (std::size_t i = 0; i < fine.trajectory.size(); ++i) {
    gradient_gap = std::max({gradient_gap, std::abs(fine.trajectory[i].q[0] - fd.trajectory[i].q[0]),
                             std::abs(fine.trajectory[i].k[0] - fd.trajectory[i].k[0])});
  }
  const RefinementStudy study = refinement_study(p.at("order_step").get<double>(), refinements + 1, [&](double hh) {
    return integrate_flow(start, t, span, hh, 1u << 30).max_abs_drift;
  });

  Outcome o;
  o.residual = fine.max_rel_drift;
  o.order = study.order;
  o.order_band = kOrder4;
  o.residuals["t0"] = fine.t0;
  o.residuals["max_abs_drift"] = fine.max_abs_drift;
  o.residuals["fd_gradient_gap"] = gradient_gap;
  o.residuals["refinement"] = study_json(study);
  o.conditions.push_back({"central-difference gradients reproduce the trajectory to 1e-6", gradient_gap <= 1e-6});
  o.notes.push_back("step order measured on coarse steps where the drift is above rounding");
  return o;
}

// --------------------------------------------------------------- fock_events

ModeSet lattice_modes(const json& p, const Grid1D& pg) {
  const auto ks = p.at("lattice_k").get<std::vector<int>>();
  const auto spins = spins_from(p);
  const auto species = species_from(p);
  return ModeSet::conjugate_lattice(pg, ks, p.value("offset", 0.0), spins, species, p.at("tau").get<double>());
}

Grid1D fock_grid(const json& p, const std::string& key_n, const std::string& key_dp) {
  return Grid1D::symmetric(Axis::momentum, p.at(key_n).get<std::size_t>(), p.at(key_dp).get<double>());
}

Outcome check_fock_car(const json& p, int, std::uint64_t) {
  const Grid1D pg = fock_grid(p, "lattice_n", "dp");
  const ModeSet modes = lattice_modes(p, pg);
  const LadderOps ops = build_ladder_ops(modes);
  Outcome o;
  o.residual = car_residual(ops);
  const ModeSet single({ModeLabel{}});
  const LadderOps one = build_ladder_ops(single);
  const FockOperator expected(2, 2, {0.0, 1.0, 0.0, 0.0});
  o.residuals["modes"] = modes.size();
  o.residuals["single_mode_matrix"] = max_abs_diff(one.annihilator[0], expected);
  o.residual = std::max(o.residual, max_abs_diff(one.annihilator[0], expected));
  return o;
}

Outcome check_fock_reconstruction(const json& p, int, std::uint64_t) {
  const Grid1D pg = fock_grid(p, "lattice_n", "dp");
  const double tau = p.at("tau").get<double>();
  const double unit = 2.0 * std::numbers::pi / (static_cast<double>(pg.size()) * pg.spacing());
  const int k_pair = p.at("pair_k").get<int>();
  const ModeSet pair({{Species::electron_event, k_pair * unit, Spin::up, tau},
                      {Species::positron_event, k_pair * unit, Spin::up, tau}});
  const ModeSet eight = lattice_modes(p, pg);

  Outcome o;
  std::vector<int> signs;
  for (const auto& [name, modes] : {std::pair<std::string, const ModeSet&>{"pair", pair}, {"lattice", eight}}) {
    const QuadraticFormResult q = quadratic_form_T(modes, pg);
    const FockOperator t35 = build_T_quantized(modes);
    // Vacuum value: minus the sum of T_x over distinct (x, s).
    std::vector<std::pair<double, Spin>> sites;
    double zero_point = 0.0;
    for (const auto& m : modes.labels()) {
      if (std::find(sites.begin(), sites.end(), std::pair{m.x, m.s}) != sites.end()) continue;
      sites.push_back({m.x, m.s});
      zero_point -= std::sqrt(m.x * m.x + m.tau * m.tau);
    }
    const double vacuum_gap = std::abs(t35(0, 0).real() - zero_point);
    o.residuals[name] = json{{"modes", modes.size()},
                             {"sign", q.sign},
                             {"deviation", q.deviation},
                             {"deviation_opposite_sign", q.deviation_opposite},
                             {"vacuum", t35(0, 0).real()},
                             {"vacuum_gap", vacuum_gap}};
    o.residual = std::max(o.residual, q.deviation);
    o.conditions.push_back({name + ": vacuum value is minus the sum of T_x", vacuum_gap == 0.0});
    signs.push_back(q.sign);
  }
  const bool consistent = std::adjacent_find(signs.begin(), signs.end(), std::not_equal_to<>()) == signs.end();
  o.conditions.push_back({"consistent sigma across mode sets", consistent});
  o.notes.push_back("sigma = " + std::to_string(signs.front()) + (consistent ? "" : " (inconsistent across sets)"));
  return o;
}

Outcome check_field_car(const json& p, int, std::uint64_t) {
  const Grid1D pg = fock_grid(p, "lattice_n", "dp");
  const ModeSet modes = lattice_modes(p, pg);
  const FieldCarResult r = field_car_check(modes, pg);
  const ModeSet single({ModeLabel{Species::electron_event, modes[0].x, Spin::up, modes[0].tau}});
  const FieldCarResult partial = field_car_check(single, pg);
  Outcome o;
  o.residual = std::max({r.residual, r.phi_phi_residual});
  o.residuals["phi_pi"] = r.residual;
  o.residuals["phi_phi"] = r.phi_phi_residual;
  o.residuals["pi_pi"] = r.pi_pi_residual;
  o.residuals["single_mode_phi_pi"] = partial.residual;
  o.conditions.push_back({"mode set is a complete basis", r.complete});
  o.notes.push_back(std::to_string(modes.size()) + " modes: " + r.label);
  o.notes.push_back("single mode: " + partial.label);
  return o;
}

Outcome check_fock_stats(const json& p, int, std::uint64_t seed) {
  const Grid1D pg = fock_grid(p, "lattice_n", "dp");
  const ModeSet modes = lattice_modes(p, pg);
  const FockOperator t = build_T_quantized(modes);
  const double zero_point = t(0, 0).real();
  const double tx = modes[0].arrival_time();

  const EventStatistics vac = event_statistics(basis_state(modes, {}), t);
  std::vector<cplx> mixed(modes.fock_dimension());
  mixed[0] = 1.0 / std::sqrt(2.0);
  mixed[1] = 1.0 / std::sqrt(2.0);
  const EventStatistics two = event_statistics(mixed, t);

  // Random occupation-basis states are eigenstates of the diagonal T.
  std::mt19937_64 rng(seed);
  double basis_variance = 0.0;
  for (int trial = 0; trial < 16; ++trial) {
    std::vector<std::size_t> occ;
    for (std::size_t j = 0; j < modes.size(); ++j)
      if (rng() & 1u) occ.push_back(j);
    basis_variance = std::max(basis_variance, event_statistics(basis_state(modes, occ), t).variance);
  }

  // Spectrum against the enumeration sum (n_a + n_b - 1) T_x.
  double spectrum = 0.0;
  for (std::size_t state = 0; state < modes.fock_dimension(); ++state) {
    double v = zero_point;
    for (std::size_t j = 0; j < modes.size(); ++j)
      if (state & (std::size_t{1} << j)) v += modes[j].arrival_time();
    spectrum = std::max(spectrum, std::abs(t(state, state).real() - v));
  }

  Outcome o;
  o.residuals["vacuum_mean_gap"] = std::abs(vac.mean - zero_point);
  o.residuals["vacuum_variance"] = vac.variance;
  o.residuals["superposition_mean_gap"] = std::abs(two.mean - (zero_point + 0.5 * tx));
  o.residuals["superposition_variance_gap"] = std::abs(two.variance - 0.25 * tx * tx);
  o.residuals["basis_state_variance"] = basis_variance;
  o.residuals["spectrum_gap"] = spectrum;
  o.residuals["diagonal"] = t.is_diagonal();
  for (const auto& [k, v] : o.residuals.items())
    if (v.is_number()) o.residual = std::max(o.residual, v.get<double>());
  o.conditions.push_back({"T is diagonal in the occupation basis", t.is_diagonal()});
  return o;
}

json fock_defaults(std::vector<int> ks, std::size_t n, double offset) {
  return json{{"lattice_k", ks}, {"lattice_n", n}, {"dp", 0.5}, {"offset", offset},
              {"spins", "both"}, {"species", "both"}, {"tau", 0.75}};
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    const json appendix{{"p_min", 0.5}, {"p_max", 4.0}, {"grid", 201},
                        {"masses", {0.5, 1.0, 2.0}}, {"positions", {0.5, 1.0, 2.0}}};
    json fd = appendix;
    fd["grid"] = 36;
    fd["branch"] = "plus";
    json reconstruction = fock_defaults({1, 2}, 8, 0.0);
    reconstruction["pair_k"] = 1;
    std::vector<Entry> t;
    t.push_back({{"clifford", "gamma algebra of the Dirac matrices (standard representation)",
                  "{gamma^mu, gamma^nu} = 2 g^{mu nu} I and {alpha_1, beta} = 0", 0.0},
                 json::object(), check_clifford});
    t.push_back({{"spinors", "Dirac spinors u, v and event spinors zeta, xi",
                  "normalisation, mass-shell and event-shell eigen relations, zeta/xi mirror orthogonality", 1e-12},
                 json{{"samples", 100}, {"range_min", 1e-2}, {"range_max", 1e2}}, check_spinors});
    t.push_back({{"appendix-a-plus", "Appendix A: eigen relation of the arrival-time operator, u exp(-ipx) branch",
                  "pointwise T phi - lambda phi with analytic derivatives", 1e-11},
                 appendix, check_appendix_plus});
    t.push_back({{"appendix-a-minus", "Appendix A: eigen relation of the arrival-time operator, v exp(+ipx) branch",
                  "pointwise T phi - lambda phi with analytic derivatives", 1e-11},
                 appendix, check_appendix_minus});
    t.push_back({{"appendix-a-fd", "Appendix A: eigen relation under central differences",
                  "finite-difference residual and its refinement order", 1e-2},
                 fd, check_appendix_fd});
    t.push_back({{"derivative-identity", "Appendix A: derivative identities of the amplitude and of u(p,s)",
                  "amplitude identity against Richardson differences; du/dp prefactor oracle", 1e-9},
                 json{{"m", 2.0}, {"p", 1.0}}, check_derivative_identity});
    t.push_back({{"f-vector", "Appendix A: cancellation of the F vector",
                  "norm of the printed and alternate F assemblies", kFVectorTolerance},
                 json{{"masses", {1.0, 2.0}}, {"p", 1.0}, {"spin", "up"}}, check_f_vector});
    t.push_back({{"commutators", "canonical pairs [H, T] = i and [T_dual, H_dual] = -i",
                  "interior commutator residuals and their refinement order", 1e-2},
                 json{{"m", 1.0}, {"tau", 1.0}, {"lower", 0.5}, {"upper", 4.5}, {"step", 0.1}}, check_commutators});
    t.push_back({{"energy-shift", "energy-shift equation and its elementary solutions",
                  "eigen phase and semigroup of exp(iT eps); PDE residual order", 1e-10},
                 json{{"tau", 0.5}, {"x", 1.0}, {"spin", "up"}, {"delta_eps", 0.7}, {"eps_span", 2.0},
                      {"p_min", 0.5}, {"p_max", 2.5}, {"step", 0.04}, {"phase_points", 16}, {"semigroup_points", 41}},
                 check_energy_shift});
    t.push_back({{"action", "action, Lagrange density and the conserved time-function charge",
                  "charge constancy in eps; quadratic response of the action", 1e-6},
                 json{{"tau", 0.5}, {"x", 1.0}, {"spin", "up"}, {"eps_points", 81}, {"eps_span", 2.0}, {"grid", 81},
                      {"p_min", 0.5}, {"p_max", 2.5}, {"deltas", {1e-1, 1e-2, 1e-3, 1e-4}}},
                 check_action});
    t.push_back({{"flow", "dual Hamilton equations in the energy parameter",
                  "relative drift of T along the RK4 flow; step order", 1e-8},
                 json{{"m", 1.0}, {"q0", 1.0}, {"k0", 1.0}, {"eps_span", 10.0}, {"step", 1e-3}, {"order_step", 0.2}},
                 check_flow});
    t.push_back({{"fock-car", "anticommutation relations of the event ladder operators",
                  "exhaustive {c_i, c_j^dagger} and {c_i, c_j} sweep", 0.0},
                 fock_defaults({1, 2}, 8, 0.0), check_fock_car});
    t.push_back({{"fock-reconstruction", "field-quantized arrival time from the conserved charge",
                  "quadratic form against the number-operator sum; zero-point value", 1e-10},
                 reconstruction, check_fock_reconstruction});
    t.push_back({{"field-car", "anticommutator of the field and its conjugate momentum",
                  "discrete delta on a complete conjugate lattice", 1e-12},
                 fock_defaults({-1, 0}, 2, 0.5), check_field_car});
    t.push_back({{"fock-stats", "zero-point statistics of the quantized arrival time",
                  "vacuum and superposition mean and variance; spectrum enumeration", 1e-12},
                 fock_defaults({1, 2}, 8, 0.0), check_fock_stats});
    return t;
  }();
  return table;
}

const Entry* find_entry(const std::string& id) {
  for (const auto& e : entries())
    if (e.info.id == id) return &e;
  return nullptr;
}

}  // namespace

const std::vector<CheckInfo>& registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const CheckInfo* find_check(const std::string& id) {
  for (const auto& info : registry())
    if (info.id == id) return &info;
  return nullptr;
}

VerificationReport run_check(const CheckSpec& spec, const RunContext& ctx) {
  const Entry* entry = find_entry(spec.check_id);
  if (!entry) throw UnknownCheck("unknown check_id '" + spec.check_id + "'");

  VerificationReport r;
  r.check_id = spec.check_id;
  r.anchor = entry->info.anchor;
  r.parameters = entry->defaults;
  for (const auto& [key, value] : spec.parameters.items())
    if (r.parameters.contains(key)) r.parameters[key] = value;
  r.parameters["refinements"] = spec.refinements;
  r.tolerance = spec.tolerance.value_or(entry->info.default_tolerance);
  if (ctx.profile == ToleranceProfile::strict) r.tolerance *= 0.1;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (spec.tolerance && !(*spec.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (spec.refinements < 1) throw std::invalid_argument("refinements must be >= 1");
    Outcome o = entry->run(r.parameters, spec.refinements, ctx.seed);
    r.residual = o.residual;
    r.residuals = std::move(o.residuals);
    r.order = o.order;
    r.order_band = o.order_band;
    r.notes = std::move(o.notes);
    bool pass = std::isfinite(o.residual) && o.residual <= r.tolerance;
    if (o.order_band) {
      const bool in_band = o.order && *o.order >= o.order_band->first && *o.order <= o.order_band->second;
      pass = pass && in_band;
    }
    for (const auto& [name, ok] : o.conditions) {
      pass = pass && ok;
      r.notes.push_back(std::string(ok ? "holds: " : "violated: ") + name);
    }
    r.pass = pass;
  } catch (const std::exception& ex) {
    r.residual.reset();
    r.pass = false;
    r.notes.push_back(std::string("error: ") + ex.what());
  }
  r.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckSpec> default_suite() {
  std::vector<CheckSpec> specs;
  for (const auto& e : entries()) specs.push_back({e.info.id, json::object(), std::nullopt, 3});
  return specs;
}

}  // namespace toa::report
