#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "toa/convergence.hpp"
#include "toa/energy_shift.hpp"

using namespace toa;

namespace {

Grid1D eps_grid(std::size_t n, double span) { return Grid1D::uniform(Axis::energy, n, 0.0, span); }
Grid1D mom_grid(std::size_t n, double lo, double hi) { return Grid1D::uniform(Axis::momentum, n, lo, hi); }

}  // namespace

TEST_CASE("elementary solution at tau=0, x=1, eps=1, p=1") {
  const EventKinematics e(1.0, 0.0);
  const Spinor4 v = elementary_solution(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, Spin::up, 1.0, 1.0);
  const cplx phase = std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), -2.0) / std::sqrt(2.0);
  CHECK(std::abs(v[0] - phase) <= 1e-16);
  CHECK(std::abs(v[1]) == 0.0);
  CHECK(std::abs(v[2] - phase) <= 1e-16);
  CHECK(std::abs(v[3]) == 0.0);
}

TEST_CASE("elementary solutions: eps = 0 phase and eps-independent modulus") {
  const EventKinematics e(1.4, 0.6);
  for (ShiftBranch b : {ShiftBranch::minus_Tx, ShiftBranch::plus_Tx}) {
    const Spinor4 at0 = elementary_solution(ShiftForm::c_number_tau, b, e, Spin::down, 0.0, 0.9);
    const double sign = b == ShiftBranch::minus_Tx ? -1.0 : 1.0;
    const Spinor4 w = b == ShiftBranch::minus_Tx ? zeta_spinor(e, Spin::down) : xi_spinor(e, Spin::down);
    CHECK(max_abs_diff(at0, std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), sign * 0.9 * 1.4) * w) <= 1e-16);
    for (double eps : {0.3, 2.0, 17.0})
      CHECK(elementary_solution(ShiftForm::c_number_tau, b, e, Spin::down, eps, 0.9).norm() == doctest::Approx(at0.norm()));
  }
  // The operator-form amplitude is the constant (x^2/T^2)^{1/4}.
  const double ratio = elementary_solution(ShiftForm::operator_tau, ShiftBranch::minus_Tx, e, Spin::up, 0.1, 0.2).norm() /
                       elementary_solution(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, Spin::up, 0.1, 0.2).norm();
  CHECK(ratio == doctest::Approx(std::sqrt(1.4 / e.arrival_time())));
}

TEST_CASE("PDE residual: zero field, 201x201 sample and halving") {
  const double tau = 0.5;
  const EventKinematics e(1.0, tau);
  auto residual = [&](std::size_t n) {
    const ShiftField f = sample_elementary(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, Spin::up, eps_grid(n, 4.0),
                                           mom_grid(n, 0.5, 4.5));
    return pde_residual_16(f, tau);
  };
  const double r = residual(201);
  CHECK(r <= 5e-3);
  CHECK(r / residual(401) == doctest::Approx(4.0).epsilon(0.1));
  const ShiftField zero(eps_grid(5, 1.0), mom_grid(5, 1.0, 2.0));
  CHECK(pde_residual_16(zero, tau) == 0.0);
  const ShiftField tiny(eps_grid(2, 1.0), mom_grid(5, 1.0, 2.0));
  CHECK_THROWS_AS(pde_residual_16(tiny, tau), std::invalid_argument);
}

TEST_CASE("superposition keeps second-order convergence") {
  const double tau = 0.3;
  const EventKinematics e(0.8, tau);
  const RefinementStudy st = refinement_study(0.05, 3, [&](double h) {
    const auto n = static_cast<std::size_t>(std::llround(2.0 / h)) + 1;
    const Grid1D eg = eps_grid(n, 2.0);
    const Grid1D pg = mom_grid(n, 1.0, 3.0);
    return pde_residual_16(sample_elementary(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, Spin::up, eg, pg) +
                               cplx{0.0, 2.0} * sample_elementary(ShiftForm::c_number_tau, ShiftBranch::plus_Tx, e, Spin::down, eg, pg),
                           tau);
  });
  CHECK(st.order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("lattice elementary solution solves the discrete equation") {
  const EventKinematics e(1.2, 0.7);
  for (ShiftBranch b : {ShiftBranch::minus_Tx, ShiftBranch::plus_Tx}) {
    const ShiftField f = lattice_elementary(b, e, Spin::up, eps_grid(41, 2.0), mom_grid(41, 0.5, 2.5));
    CHECK(pde_residual_16(f, 0.7) <= 1e-13);
  }
  CHECK_THROWS_AS(lattice_elementary(ShiftBranch::minus_Tx, EventKinematics(100.0, 0.0), Spin::up, eps_grid(5, 1.0),
                                     mom_grid(5, 0.5, 2.5)),
                  std::domain_error);
}

TEST_CASE("matrix exponential") {
  CHECK(max_abs_diff(matrix_exponential(ComplexMatrix(3, 3)), ComplexMatrix::identity(3)) == 0.0);
  const double t = 7.3;
  const ComplexMatrix rot = matrix_exponential(ComplexMatrix(2, 2, {0.0, -t, t, 0.0}));
  CHECK(max_abs_diff(rot, ComplexMatrix(2, 2, {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)})) <= 1e-13);
  const std::vector<cplx> d{cplx{0.0, 3.0}, cplx{-1.0}, cplx{2.0, -4.0}};
  const ComplexMatrix ed = matrix_exponential(ComplexMatrix::diagonal(d));
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(ed(i, i) - std::exp(d[i])) <= 1e-13 * std::abs(std::exp(d[i])));
  ComplexMatrix bad(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(matrix_exponential(bad), std::invalid_argument);
  CHECK_THROWS_AS(matrix_exponential(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("shift evolution: identity, eigen phase and semigroup") {
  const double tau = 0.4;
  const Grid1D xg = Grid1D::uniform(Axis::position, 12, 0.5, 2.0);
  const GridOperator t = build_T_dual_position(xg, tau);
  const GridSpinorField z = GridSpinorField::sample(xg, [&](double x) { return zeta_spinor(EventKinematics(x, tau), Spin::down); });
  const GridSpinorField same = shift_evolve(z, t, 0.0);
  for (std::size_t j = 0; j < xg.size(); ++j) CHECK(max_abs_diff(same.values[j], z.values[j]) == 0.0);
  const double d = 1.3;
  const GridSpinorField out = shift_evolve(z, t, d);
  for (std::size_t j = 0; j < xg.size(); ++j) {
    const double tx = std::hypot(xg[j], tau);
    CHECK(max_abs_diff(out.values[j], std::polar(1.0, -tx * d) * z.values[j]) <= 1e-10);
  }

  const Grid1D pg = Grid1D::uniform(Axis::momentum, 31, 0.5, 2.0);
  const GridOperator tm = build_T_dual_momentum(pg, tau);
  const GridSpinorField start = bump_probe(pg, 1.25, 0.5, zeta_spinor(EventKinematics(1.0, tau), Spin::up));
  const GridSpinorField a = shift_evolve(shift_evolve(start, tm, 0.25), tm, 0.5);
  const GridSpinorField b = shift_evolve(start, tm, 0.75);
  for (std::size_t j = 0; j < pg.size(); ++j) CHECK(max_abs_diff(a.values[j], b.values[j]) <= 1e-10);
  CHECK_THROWS_AS(shift_evolve(start, t, 0.1), std::invalid_argument);
}

TEST_CASE("action machinery") {
  const double tau = 0.5;
  const EventKinematics e(1.0, tau);
  const Grid1D eg = eps_grid(61, 2.0);
  const Grid1D pg = mom_grid(61, 0.5, 2.5);

  SUBCASE("zero field") {
    const ActionDensities d = action_and_densities(ShiftField(eg, pg), tau);
    CHECK(d.action == cplx{});
    for (const auto& g : d.lagrange) CHECK(g == cplx{});
    for (const auto& t : d.time_density) CHECK(t == cplx{});
  }
  SUBCASE("charge of an elementary solution") {
    const ShiftField f = sample_elementary(ShiftForm::c_number_tau, ShiftBranch::minus_Tx, e, Spin::up, eg, pg);
    const ActionDensities d = action_and_densities(f, tau);
    CHECK(d.eps.size() == eg.size() - 2);
    // interior trapezoid over p in [p_1, p_{n-2}] of |phi|^2 = 1/2pi
    const double length = pg[pg.size() - 2] - pg[1];
    CHECK(d.mode_norm.front() == doctest::Approx(length / (2.0 * std::numbers::pi)).epsilon(1e-13));
    for (double c : d.charge) {
      CHECK(std::abs(c - d.charge.front()) <= 1e-6);
      CHECK(c == doctest::Approx(-e.arrival_time() * d.mode_norm.front()).epsilon(1e-3));
    }
    CHECK(d.conjugate_momentum_residual <= 1e-15);
  }
  SUBCASE("quadratic response around an on-shell field") {
    const ShiftField f = lattice_elementary(ShiftBranch::plus_Tx, e, Spin::down, eg, pg);
    const ShiftField eta = ShiftField::sample(eg, pg, [&](double eps, double p) {
      const double r2 = std::pow((eps - 1.0) / 0.6, 2) + std::pow((p - 1.5) / 0.6, 2);
      Spinor4 v;
      if (r2 < 1.0) v[1] = std::exp(1.0 - 1.0 / (1.0 - r2));
      return v;
    });
    const cplx a0 = action_and_densities(f, tau).action;
    std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> changes;
    for (double dl : deltas) changes.push_back(std::abs(action_and_densities(f + cplx{dl} * eta, tau).action - a0));
    CHECK(fit_order(deltas, changes) == doctest::Approx(2.0).epsilon(0.05));
  }
}
