#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toa/grid.hpp"

using namespace toa;

namespace {

const Spinor4 kProbeSpinor{{cplx{1.0}, cplx{0.0, 0.5}, cplx{-0.5}, cplx{0.25, 0.25}}};

Grid1D grid(Axis axis, double lo, double hi, double h) {
  return Grid1D::uniform(axis, static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1, lo, hi);
}

// max interior |D f - f'| for f = exp(-i p x0) on [lo, hi].
double plane_wave_derivative_error(double x0, double h) {
  const Grid1D g = grid(Axis::momentum, 0.5, 1.5, h);
  const ComplexMatrix d = difference_matrix(g);
  std::vector<cplx> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::polar(1.0, -g[j] * x0);
  const auto df = matvec(d, f);
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < g.size(); ++j)
    worst = std::max(worst, std::abs(df[j] - cplx{0.0, -x0} * f[j]));
  return worst;
}

}  // namespace

TEST_CASE("grid origin policy") {
  CHECK_THROWS_AS(Grid1D::uniform(Axis::momentum, 3, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::uniform(Axis::momentum, 4, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::uniform(Axis::position, 4, -1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_NOTHROW(Grid1D::uniform(Axis::position, 4, -1.0, 1.0, 0.3));
  CHECK_NOTHROW(Grid1D::uniform(Axis::energy, 3, -1.0, 1.0));
  CHECK_THROWS_AS(Grid1D::uniform(Axis::momentum, 5, 1.0, 1.0), std::invalid_argument);
  const Grid1D s = Grid1D::symmetric(Axis::momentum, 4, 0.5);
  CHECK(s[0] == doctest::Approx(-0.75));
  CHECK(s[3] == doctest::Approx(0.75));
  CHECK(s.gap_neighbours().size() == 2);
  CHECK_THROWS_AS(derivative_op(Grid1D::symmetric(Axis::momentum, 2, 1.0)), std::invalid_argument);
}

TEST_CASE("difference matrix is exact on quadratics, boundary rows included") {
  const Grid1D g = grid(Axis::position, 0.3, 2.3, 0.1);
  const ComplexMatrix d = difference_matrix(g);
  std::vector<cplx> f(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) f[j] = 3.0 * g[j] * g[j] - g[j] + 2.0;
  const auto df = matvec(d, f);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(df[j] - (6.0 * g[j] - 1.0)) <= 1e-12);
}

TEST_CASE("plane-wave derivative error matches the Taylor remainder") {
  // |x|^3 h^2 / 6 for x = 1, h = 0.01
  const double e = plane_wave_derivative_error(1.0, 0.01);
  CHECK(e == doctest::Approx(1.0 / 6.0 * 1e-4).epsilon(0.05));
  const double ratio = e / plane_wave_derivative_error(1.0, 0.005);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("Weyl symmetrisation") {
  const Grid1D g = grid(Axis::position, 0.5, 2.5, 0.1);
  const GridOperator x = coordinate_op(g);
  const GridOperator p = derivative_op(g);
  CHECK(max_abs_diff(weyl_symmetrize(x, p).matrix, weyl_symmetrize(p, x).matrix) == 0.0);
  CHECK(max_abs_diff(weyl_symmetrize(p, p).matrix, (p * p).matrix) <= 1e-12);
  const GridOperator xinv = inverse_coordinate_op(g);
  const GridOperator prod = weyl_symmetrize(x, xinv);
  CHECK(prod.matrix.is_diagonal());
  CHECK(max_abs_diff(prod.matrix, ComplexMatrix::identity(prod.dimension())) <= 1e-15);
  CHECK(hermiticity_defect(weyl_symmetrize(x, p), 2) <= 1e-12);
}

TEST_CASE("Hamiltonian is block diagonal and acts pointwise") {
  const double m = 1.3;
  const Grid1D g = grid(Axis::momentum, 0.5, 3.0, 0.05);
  const GridOperator h = build_H_momentum(g, m);
  CHECK(hermiticity_defect(h, 0) == 0.0);
  const GridSpinorField u = GridSpinorField::sample(g, [&](double p) { return u_spinor(MomentumKinematics(m, p), Spin::down); });
  const GridSpinorField hu = h(u);
  for (std::size_t j = 0; j < g.size(); ++j)
    CHECK(max_abs_diff(hu.values[j], cplx{std::hypot(g[j], m)} * u.values[j]) <= 1e-14);
}

TEST_CASE("massless and static limits") {
  const Grid1D g = grid(Axis::momentum, 0.5, 2.0, 0.05);
  CHECK(build_tau_op(g, 0.0).matrix.max_abs() == 0.0);
  CHECK(build_mass_op(grid(Axis::position, 0.5, 2.0, 0.05), 0.0).matrix.max_abs() == 0.0);
  const GridOperator t0 = build_T_dirac_momentum(g, 0.0);
  const GridOperator expect = spinor_kron(cplx{0.0, -1.0} * difference_matrix(g), dirac_basis().alpha1);
  CHECK(max_abs_diff(t0.matrix, expect.matrix) <= 1e-13);
}

TEST_CASE("commutator residuals") {
  SUBCASE("[x, p] = i at second order") {
    auto residual = [](double h) {
      const Grid1D g = grid(Axis::position, 0.5, 3.5, h);
      return commutator_residual(coordinate_op(g), derivative_op(g), cplx{0.0, 1.0}, bump_probe(g, 2.0, 1.0, kProbeSpinor));
    };
    const double r1 = residual(0.01);
    CHECK(r1 < 2e-3);
    CHECK(r1 / residual(0.005) == doctest::Approx(4.0).epsilon(0.2));
  }
  SUBCASE("self-commutator returns |expected|") {
    const Grid1D g = grid(Axis::momentum, 0.5, 3.5, 0.05);
    const GridOperator h = build_H_momentum(g, 1.0);
    const auto probe = bump_probe(g, 2.0, 1.0, kProbeSpinor);
    CHECK(commutator_residual(h, h, cplx{0.0, 1.0}, probe) == doctest::Approx(1.0));
    CHECK(commutator_residual(h, h, cplx{}, probe) == 0.0);
  }
  SUBCASE("both canonical pairs converge at second order") {
    auto particle = [](double h) {
      const Grid1D g = grid(Axis::momentum, 0.5, 4.5, h);
      return commutator_residual(build_H_momentum(g, 1.0), build_T_dirac_momentum(g, 1.0), cplx{0.0, 1.0},
                                 bump_probe(g, 2.5, 1.2, kProbeSpinor));
    };
    auto dual = [](double h) {
      const Grid1D g = grid(Axis::position, 0.5, 4.5, h);
      return commutator_residual(build_T_dual_position(g, 0.8), build_H_dual_position(g, 0.8), cplx{0.0, -1.0},
                                 bump_probe(g, 2.5, 1.2, kProbeSpinor));
    };
    CHECK(particle(0.05) / particle(0.025) == doctest::Approx(4.0).epsilon(0.25));
    CHECK(dual(0.05) / dual(0.025) == doctest::Approx(4.0).epsilon(0.25));
  }
  SUBCASE("probes touching the boundary are rejected") {
    const Grid1D g = grid(Axis::momentum, 0.5, 3.5, 0.05);
    const GridOperator h = build_H_momentum(g, 1.0);
    CHECK_THROWS_AS(commutator_residual(h, h, cplx{}, bump_probe(g, 0.6, 0.5, kProbeSpinor)), std::invalid_argument);
  }
  SUBCASE("probes touching the origin gap are rejected") {
    const Grid1D g = Grid1D::symmetric(Axis::position, 60, 0.05);
    const GridOperator x = coordinate_op(g);
    CHECK_THROWS_AS(commutator_residual(x, x, cplx{}, bump_probe(g, 0.1, 0.3, kProbeSpinor)), std::invalid_argument);
    CHECK_NOTHROW(commutator_residual(x, x, cplx{}, bump_probe(g, 0.9, 0.3, kProbeSpinor)));
  }
}

TEST_CASE("T_dirac is Hermitian away from the boundary rows to second order") {
  auto defect = [](double h) {
    const Grid1D g = grid(Axis::momentum, 0.5, 2.5, h);
    const GridOperator t = build_T_dirac_momentum(g, 1.0);
    const auto probe = bump_probe(g, 1.5, 0.7, kProbeSpinor);
    // <f, T f> is real for a Hermitian operator.
    const auto f = probe.flatten();
    const auto tf = matvec(t.matrix, f);
    cplx s{};
    for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * tf[i];
    return std::abs(s.imag()) * h;
  };
  CHECK(defect(0.02) < 1e-3);
  CHECK(defect(0.01) < defect(0.02));
}

TEST_CASE("field flatten round trip") {
  const Grid1D g = grid(Axis::momentum, 1.0, 2.0, 0.25);
  const GridSpinorField f = GridSpinorField::sample(g, [](double p) { return cplx{p, -p} * kProbeSpinor; });
  const GridSpinorField back = GridSpinorField::unflatten(g, f.flatten());
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(max_abs_diff(back.values[j], f.values[j]) == 0.0);
  CHECK_THROWS_AS(GridSpinorField::unflatten(g, std::vector<cplx>(3)), std::invalid_argument);
}
