#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toa/convergence.hpp"
#include "toa/spectral.hpp"

using namespace toa;

namespace {

Grid1D p_grid(std::size_t n) { return Grid1D::uniform(Axis::momentum, n, 0.5, 4.0); }

}  // namespace

TEST_CASE("amplitude equals sqrt(p/E)") {
  const ToaEigenfunction f{Branch::plus, 1.0, Spin::up, 1.5};
  for (double p : {0.3, 1.0, 2.7}) CHECK(f.amplitude(p) == doctest::Approx(std::sqrt(p / std::hypot(p, 1.5))).epsilon(1e-14));
  CHECK(f.spinor(1.2).norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("event form coincides with the momentum form") {
  for (Branch b : {Branch::plus, Branch::minus})
    for (double p : {0.5, 1.3, 3.9}) {
      const ToaEigenfunction f{b, 1.7, Spin::down, 0.8};
      CHECK(max_abs_diff(f.value(p), f.event_form_value(p)) <= 1e-14);
    }
}

TEST_CASE("closed-form derivative agrees with Richardson differences") {
  for (Branch b : {Branch::plus, Branch::minus})
    for (Spin s : {Spin::up, Spin::down}) {
      const ToaEigenfunction f{b, 1.3, s, 0.9};
      const double p = 1.1;
      const Spinor4 d = f.derivative(p);
      for (std::size_t c = 0; c < 4; ++c) {
        const double re = richardson_derivative([&](double q) { return f.value(q)[c].real(); }, p, 1e-3);
        const double im = richardson_derivative([&](double q) { return f.value(q)[c].imag(); }, p, 1e-3);
        CHECK(std::abs(d[c] - cplx{re, im}) <= 1e-9);
      }
    }
}

TEST_CASE("u exp(-ipx) branch satisfies the eigen relation to rounding") {
  const Grid1D g = p_grid(201);
  for (double m : {0.5, 1.0, 2.0})
    for (double x : {0.5, 1.0, 2.0})
      for (Spin s : {Spin::up, Spin::down}) {
        const ToaEigenfunction f{Branch::plus, x, s, m};
        CHECK(appendix_a_residual(f, g, DiffMode::analytic).max <= 1e-12);
        CHECK(f.eigenvalue(2.0) == doctest::Approx(-x * std::hypot(2.0, m) / 2.0));
      }
}

TEST_CASE("v exp(+ipx) branch is an eigenfunction only with the mass sign flipped") {
  const Grid1D g = p_grid(51);
  const ToaEigenfunction f{Branch::minus, 1.0, Spin::up, 1.0};
  CHECK(appendix_a_residual(f, g, DiffMode::analytic).max > 0.1);
  CHECK(appendix_a_residual(f, g, DiffMode::analytic, -1.0).max <= 1e-12);
  // Massless modes are insensitive to the sign.
  const ToaEigenfunction massless{Branch::minus, 1.0, Spin::up, 0.0};
  CHECK(appendix_a_residual(massless, g, DiffMode::analytic).max <= 1e-12);
}

TEST_CASE("finite-difference residual converges at second order") {
  const ToaEigenfunction f{Branch::plus, 1.0, Spin::up, 1.0};
  const RefinementStudy st = refinement_study(0.1, 4, [&](double h) {
    const auto n = static_cast<std::size_t>(std::llround(3.5 / h)) + 1;
    return appendix_a_residual(f, p_grid(n), DiffMode::finite_difference).max;
  });
  CHECK(st.order == doctest::Approx(2.0).epsilon(0.15));
  const auto prof = appendix_a_residual(f, p_grid(36), DiffMode::finite_difference);
  CHECK(prof.points.size() == 34);
  CHECK(prof.points.front() > 0.5);
}

TEST_CASE("derivative identities at m=2, p=1") {
  const DerivativeIdentityResult r = derivative_identity_check(2.0, 1.0);
  CHECK(r.amplitude_residual <= 1e-9);
  // Hand evaluation: E^2 = 5.
  CHECK(r.candidate_linear == doctest::Approx(0.2));
  CHECK(r.candidate_quadratic == doctest::Approx(0.4));
  CHECK(r.measured_prefactor == doctest::Approx(0.2).epsilon(1e-8));
  CHECK(r.selected == "m/2E^2");
  CHECK(r.discriminates);
}

TEST_CASE("derivative oracle flags coinciding candidates") {
  CHECK(derivative_identity_check(1.0, 1.0).degenerate);
  CHECK_FALSE(derivative_identity_check(1.0, 1.0).discriminates);
}

TEST_CASE("F vector") {
  const FVectorResult one = f_vector_check(1.0, 1.0, Spin::up);
  CHECK(one.degenerate);
  CHECK(one.vanishing == "both");
  CHECK(one.pass);
  const FVectorResult two = f_vector_check(2.0, 1.0, Spin::down);
  CHECK_FALSE(two.degenerate);
  CHECK(two.printed_norm <= kFVectorTolerance);
  CHECK(two.alternate_norm > 1e-3);
  CHECK(two.vanishing == "printed");
  CHECK(two.pass);
}
