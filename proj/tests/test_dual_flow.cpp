#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toa/convergence.hpp"
#include "toa/dual_flow.hpp"

using namespace toa;

TEST_CASE("constant time function leaves the state fixed") {
  const TimeFunction t([](std::span<const double>, std::span<const double>) { return 3.0; });
  const DualFlowState s = dual_flow_step({0.0, {0.7}, {-1.1}}, t, 0.1);
  CHECK(s.eps == doctest::Approx(0.1));
  CHECK(s.q[0] == 0.7);
  CHECK(s.k[0] == -1.1);
}

TEST_CASE("T = q k gives exponential flows") {
  const TimeFunction t([](std::span<const double> q, std::span<const double> k) { return q[0] * k[0]; },
                       [](std::span<const double>, std::span<const double> k) { return std::vector<double>{k[0]}; },
                       [](std::span<const double> q, std::span<const double>) { return std::vector<double>{q[0]}; });
  auto error = [&](double h) {
    const FlowResult r = integrate_flow({0.0, {1.0}, {1.0}}, t, 1.0, h);
    const auto& end = r.trajectory.back();
    return std::max(std::abs(end.q[0] - std::exp(1.0)), std::abs(end.k[0] - std::exp(-1.0)));
  };
  CHECK(error(0.01) <= 1e-9);
  CHECK(refinement_study(0.1, 4, error).order == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("arrival-time function: value and initial velocities") {
  const TimeFunction t = arrival_time_function(1.0);
  const std::vector<double> q{1.0}, k{1.0};
  CHECK(t(q, k) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  // dq/deps = dT/dk = q m^2 / (E k^2), dk/deps = -dT/dq = E / k
  CHECK(t.grad_k(q, k)[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(-t.grad_q(q, k)[0] == doctest::Approx(std::sqrt(2.0)));
  const TimeFunction fd = t.without_analytic_gradients();
  CHECK_FALSE(fd.has_analytic_gradients());
  for (double qq : {-2.0, 0.5, 3.0})
    for (double kk : {-1.5, 0.2, 4.0}) {
      const std::vector<double> a{qq}, b{kk};
      CHECK(fd.grad_q(a, b)[0] == doctest::Approx(t.grad_q(a, b)[0]).epsilon(1e-6));
      CHECK(fd.grad_k(a, b)[0] == doctest::Approx(t.grad_k(a, b)[0]).epsilon(1e-6));
    }
}

TEST_CASE("conservation along the arrival-time flow") {
  const TimeFunction t = arrival_time_function(1.0);
  const DualFlowState start{0.0, {1.0}, {1.0}};
  const FlowResult r = integrate_flow(start, t, 10.0, 1e-3, 100);
  CHECK(r.t0 == doctest::Approx(-std::sqrt(2.0)));
  CHECK(r.max_rel_drift <= 1e-8);
  CHECK(r.steps == 10000);
  CHECK(r.trajectory.size() == 101);
  CHECK(r.trajectory.back().eps == doctest::Approx(10.0));
  const double d1 = integrate_flow(start, t, 10.0, 0.1).max_abs_drift;
  const double d2 = integrate_flow(start, t, 10.0, 0.05).max_abs_drift;
  CHECK(d1 / d2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("starting inside the exclusion band is rejected") {
  // |k| grows along this flow, so only a start inside the band can trip it.
  const TimeFunction t = arrival_time_function(1.0, 0.05);
  CHECK_THROWS_AS(integrate_flow({0.0, {1.0}, {-0.04}}, t, 5.0, 1e-2), FlowError);
  CHECK_NOTHROW(integrate_flow({0.0, {1.0}, {-0.06}}, t, 1.0, 1e-2));
  CHECK_THROWS_AS(dual_flow_step({0.0, {1.0}, {0.01}}, t, 1e-2), FlowError);
  CHECK_THROWS_AS(dual_flow_step({0.0, {1.0}, {1.0}}, t, 0.0), std::invalid_argument);
}
