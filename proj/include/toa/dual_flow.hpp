#pragma once

// Classical flow in the energy parameter generated by a time function T(q, k):
//   dk/deps = -dT/dq,  dq/deps = dT/dk.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toa {

struct DualFlowState {
  double eps = 0.0;
  std::vector<double> q;
  std::vector<double> k;
};

class FlowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PhaseFunction = std::function<double(std::span<const double> q, std::span<const double> k)>;
using PhaseGradient =
    std::function<std::vector<double>(std::span<const double> q, std::span<const double> k)>;

class TimeFunction {
 public:
  explicit TimeFunction(PhaseFunction value, std::optional<PhaseGradient> d_dq = std::nullopt,
                        std::optional<PhaseGradient> d_dk = std::nullopt,
                        std::function<std::optional<std::string>(std::span<const double>,
                                                                 std::span<const double>)>
                            domain_check = {});

  double operator()(std::span<const double> q, std::span<const double> k) const { return value_(q, k); }
  std::vector<double> grad_q(std::span<const double> q, std::span<const double> k) const;
  std::vector<double> grad_k(std::span<const double> q, std::span<const double> k) const;

  /// Same function with analytic gradients dropped (central differences only).
  TimeFunction without_analytic_gradients() const;
  bool has_analytic_gradients() const { return d_dq_.has_value() && d_dk_.has_value(); }

  /// Throws FlowError when (q, k) leaves the function's domain.
  void check_domain(std::span<const double> q, std::span<const double> k) const;

 private:
  std::vector<double> fd_gradient(std::span<const double> q, std::span<const double> k, bool wrt_q) const;

  PhaseFunction value_;
  std::optional<PhaseGradient> d_dq_;
  std::optional<PhaseGradient> d_dk_;
  std::function<std::optional<std::string>(std::span<const double>, std::span<const double>)> domain_;
};

/// T(q, k) = -q sqrt(k^2 + m^2) / k for one degree of freedom. The flow is
/// rejected once |k| drops below k_exclusion.
TimeFunction arrival_time_function(double m, double k_exclusion = 1e-6);

/// One classical RK4 step of size h_eps.
DualFlowState dual_flow_step(const DualFlowState& state, const TimeFunction& t, double h_eps);

struct FlowResult {
  std::vector<DualFlowState> trajectory;  // every `sample_every` steps plus the end point
  double t0 = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
  std::size_t steps = 0;
};

FlowResult integrate_flow(const DualFlowState& start, const TimeFunction& t, double eps_span, double h_eps,
                          std::size_t sample_every = 1);

}  // namespace toa
