#include "toa/dual_flow.hpp"

#include <algorithm>
#include <cmath>

namespace toa {

TimeFunction::TimeFunction(PhaseFunction value, std::optional<PhaseGradient> d_dq,
                           std::optional<PhaseGradient> d_dk,
                           std::function<std::optional<std::string>(std::span<const double>,
                                                                    std::span<const double>)>
                               domain_check)
    : value_(std::move(value)), d_dq_(std::move(d_dq)), d_dk_(std::move(d_dk)), domain_(std::move(domain_check)) {}

std::vector<double> TimeFunction::grad_q(std::span<const double> q, std::span<const double> k) const {
  return d_dq_ ? (*d_dq_)(q, k) : fd_gradient(q, k, true);
}

std::vector<double> TimeFunction::grad_k(std::span<const double> q, std::span<const double> k) const {
  return d_dk_ ? (*d_dk_)(q, k) : fd_gradient(q, k, false);
}

TimeFunction TimeFunction::without_analytic_gradients() const {
  return TimeFunction(value_, std::nullopt, std::nullopt, domain_);
}

void TimeFunction::check_domain(std::span<const double> q, std::span<const double> k) const {
  for (double v : q)
    if (!std::isfinite(v)) throw FlowError("dual flow: non-finite coordinate");
  for (double v : k)
    if (!std::isfinite(v)) throw FlowError("dual flow: non-finite momentum");
  if (domain_) {
    if (auto why = domain_(q, k)) throw FlowError("dual flow: " + *why);
  }
}

std::vector<double> TimeFunction::fd_gradient(std::span<const double> q, std::span<const double> k,
                                              bool wrt_q) const {
  std::vector<double> qv(q.begin(), q.end());
  std::vector<double> kv(k.begin(), k.end());
  std::vector<double>& target = wrt_q ? qv : kv;
  std::vector<double> grad(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double x0 = target[i];
    const double h = 1e-5 * std::max(1.0, std::abs(x0));
    target[i] = x0 + h;
    const double fp = value_(qv, kv);
    target[i] = x0 - h;
    const double fm = value_(qv, kv);
    target[i] = x0;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

TimeFunction arrival_time_function(double m, double k_exclusion) {
  auto value = [m](std::span<const double> q, std::span<const double> k) {
    return -q[0] * std::hypot(k[0], m) / k[0];
  };
  auto d_dq = [m](std::span<const double>, std::span<const double> k) {
    return std::vector<double>{-std::hypot(k[0], m) / k[0]};
  };
  auto d_dk = [m](std::span<const double> q, std::span<const double> k) {
    const double e = std::hypot(k[0], m);
    return std::vector<double>{q[0] * m * m / (e * k[0] * k[0])};
  };
  auto domain = [k_exclusion](std::span<const double> q,
                              std::span<const double> k) -> std::optional<std::string> {
    if (q.size() != 1 || k.size() != 1) return "arrival-time function has one degree of freedom";
    if (std::abs(k[0]) < k_exclusion) return "momentum entered the exclusion band around k = 0";
    return std::nullopt;
  };
  return TimeFunction(value, d_dq, d_dk, domain);
}

namespace {

struct Derivative {
  std::vector<double> dq;
  std::vector<double> dk;
};

Derivative flow_field(const TimeFunction& t, std::span<const double> q, std::span<const double> k) {
  t.check_domain(q, k);
  Derivative d;
  d.dq = t.grad_k(q, k);
  d.dk = t.grad_q(q, k);
  for (double& v : d.dk) v = -v;
  return d;
}

std::vector<double> shifted(const std::vector<double>& base, const std::vector<double>& dir, double h) {
  std::vector<double> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + h * dir[i];
  return out;
}

}  // namespace

DualFlowState dual_flow_step(const DualFlowState& s, const TimeFunction& t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("dual_flow_step: step must be positive");
  if (s.q.empty() || s.q.size() != s.k.size()) throw std::invalid_argument("dual_flow_step: need n >= 1 coordinates and momenta");

  const Derivative k1 = flow_field(t, s.q, s.k);
  const Derivative k2 = flow_field(t, shifted(s.q, k1.dq, 0.5 * h), shifted(s.k, k1.dk, 0.5 * h));
  const Derivative k3 = flow_field(t, shifted(s.q, k2.dq, 0.5 * h), shifted(s.k, k2.dk, 0.5 * h));
  const Derivative k4 = flow_field(t, shifted(s.q, k3.dq, h), shifted(s.k, k3.dk, h));

  DualFlowState out{s.eps + h, s.q, s.k};
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    out.q[i] += h / 6.0 * (k1.dq[i] + 2.0 * k2.dq[i] + 2.0 * k3.dq[i] + k4.dq[i]);
    out.k[i] += h / 6.0 * (k1.dk[i] + 2.0 * k2.dk[i] + 2.0 * k3.dk[i] + k4.dk[i]);
  }
  t.check_domain(out.q, out.k);
  return out;
}

FlowResult integrate_flow(const DualFlowState& start, const TimeFunction& t, double eps_span, double h_eps,
                          std::size_t sample_every) {
  if (!(eps_span > 0.0) || !(h_eps > 0.0)) throw std::invalid_argument("integrate_flow: span and step must be positive");
  if (sample_every == 0) sample_every = 1;
  t.check_domain(start.q, start.k);

  FlowResult r;
  r.t0 = t(start.q, start.k);
  const auto steps = static_cast<std::size_t>(std::llround(eps_span / h_eps));
  const double h = eps_span / static_cast<double>(steps);
  r.steps = steps;
  r.trajectory.push_back(start);

  DualFlowState s = start;
  for (std::size_t n = 1; n <= steps; ++n) {
    s = dual_flow_step(s, t, h);
    const double drift = std::abs(t(s.q, s.k) - r.t0);
    r.max_abs_drift = std::max(r.max_abs_drift, drift);
    if (n % sample_every == 0 || n == steps) r.trajectory.push_back(s);
  }
  r.max_rel_drift = r.t0 != 0.0 ? r.max_abs_drift / std::abs(r.t0) : r.max_abs_drift;
  return r;
}

}  // namespace toa
