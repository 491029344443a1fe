#include "toa/convergence.hpp"

#include <cmath>
#include <stdexcept>

namespace toa {

double fit_order(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw std::invalid_argument("fit_order: need at least two (step, error) pairs");
  }
  const double n = static_cast<double>(steps.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || !(errors[i] > 0.0)) {
      throw std::invalid_argument("fit_order: steps and errors must be positive");
    }
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RefinementStudy refinement_study(double step, int levels,
                                 const std::function<double(double)>& error_at) {
  RefinementStudy study;
  for (int i = 0; i < levels; ++i) {
    study.steps.push_back(step);
    study.errors.push_back(error_at(step));
    step *= 0.5;
  }
  study.order = fit_order(study.steps, study.errors);
  return study;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace toa
