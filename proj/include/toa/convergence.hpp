#pragma once

#include <functional>
#include <span>
#include <vector>

namespace toa {

/// Least-squares slope of log(error) against log(step). Requires >= 2 points
/// with positive values.
double fit_order(std::span<const double> steps, std::span<const double> errors);

struct RefinementStudy {
  std::vector<double> steps;
  std::vector<double> errors;
  double order = 0.0;
};

/// Evaluates `error_at(step)` for step, step/2, ..., (levels values) and fits
/// the order.
RefinementStudy refinement_study(double step, int levels,
                                 const std::function<double(double)>& error_at);

/// Fourth-order Richardson combination of two central differences of f at x.
double richardson_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace toa
