#pragma once

// The energy-shift equation -i d(phi)/d(eps) = T phi: elementary solutions,
// PDE residuals on (eps, p) grids, evolution by the matrix exponential and the
// c-number action / Lagrange density / time-function density machinery.

#include <vector>

#include "toa/complex_matrix.hpp"
#include "toa/dirac.hpp"
#include "toa/grid.hpp"

namespace toa {

enum class ShiftForm {
  operator_tau,  // proper time as an operator: carries (x^2/(x^2+tau^2))^{1/4}
  c_number_tau,  // proper time as a c-number: no amplitude factor
};

enum class ShiftBranch {
  minus_Tx,  // zeta(x,s) exp[-i(eps T_x + p x)], T = -T_x
  plus_Tx,   // xi(x,s)   exp[+i(eps T_x + p x)], T = +T_x
};

Spinor4 elementary_solution(ShiftForm form, ShiftBranch branch, const EventKinematics& e, Spin s,
                            double eps, double p);

/// Spinor field on a rectangular (eps, p) grid, eps-major.
struct ShiftField {
  Grid1D eps_grid;
  Grid1D p_grid;
  std::vector<Spinor4> values;

  ShiftField(Grid1D eps, Grid1D p);

  template <class F>
  static ShiftField sample(const Grid1D& eps, const Grid1D& p, F&& f) {
    ShiftField out(eps, p);
    for (std::size_t i = 0; i < eps.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) out.at(i, j) = f(eps[i], p[j]);
    return out;
  }

  Spinor4& at(std::size_t i_eps, std::size_t j_p) { return values[i_eps * p_grid.size() + j_p]; }
  const Spinor4& at(std::size_t i_eps, std::size_t j_p) const {
    return values[i_eps * p_grid.size() + j_p];
  }

  ShiftField& operator+=(const ShiftField& o);
  ShiftField& operator*=(cplx s);
};

ShiftField operator+(ShiftField a, const ShiftField& b);
ShiftField operator*(cplx s, ShiftField a);

/// Elementary solution sampled on the grid.
ShiftField sample_elementary(ShiftForm form, ShiftBranch branch, const EventKinematics& e, Spin s,
                             const Grid1D& eps_grid, const Grid1D& p_grid);

/// Elementary solution with the central-difference dispersion relation, so
/// that it satisfies the discretised equation to rounding. Requires
/// |x| h_p <= 1 and the corrected T h_eps <= 1.
ShiftField lattice_elementary(ShiftBranch branch, const EventKinematics& e, Spin s,
                              const Grid1D& eps_grid, const Grid1D& p_grid);

/// max over interior (eps, p) of || -i d_eps phi + (alpha_1 x + beta tau) phi ||
/// with x = i d/dp; both derivatives are central differences.
double pde_residual_16(const ShiftField& field, double tau);

/// exp(A) by scaling and squaring of a Taylor series (relative accuracy ~1e-15
/// for the sizes used here). Throws on non-finite or non-square input.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/// exp(i T delta_eps) applied to `initial`.
GridSpinorField shift_evolve(const GridSpinorField& initial, const GridOperator& t_op, double delta_eps);

struct ActionDensities {
  cplx action;                    // trapezoid sum of the Lagrange density over the interior
  std::vector<cplx> lagrange;     // interior (eps, p) points, eps-major
  std::vector<cplx> time_density; // phi^dagger (alpha_1 x + beta tau) phi, same layout
  std::vector<double> eps;        // interior eps values
  std::vector<double> charge;     // sum_p phi^dagger T phi dp with T = -(alpha_1 x + beta tau)
  std::vector<double> mode_norm;  // sum_p |phi|^2 dp on the same points
  double conjugate_momentum_residual = 0.0;  // max |i phibar gamma^0 - i phi^dagger|
  std::size_t interior_eps = 0;
  std::size_t interior_p = 0;
};

ActionDensities action_and_densities(const ShiftField& field, double tau);

}  // namespace toa
