#pragma once

// Eigenfunctions of the relativistic arrival-time operator in the momentum
// representation, and the residual checks of the pointwise eigenrelation.

#include <string>
#include <vector>

#include "toa/dirac.hpp"
#include "toa/grid.hpp"

namespace toa {

enum class Branch {
  plus,   // u(p,s) exp(-ipx), eigenvalue -x E_p / p
  minus,  // v(p,s) exp(+ipx), eigenvalue +x E_p / p
};

std::string to_string(Branch b);

struct ToaEigenfunction {
  Branch branch = Branch::plus;
  double x = 1.0;
  Spin s = Spin::up;
  double m = 1.0;

  /// (p^2 / (p^2 + m^2))^{1/4}
  double amplitude(double p) const;
  Spinor4 spinor(double p) const;
  Spinor4 value(double p) const;
  /// Closed-form dphi/dp (product rule, no finite differences).
  Spinor4 derivative(double p) const;
  /// -x E_p / p for plus, +x E_p / p for minus.
  double eigenvalue(double p) const;
  /// The same function written through the event spinors with tau = x m / p.
  Spinor4 event_form_value(double p) const;
};

GridSpinorField sample_eigenfunction(const ToaEigenfunction& f, const Grid1D& grid_p);

struct DerivativeIdentityResult {
  double amplitude_residual = 0.0;  // |FD d/dp amplitude - (m^2/2E^2)(1/p) amplitude|
  double measured_prefactor = 0.0;  // c in du/dp = c alpha_1 beta u
  double candidate_linear = 0.0;    // m / 2E^2
  double candidate_quadratic = 0.0; // m^2 / 2E^2
  std::string selected;             // "m/2E^2" or "m^2/2E^2" (nearest candidate)
  double margin = 0.0;              // |measured - rejected candidate|
  double noise_floor = 0.0;         // FD noise + fit residual + |measured - selected|
  bool degenerate = false;          // candidates coincide (m = 0 or m = 1)
  bool discriminates = false;       // !degenerate && margin >= 10 noise_floor
};

DerivativeIdentityResult derivative_identity_check(double m, double p);

enum class DiffMode { analytic, finite_difference };

struct ResidualProfile {
  std::vector<double> points;
  std::vector<double> residuals;
  double max = 0.0;
};

/// Per-point || T phi - lambda phi || / || phi || with T the momentum-space
/// arrival-time operator built with mass `operator_mass` (the eigenfunction's
/// own mass unless overridden; passing -m evaluates the charge-conjugate
/// operator). Boundary points are skipped in finite-difference mode.
ResidualProfile appendix_a_residual(const ToaEigenfunction& f, const Grid1D& grid_p, DiffMode mode);
ResidualProfile appendix_a_residual(const ToaEigenfunction& f, const Grid1D& grid_p, DiffMode mode,
                                    double operator_mass);

struct FVectorResult {
  double printed_norm = 0.0;    // assembly with the B-term prefactor m/2E (as printed)
  double alternate_norm = 0.0;  // assembly with prefactor m^2/2E
  bool degenerate = false;      // the two assemblies coincide
  std::string vanishing;        // "printed", "alternate", "both" or "none"
  bool pass = false;
};

inline constexpr double kFVectorTolerance = 1e-12;

FVectorResult f_vector_check(double m, double p, Spin s);

}  // namespace toa
