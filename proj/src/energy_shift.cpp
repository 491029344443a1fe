#include "toa/energy_shift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace toa {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void require_stencil(const ShiftField& f, const char* what) {
  if (f.eps_grid.size() < 3 || f.p_grid.size() < 3) {
    throw std::invalid_argument(std::string(what) + ": field too small for the interior stencil");
  }
}

// Trapezoid weights over the index range [1, n-2].
std::vector<double> interior_trapezoid(std::size_t n, double h) {
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j) w[j] = h;
  if (n >= 4) {
    w[1] *= 0.5;
    w[n - 2] *= 0.5;
  }
  return w;
}

struct Stencil {
  Spinor4 d_eps;  // d phi / d eps
  Spinor4 x_phi;  // i d phi / dp
};

Stencil stencil(const ShiftField& f, std::size_t i, std::size_t j) {
  const double he = f.eps_grid.spacing();
  const double hp = f.p_grid.spacing();
  Stencil s;
  s.d_eps = cplx{1.0 / (2.0 * he)} * (f.at(i + 1, j) - f.at(i - 1, j));
  s.x_phi = cplx{0.0, 1.0 / (2.0 * hp)} * (f.at(i, j + 1) - f.at(i, j - 1));
  return s;
}

}  // namespace

Spinor4 elementary_solution(ShiftForm form, ShiftBranch branch, const EventKinematics& e, Spin s,
                            double eps, double p) {
  const double x = e.x();
  const double t = e.arrival_time();
  double amp = kInvSqrt2Pi;
  if (form == ShiftForm::operator_tau) amp *= std::pow(x * x / (x * x + e.tau() * e.tau()), 0.25);
  const double phase = eps * t + p * x;
  if (branch == ShiftBranch::minus_Tx) return std::polar(amp, -phase) * zeta_spinor(e, s);
  return std::polar(amp, phase) * xi_spinor(e, s);
}

ShiftField::ShiftField(Grid1D eps, Grid1D p)
    : eps_grid(std::move(eps)), p_grid(std::move(p)), values(eps_grid.size() * p_grid.size()) {}

ShiftField& ShiftField::operator+=(const ShiftField& o) {
  if (o.values.size() != values.size() || o.eps_grid.size() != eps_grid.size()) {
    throw std::invalid_argument("ShiftField: grid mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

ShiftField& ShiftField::operator*=(cplx s) {
  for (auto& v : values) v *= s;
  return *this;
}

ShiftField operator+(ShiftField a, const ShiftField& b) { return a += b; }
ShiftField operator*(cplx s, ShiftField a) { return a *= s; }

ShiftField sample_elementary(ShiftForm form, ShiftBranch branch, const EventKinematics& e, Spin s,
                             const Grid1D& eps_grid, const Grid1D& p_grid) {
  return ShiftField::sample(eps_grid, p_grid, [&](double eps, double p) {
    return elementary_solution(form, branch, e, s, eps, p);
  });
}

ShiftField lattice_elementary(ShiftBranch branch, const EventKinematics& e, Spin s,
                              const Grid1D& eps_grid, const Grid1D& p_grid) {
  const double hp = p_grid.spacing();
  const double he = eps_grid.spacing();
  if (std::abs(e.x()) * hp > 1.0) throw std::domain_error("lattice_elementary: |x| h_p exceeds 1");
  const double t = e.arrival_time();
  if (t * he > 1.0) throw std::domain_error("lattice_elementary: T h_eps exceeds 1");
  // Central differences see sin(k h)/h instead of k; pick k and omega so the
  // discrete symbols reproduce x and T_x exactly.
  const double k = std::asin(e.x() * hp) / hp;
  const double omega = std::asin(t * he) / he;
  const Spinor4 w = branch == ShiftBranch::minus_Tx ? zeta_spinor(e, s) : xi_spinor(e, s);
  const double sign = branch == ShiftBranch::minus_Tx ? -1.0 : 1.0;
  return ShiftField::sample(eps_grid, p_grid, [&](double eps, double p) {
    return std::polar(kInvSqrt2Pi, sign * (eps * omega + p * k)) * w;
  });
}

double pde_residual_16(const ShiftField& field, double tau) {
  require_stencil(field, "pde_residual_16");
  const auto& basis = dirac_basis();
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < field.eps_grid.size(); ++i)
    for (std::size_t j = 1; j + 1 < field.p_grid.size(); ++j) {
      const Stencil st = stencil(field, i, j);
      Spinor4 r = cplx{0.0, -1.0} * st.d_eps;
      r += apply(basis.alpha1, st.x_phi);
      r += cplx{tau} * apply(basis.beta, field.at(i, j));
      worst = std::max(worst, r.norm());
    }
  return worst;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
  if (!a.square()) throw std::invalid_argument("matrix_exponential: matrix must be square");
  if (!a.all_finite()) throw std::invalid_argument("matrix_exponential: non-finite entries");
  const std::size_t n = a.rows();

  double norm1 = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < n; ++r) col += std::abs(a(r, c));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix scaled = cplx{std::ldexp(1.0, -squarings)} * a;

  // ||scaled||_1 <= 1/2, so 30 terms are far past double precision.
  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled;
    term *= cplx{1.0 / k};
    result += term;
    if (term.max_abs() <= 1e-18 * result.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

GridSpinorField shift_evolve(const GridSpinorField& initial, const GridOperator& t_op, double delta_eps) {
  if (!t_op.matrix.square() || t_op.n_points != initial.grid.size()) {
    throw std::invalid_argument("shift_evolve: operator does not match the field");
  }
  if (!std::isfinite(delta_eps)) throw std::invalid_argument("shift_evolve: non-finite step");
  const ComplexMatrix u = matrix_exponential(cplx{0.0, delta_eps} * t_op.matrix);
  return GridSpinorField::unflatten(initial.grid, matvec(u, initial.flatten()));
}

ActionDensities action_and_densities(const ShiftField& field, double tau) {
  require_stencil(field, "action_and_densities");
  const auto& basis = dirac_basis();
  const ComplexMatrix& g0 = basis.gamma[0];
  const ComplexMatrix& g1 = basis.gamma[1];
  const std::size_t ne = field.eps_grid.size();
  const std::size_t np = field.p_grid.size();
  const auto we = interior_trapezoid(ne, field.eps_grid.spacing());
  const auto wp = interior_trapezoid(np, field.p_grid.spacing());

  ActionDensities out;
  out.interior_eps = ne - 2;
  out.interior_p = np - 2;
  out.lagrange.reserve(out.interior_eps * out.interior_p);
  out.time_density.reserve(out.interior_eps * out.interior_p);

  for (std::size_t i = 1; i + 1 < ne; ++i) {
    double charge = 0.0;
    double norm = 0.0;
    for (std::size_t j = 1; j + 1 < np; ++j) {
      const Spinor4& phi = field.at(i, j);
      const Stencil st = stencil(field, i, j);
      // phibar = phi^dagger gamma^0, written as the column gamma^0 phi since
      // gamma^0 is Hermitian.
      const Spinor4 bar_col = apply(g0, phi);

      Spinor4 bracket = apply(g0, cplx{0.0, 1.0} * st.d_eps);
      bracket -= apply(g1, st.x_phi);
      bracket -= cplx{tau} * phi;
      const cplx gamma = inner(bar_col, bracket);

      const Spinor4 generator = apply(basis.alpha1, st.x_phi) + cplx{tau} * apply(basis.beta, phi);
      const cplx t_density = inner(phi, generator);

      // pi = i phibar gamma^0 against i phi^dagger
      const Spinor4 pi_col = apply(g0, bar_col);
      for (std::size_t c = 0; c < 4; ++c) {
        out.conjugate_momentum_residual =
            std::max(out.conjugate_momentum_residual, std::abs(pi_col[c] - phi[c]));
      }

      out.lagrange.push_back(gamma);
      out.time_density.push_back(t_density);
      out.action += we[i] * wp[j] * gamma;
      charge -= wp[j] * t_density.real();
      norm += wp[j] * std::norm(phi[0]) + wp[j] * std::norm(phi[1]) + wp[j] * std::norm(phi[2]) +
              wp[j] * std::norm(phi[3]);
    }
    out.eps.push_back(field.eps_grid[i]);
    out.charge.push_back(charge);
    out.mode_norm.push_back(norm);
  }
  return out;
}

}  // namespace toa
