#include "toa/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace toa {

namespace {

constexpr std::size_t kSpin = 4;

bool origin_excluded_axis(Axis a) { return a != Axis::energy; }

void require_same_dimension(const GridOperator& a, const GridOperator& b, const char* what) {
  if (a.dimension() != b.dimension() || a.n_points != b.n_points) {
    throw std::invalid_argument(std::string(what) + ": operator dimension mismatch");
  }
}

void require_derivative_grid(const Grid1D& g, const char* what) {
  if (g.size() < 3) throw std::invalid_argument(std::string(what) + ": grid needs at least 3 points");
}

}  // namespace

Grid1D::Grid1D(Axis axis, std::vector<double> points, double spacing, double exclusion_radius)
    : axis_(axis), points_(std::move(points)), spacing_(spacing), exclusion_radius_(exclusion_radius) {}

Grid1D Grid1D::uniform(Axis axis, std::size_t n_points, double lower, double upper,
                       double exclusion_radius) {
  if (n_points < 2) throw std::invalid_argument("Grid1D: need at least 2 points");
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(upper > lower)) {
    throw std::invalid_argument("Grid1D: bounds must be finite with upper > lower");
  }
  const double h = (upper - lower) / static_cast<double>(n_points - 1);
  std::vector<double> pts(n_points);
  for (std::size_t i = 0; i < n_points; ++i) pts[i] = lower + h * static_cast<double>(i);
  pts.back() = upper;

  if (origin_excluded_axis(axis)) {
    if (std::any_of(pts.begin(), pts.end(), [](double v) { return v == 0.0; })) {
      throw std::invalid_argument("Grid1D: grid contains the origin");
    }
    if (lower <= 0.0 && upper >= 0.0) {
      if (!(exclusion_radius > 0.0)) {
        throw std::invalid_argument("Grid1D: grid spans the origin without an exclusion radius");
      }
      for (double v : pts) {
        if (std::abs(v) < exclusion_radius) {
          throw std::invalid_argument("Grid1D: point " + std::to_string(v) +
                                      " lies inside the origin exclusion radius");
        }
      }
    }
  }
  return Grid1D(axis, std::move(pts), h, exclusion_radius);
}

Grid1D Grid1D::symmetric(Axis axis, std::size_t n_points, double spacing) {
  if (n_points < 2 || n_points % 2 != 0) throw std::invalid_argument("Grid1D::symmetric: n must be even and >= 2");
  if (!(spacing > 0.0)) throw std::invalid_argument("Grid1D::symmetric: spacing must be positive");
  // Built from half-integers so the points are exact mirrors and the innermost
  // pair sits exactly on the exclusion radius.
  std::vector<double> pts(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    pts[i] = 0.5 * (2.0 * static_cast<double>(i) - static_cast<double>(n_points - 1)) * spacing;
  }
  return Grid1D(axis, std::move(pts), spacing, 0.5 * spacing);
}

Grid1D Grid1D::refined() const {
  return uniform(axis_, 2 * size() - 1, lower(), upper(), exclusion_radius_);
}

std::vector<std::size_t> Grid1D::gap_neighbours() const {
  if (!origin_excluded_axis(axis_) || lower() > 0.0 || upper() < 0.0) return {};
  const auto it = std::upper_bound(points_.begin(), points_.end(), 0.0);
  const auto right = static_cast<std::size_t>(it - points_.begin());
  return {right - 1, right};
}

GridSpinorField::GridSpinorField(Grid1D g) : grid(std::move(g)), values(grid.size()) {}

GridSpinorField::GridSpinorField(Grid1D g, std::vector<Spinor4> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("GridSpinorField: length does not match grid");
}

GridSpinorField GridSpinorField::sample(const Grid1D& g, const std::function<Spinor4(double)>& f) {
  GridSpinorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = f(g[i]);
  return out;
}

std::vector<cplx> GridSpinorField::flatten() const {
  std::vector<cplx> flat(values.size() * kSpin);
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t a = 0; a < kSpin; ++a) flat[i * kSpin + a] = values[i][a];
  return flat;
}

GridSpinorField GridSpinorField::unflatten(const Grid1D& g, const std::vector<cplx>& flat) {
  if (flat.size() != g.size() * kSpin) throw std::invalid_argument("unflatten: length mismatch");
  GridSpinorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t a = 0; a < kSpin; ++a) out.values[i][a] = flat[i * kSpin + a];
  return out;
}

double GridSpinorField::max_abs() const {
  double m = 0.0;
  for (const auto& s : values)
    for (std::size_t a = 0; a < kSpin; ++a) m = std::max(m, std::abs(s[a]));
  return m;
}

GridOperator::GridOperator(ComplexMatrix m, std::size_t n) : matrix(std::move(m)), n_points(n) {
  if (!matrix.square() || matrix.rows() != kSpin * n) {
    throw std::invalid_argument("GridOperator: matrix must be square with dimension 4 n");
  }
}

GridSpinorField GridOperator::operator()(const GridSpinorField& f) const {
  if (f.grid.size() != n_points) throw std::invalid_argument("GridOperator: field does not match grid");
  return GridSpinorField::unflatten(f.grid, matvec(matrix, f.flatten()));
}

GridOperator operator+(const GridOperator& a, const GridOperator& b) {
  require_same_dimension(a, b, "operator+");
  return {a.matrix + b.matrix, a.n_points};
}

GridOperator operator-(const GridOperator& a, const GridOperator& b) {
  require_same_dimension(a, b, "operator-");
  return {a.matrix - b.matrix, a.n_points};
}

GridOperator operator*(cplx s, const GridOperator& a) { return {s * a.matrix, a.n_points}; }

GridOperator operator*(const GridOperator& a, const GridOperator& b) {
  require_same_dimension(a, b, "operator*");
  return {a.matrix * b.matrix, a.n_points};
}

GridOperator spinor_kron(const ComplexMatrix& grid_part, const ComplexMatrix& spinor_part) {
  if (!grid_part.square() || spinor_part.rows() != kSpin || spinor_part.cols() != kSpin) {
    throw std::invalid_argument("spinor_kron: expected square grid part and 4x4 spinor part");
  }
  return {kron(grid_part, spinor_part), grid_part.rows()};
}

GridOperator block_diagonal(const Grid1D& g, const std::function<ComplexMatrix(double)>& block) {
  const std::size_t n = g.size();
  ComplexMatrix m(kSpin * n, kSpin * n);
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix b = block(g[j]);
    for (std::size_t r = 0; r < kSpin; ++r)
      for (std::size_t c = 0; c < kSpin; ++c) m(kSpin * j + r, kSpin * j + c) = b(r, c);
  }
  return {std::move(m), n};
}

GridOperator coordinate_op(const Grid1D& g) {
  require_derivative_grid(g, "coordinate_op");
  return block_diagonal(g, [](double q) { return cplx{q} * ComplexMatrix::identity(kSpin); });
}

GridOperator inverse_coordinate_op(const Grid1D& g) {
  require_derivative_grid(g, "inverse_coordinate_op");
  return block_diagonal(g, [](double q) { return cplx{1.0 / q} * ComplexMatrix::identity(kSpin); });
}

ComplexMatrix difference_matrix(const Grid1D& g) {
  require_derivative_grid(g, "difference_matrix");
  const std::size_t n = g.size();
  const double inv2h = 1.0 / (2.0 * g.spacing());
  ComplexMatrix d(n, n);
  d(0, 0) = -3.0 * inv2h;
  d(0, 1) = 4.0 * inv2h;
  d(0, 2) = -1.0 * inv2h;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    d(j, j - 1) = -inv2h;
    d(j, j + 1) = inv2h;
  }
  d(n - 1, n - 1) = 3.0 * inv2h;
  d(n - 1, n - 2) = -4.0 * inv2h;
  d(n - 1, n - 3) = 1.0 * inv2h;
  return d;
}

GridOperator derivative_op(const Grid1D& g) {
  return spinor_kron(cplx{0.0, -1.0} * difference_matrix(g), ComplexMatrix::identity(kSpin));
}

GridOperator weyl_symmetrize(const GridOperator& f, const GridOperator& g) {
  require_same_dimension(f, g, "weyl_symmetrize");
  GridOperator out = f * g + g * f;
  out.matrix *= 0.5;
  return out;
}

GridOperator build_H_momentum(const Grid1D& grid_p, double m) {
  return block_diagonal(grid_p, [m](double p) { return dirac_hamiltonian(p, m); });
}

GridOperator build_T_dirac_momentum(const Grid1D& grid_p, double m) {
  const auto& basis = dirac_basis();
  const GridOperator left =
      block_diagonal(grid_p, [m](double p) { return cplx{1.0 / p} * dirac_hamiltonian(p, m); });
  const GridOperator local = block_diagonal(grid_p, [&](double p) {
    return cplx{0.0, m / (2.0 * p * p)} * basis.beta;
  });
  return left * derivative_op(grid_p) + local;
}

GridOperator build_tau_op(const Grid1D& grid_p, double m) {
  // x = i d/dp = -(-i d/dp)
  const GridOperator x_hat = cplx{-1.0} * derivative_op(grid_p);
  return weyl_symmetrize(cplx{m} * inverse_coordinate_op(grid_p), x_hat);
}

GridOperator build_mass_op(const Grid1D& grid_x, double tau) {
  return weyl_symmetrize(cplx{tau} * inverse_coordinate_op(grid_x), derivative_op(grid_x));
}

GridOperator build_T_dual_position(const Grid1D& grid_x, double tau) {
  return block_diagonal(grid_x, [tau](double x) { return cplx{-1.0} * dual_generator(x, tau); });
}

GridOperator build_H_dual_position(const Grid1D& grid_x, double tau) {
  const auto& basis = dirac_basis();
  const GridOperator kinetic =
      spinor_kron(cplx{0.0, -1.0} * difference_matrix(grid_x), basis.alpha1);
  const GridOperator mass = build_mass_op(grid_x, tau);
  const GridOperator beta = block_diagonal(grid_x, [&](double) { return basis.beta; });
  return kinetic + beta * mass;
}

GridOperator build_T_dual_momentum(const Grid1D& grid_p, double tau) {
  const auto& basis = dirac_basis();
  // -(alpha_1 (i d/dp) + beta tau)
  const GridOperator x_part = spinor_kron(cplx{0.0, -1.0} * difference_matrix(grid_p), basis.alpha1);
  const GridOperator tau_part =
      block_diagonal(grid_p, [&](double) { return cplx{-tau} * basis.beta; });
  return x_part + tau_part;
}

double commutator_residual(const GridOperator& a, const GridOperator& b, cplx expected,
                           const GridSpinorField& probe) {
  require_same_dimension(a, b, "commutator_residual");
  if (probe.grid.size() != a.n_points) throw std::invalid_argument("commutator_residual: probe does not match operators");
  const std::size_t n = probe.grid.size();

  auto forbidden = [&](std::size_t i) {
    if (i < kProbeMargin || i + kProbeMargin >= n) return true;
    for (std::size_t g : probe.grid.gap_neighbours()) {
      const std::size_t d = i > g ? i - g : g - i;
      if (d < kProbeMargin) return true;
    }
    return false;
  };
  std::vector<bool> support(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const bool nonzero = std::any_of(probe.values[i].c.begin(), probe.values[i].c.end(),
                                     [](const cplx& v) { return v != cplx{}; });
    if (nonzero && forbidden(i)) {
      throw std::invalid_argument("commutator_residual: probe is nonzero within " +
                                  std::to_string(kProbeMargin) + " points of a boundary or the origin gap");
    }
    support[i] = nonzero;
  }
  const double scale = probe.max_abs();
  if (scale == 0.0) throw std::invalid_argument("commutator_residual: zero probe");

  const std::vector<cplx> f = probe.flatten();
  const std::vector<cplx> abf = matvec(a.matrix, matvec(b.matrix, f));
  const std::vector<cplx> baf = matvec(b.matrix, matvec(a.matrix, f));
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!support[i]) continue;
    for (std::size_t c = 0; c < kSpin; ++c) {
      const std::size_t k = i * kSpin + c;
      worst = std::max(worst, std::abs(abf[k] - baf[k] - expected * f[k]));
    }
  }
  return worst / scale;
}

GridSpinorField bump_probe(const Grid1D& g, double centre, double half_width, const Spinor4& spinor) {
  return GridSpinorField::sample(g, [&](double q) {
    const double r = (q - centre) / half_width;
    if (std::abs(r) >= 1.0) return Spinor4{};
    return cplx{std::exp(1.0 - 1.0 / (1.0 - r * r))} * spinor;
  });
}

double hermiticity_defect(const GridOperator& a, std::size_t skip) {
  const std::size_t n = a.n_points;
  if (2 * skip >= n) return 0.0;
  const std::size_t lo = kSpin * skip;
  const std::size_t hi = kSpin * (n - skip);
  double worst = 0.0;
  for (std::size_t r = lo; r < hi; ++r)
    for (std::size_t c = lo; c < hi; ++c)
      worst = std::max(worst, std::abs(a.matrix(r, c) - std::conj(a.matrix(c, r))));
  return worst;
}

}  // namespace toa
