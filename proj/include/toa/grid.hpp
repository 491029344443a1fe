#pragma once

// Uniform 1D grids that avoid the origin, 4-spinor fields sampled on them and
// dense operators acting on those fields (grid-major, spinor-minor ordering).

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "toa/complex_matrix.hpp"
#include "toa/dirac.hpp"

namespace toa {

enum class Axis { position, momentum, energy };

/// Uniform grid lower, lower + h, ..., upper. Position and momentum grids may
/// not contain the origin: either 0 lies outside [lower, upper], or every
/// point keeps |point| >= exclusion_radius > 0. Energy grids are unrestricted.
class Grid1D {
 public:
  static Grid1D uniform(Axis axis, std::size_t n_points, double lower, double upper,
                        double exclusion_radius = 0.0);
  /// n points at +-(j + 1/2) h, symmetric about and excluding the origin.
  /// n must be even.
  static Grid1D symmetric(Axis axis, std::size_t n_points, double spacing);

  Axis axis() const { return axis_; }
  std::size_t size() const { return points_.size(); }
  double lower() const { return points_.front(); }
  double upper() const { return points_.back(); }
  double spacing() const { return spacing_; }
  double exclusion_radius() const { return exclusion_radius_; }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }

  /// Same bounds, 2n - 1 points (spacing halved).
  Grid1D refined() const;

  /// Indices of the points adjacent to the excluded gap when the grid spans
  /// the origin; empty otherwise.
  std::vector<std::size_t> gap_neighbours() const;

 private:
  Grid1D(Axis axis, std::vector<double> points, double spacing, double exclusion_radius);

  Axis axis_;
  std::vector<double> points_;
  double spacing_;
  double exclusion_radius_;
};

struct GridSpinorField {
  Grid1D grid;
  std::vector<Spinor4> values;

  GridSpinorField(Grid1D g);
  GridSpinorField(Grid1D g, std::vector<Spinor4> v);

  static GridSpinorField sample(const Grid1D& g, const std::function<Spinor4(double)>& f);

  /// Flattened grid-major, spinor-minor vector of length 4 n.
  std::vector<cplx> flatten() const;
  static GridSpinorField unflatten(const Grid1D& g, const std::vector<cplx>& flat);

  /// max over points and components of |value|
  double max_abs() const;
};

/// Dense operator on GridSpinorField, dimension 4 n_points.
struct GridOperator {
  ComplexMatrix matrix;
  std::size_t n_points = 0;

  GridOperator() = default;
  GridOperator(ComplexMatrix m, std::size_t n);

  std::size_t dimension() const { return matrix.rows(); }
  GridSpinorField operator()(const GridSpinorField& f) const;
};

GridOperator operator+(const GridOperator& a, const GridOperator& b);
GridOperator operator-(const GridOperator& a, const GridOperator& b);
GridOperator operator*(cplx s, const GridOperator& a);
GridOperator operator*(const GridOperator& a, const GridOperator& b);

/// S (x) M for an n x n grid matrix S and a 4x4 spinor matrix M.
GridOperator spinor_kron(const ComplexMatrix& grid_part, const ComplexMatrix& spinor_part);
/// Block-diagonal operator with block(point) at each grid point.
GridOperator block_diagonal(const Grid1D& g, const std::function<ComplexMatrix(double)>& block);

/// Multiplication by the grid coordinate.
GridOperator coordinate_op(const Grid1D& g);
/// Multiplication by 1 / coordinate.
GridOperator inverse_coordinate_op(const Grid1D& g);
/// -i d/dq: central differences inside, second-order one-sided rows at both ends.
GridOperator derivative_op(const Grid1D& g);
/// The scalar (n x n) matrix of d/dq used by derivative_op.
ComplexMatrix difference_matrix(const Grid1D& g);

/// (F G + G F) / 2
GridOperator weyl_symmetrize(const GridOperator& f, const GridOperator& g);

/// alpha_1 p + beta m, block diagonal in p.
GridOperator build_H_momentum(const Grid1D& grid_p, double m);
/// (1/p)(alpha_1 p + beta m)(-i d/dp) + i beta m / 2p^2.
GridOperator build_T_dirac_momentum(const Grid1D& grid_p, double m);
/// m (p^-1 x + x p^-1) / 2 with x = i d/dp.
GridOperator build_tau_op(const Grid1D& grid_p, double m);
/// (tau/2) [p (1/x) + (1/x) p] with p = -i d/dx.
GridOperator build_mass_op(const Grid1D& grid_x, double tau);
/// -(alpha_1 x + beta tau) with x diagonal (position grid).
GridOperator build_T_dual_position(const Grid1D& grid_x, double tau);
/// alpha_1 p + beta m_hat on the position grid.
GridOperator build_H_dual_position(const Grid1D& grid_x, double tau);
/// -(alpha_1 x + beta tau) with x = i d/dp (momentum grid).
GridOperator build_T_dual_momentum(const Grid1D& grid_p, double tau);

/// Probes must vanish within this many points of each boundary and of the gap.
inline constexpr std::size_t kProbeMargin = 5;

/// max over the probe's support of |((AB - BA) - expected) probe| divided by
/// max |probe|. Throws std::invalid_argument if the probe violates the margin.
double commutator_residual(const GridOperator& a, const GridOperator& b, cplx expected,
                           const GridSpinorField& probe);

/// Smooth compactly supported probe exp(-1/(1-r^2)) * spinor with r measured
/// from `centre` in units of `half_width`.
GridSpinorField bump_probe(const Grid1D& g, double centre, double half_width,
                           const Spinor4& spinor);

/// Largest |A_ij - conj(A_ji)| over rows/cols whose grid index lies in
/// [skip, n - skip).
double hermiticity_defect(const GridOperator& a, std::size_t skip);

}  // namespace toa
