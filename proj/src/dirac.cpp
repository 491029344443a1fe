#include "toa/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace toa {

Spinor4& Spinor4::operator+=(const Spinor4& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

Spinor4& Spinor4::operator-=(const Spinor4& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
  return *this;
}

Spinor4& Spinor4::operator*=(cplx s) {
  for (auto& v : c) v *= s;
  return *this;
}

double Spinor4::norm() const { return std::sqrt(std::real(inner(*this, *this))); }

bool Spinor4::finite() const {
  return std::all_of(c.begin(), c.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

Spinor4 operator+(Spinor4 a, const Spinor4& b) { return a += b; }
Spinor4 operator-(Spinor4 a, const Spinor4& b) { return a -= b; }
Spinor4 operator*(cplx s, Spinor4 a) { return a *= s; }

cplx inner(const Spinor4& a, const Spinor4& b) {
  cplx sum{};
  for (std::size_t i = 0; i < 4; ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

Spinor4 apply(const ComplexMatrix& m, const Spinor4& s) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("apply: expected a 4x4 matrix");
  Spinor4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] += m(r, c) * s[c];
  return out;
}

double max_abs_diff(const Spinor4& a, const Spinor4& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

DiracBasis build_dirac_basis() {
  const cplx I{0.0, 1.0};
  DiracBasis b;
  b.sigma1 = ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
  b.beta = ComplexMatrix(4, 4, {1.0, 0.0, 0.0, 0.0,  //
                                0.0, 1.0, 0.0, 0.0,  //
                                0.0, 0.0, -1.0, 0.0,  //
                                0.0, 0.0, 0.0, -1.0});
  // alpha_i = [[0, s_i], [s_i, 0]] with s_1 = diag(1,-1) and s_2, s_3 the two
  // remaining Pauli matrices, so that the three alphas anticommute.
  const ComplexMatrix s2(2, 2, {0.0, 1.0, 1.0, 0.0});
  const ComplexMatrix s3(2, 2, {0.0, -I, I, 0.0});
  auto off_diagonal = [](const ComplexMatrix& s) {
    return kron(ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}), s);
  };
  b.alpha1 = off_diagonal(b.sigma1);
  const ComplexMatrix alpha2 = off_diagonal(s2);
  const ComplexMatrix alpha3 = off_diagonal(s3);

  // gamma^0 = beta, gamma^i = beta alpha_i
  b.gamma[0] = b.beta;
  b.gamma[1] = b.beta * b.alpha1;
  b.gamma[2] = b.beta * alpha2;
  b.gamma[3] = b.beta * alpha3;
  return b;
}

const DiracBasis& dirac_basis() {
  static const DiracBasis basis = build_dirac_basis();
  return basis;
}

double clifford_residual(const DiracBasis& basis) {
  static constexpr std::array<double, 4> metric{1.0, -1.0, -1.0, -1.0};
  double worst = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      ComplexMatrix r = anticommutator(basis.gamma[mu], basis.gamma[nu]);
      if (mu == nu) r -= cplx{2.0 * metric[mu]} * ComplexMatrix::identity(4);
      worst = std::max(worst, r.max_abs());
    }
  return worst;
}

MomentumKinematics::MomentumKinematics(double m, double p) : m_(m), p_(p) {
  if (!std::isfinite(m) || !std::isfinite(p)) throw std::invalid_argument("MomentumKinematics: non-finite input");
  if (m < 0.0) throw std::invalid_argument("MomentumKinematics: mass must be >= 0");
  if (p == 0.0) throw std::invalid_argument("MomentumKinematics: p must be nonzero");
  energy_ = std::hypot(p, m);
}

EventKinematics::EventKinematics(double x, double tau) : x_(x), tau_(tau) {
  if (!std::isfinite(x) || !std::isfinite(tau)) throw std::invalid_argument("EventKinematics: non-finite input");
  if (x == 0.0) throw std::invalid_argument("EventKinematics: x must be nonzero");
  arrival_time_ = std::hypot(x, tau);
}

EventKinematics EventKinematics::from_momentum(const MomentumKinematics& k, double x) {
  return EventKinematics(x, x * k.m() / k.p());
}

namespace {

// sqrt((a + c) / 2c) * (eta ; sigma_1 b / (a + c) eta), block-swapped when `swap`.
// (a, b, c) is (m, p, E_p) for u/v and (tau, x, T_x) for zeta/xi.
Spinor4 two_block_spinor(double a, double b, double c, Spin s, bool swap) {
  // a + c cancels when a < 0 dominates; c^2 = a^2 + b^2 gives the stable form.
  const double denom = a >= 0.0 ? a + c : b * b / (c - a);
  if (!(denom > 0.0)) throw std::domain_error("spinor: normalisation a + c must be positive");
  const double norm = std::sqrt(denom / (2.0 * c));
  const double ratio = b / denom;
  const auto& basis = dirac_basis();
  const auto& eta = basis.eta(s);
  Spinor4 out;
  for (std::size_t i = 0; i < 2; ++i) {
    const cplx top = norm * eta[i];
    const cplx bottom = norm * ratio * basis.sigma1(i, i) * eta[i];
    out[i] = swap ? bottom : top;
    out[i + 2] = swap ? top : bottom;
  }
  return out;
}

}  // namespace

Spinor4 u_spinor(const MomentumKinematics& k, Spin s) {
  return two_block_spinor(k.m(), k.p(), k.energy(), s, false);
}

Spinor4 v_spinor(const MomentumKinematics& k, Spin s) {
  return two_block_spinor(k.m(), k.p(), k.energy(), s, true);
}

Spinor4 zeta_spinor(const EventKinematics& e, Spin s) {
  return two_block_spinor(e.tau(), e.x(), e.arrival_time(), s, false);
}

Spinor4 xi_spinor(const EventKinematics& e, Spin s) {
  return two_block_spinor(e.tau(), e.x(), e.arrival_time(), s, true);
}

ComplexMatrix dirac_hamiltonian(double p, double m) {
  const auto& b = dirac_basis();
  return cplx{p} * b.alpha1 + cplx{m} * b.beta;
}

ComplexMatrix dual_generator(double x, double tau) { return dirac_hamiltonian(x, tau); }

std::pair<double, double> dual_eigen_residual(const EventKinematics& e, Spin s) {
  const double t = e.arrival_time();
  const Spinor4 z = zeta_spinor(e, s);
  const Spinor4 xi = xi_spinor(e, s);
  const Spinor4 rz = apply(dual_generator(e.x(), e.tau()), z) - cplx{t} * z;
  const Spinor4 rx = apply(dual_generator(e.x(), -e.tau()), xi) - cplx{t} * xi;
  return {rz.norm(), rx.norm()};
}

}  // namespace toa
