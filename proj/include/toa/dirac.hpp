#pragma once

// Dirac matrices in the standard representation, the particle spinors u/v,
// the dual event spinors zeta/xi and the kinematic packages that feed them.
// Momentum is along x throughout, so only alpha_1 and sigma_1 appear.

#include <array>
#include <complex>
#include <utility>

#include "toa/complex_matrix.hpp"

namespace toa {

enum class Spin { up, down };  // s = +1/2, -1/2

inline double spin_value(Spin s) { return s == Spin::up ? 0.5 : -0.5; }

struct Spinor4 {
  std::array<cplx, 4> c{};

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  Spinor4& operator+=(const Spinor4& o);
  Spinor4& operator-=(const Spinor4& o);
  Spinor4& operator*=(cplx s);

  double norm() const;
  bool finite() const;
};

Spinor4 operator+(Spinor4 a, const Spinor4& b);
Spinor4 operator-(Spinor4 a, const Spinor4& b);
Spinor4 operator*(cplx s, Spinor4 a);

/// a^dagger b
cplx inner(const Spinor4& a, const Spinor4& b);
/// M s for a 4x4 matrix M.
Spinor4 apply(const ComplexMatrix& m, const Spinor4& s);
/// max_i |a_i - b_i|
double max_abs_diff(const Spinor4& a, const Spinor4& b);

struct DiracBasis {
  std::array<ComplexMatrix, 4> gamma;  // gamma^0 .. gamma^3
  ComplexMatrix alpha1;                // gamma^0 gamma^1
  ComplexMatrix beta;                  // gamma^0
  ComplexMatrix sigma1;                // diag(1, -1)
  std::array<cplx, 2> eta_up{1.0, 0.0};
  std::array<cplx, 2> eta_down{0.0, 1.0};

  const std::array<cplx, 2>& eta(Spin s) const { return s == Spin::up ? eta_up : eta_down; }
};

DiracBasis build_dirac_basis();
/// Shared immutable instance.
const DiracBasis& dirac_basis();

/// max over mu, nu of || {gamma^mu, gamma^nu} - 2 g^{mu nu} I ||_inf with
/// g = diag(1, -1, -1, -1).
double clifford_residual(const DiracBasis& basis);

/// (m, p, E_p) with E_p = sqrt(p^2 + m^2). Requires m >= 0 and p != 0.
class MomentumKinematics {
 public:
  MomentumKinematics(double m, double p);

  double m() const { return m_; }
  double p() const { return p_; }
  double energy() const { return energy_; }

 private:
  double m_;
  double p_;
  double energy_;
};

/// (x, tau, T_x) with T_x = sqrt(x^2 + tau^2), the positive root. Requires x != 0.
class EventKinematics {
 public:
  EventKinematics(double x, double tau);

  /// tau = x m / p; T_x then equals |x E_p / p|.
  static EventKinematics from_momentum(const MomentumKinematics& k, double x);

  double x() const { return x_; }
  double tau() const { return tau_; }
  double arrival_time() const { return arrival_time_; }

 private:
  double x_;
  double tau_;
  double arrival_time_;
};

Spinor4 u_spinor(const MomentumKinematics& k, Spin s);
Spinor4 v_spinor(const MomentumKinematics& k, Spin s);
Spinor4 zeta_spinor(const EventKinematics& e, Spin s);
Spinor4 xi_spinor(const EventKinematics& e, Spin s);

/// alpha_1 p + beta m
ComplexMatrix dirac_hamiltonian(double p, double m);
/// alpha_1 x + beta tau
ComplexMatrix dual_generator(double x, double tau);

/// (|| (alpha_1 x + beta tau) zeta - T_x zeta ||, || (alpha_1 x - beta tau) xi - T_x xi ||)
std::pair<double, double> dual_eigen_residual(const EventKinematics& e, Spin s);

}  // namespace toa
