#pragma once

// Finite fermionic Fock space over arrival-event modes. Ladder operators are
// dense matrices in the occupation basis built with Jordan-Wigner parity
// strings; bit j of a basis index is the occupation of mode j.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "toa/complex_matrix.hpp"
#include "toa/dirac.hpp"
#include "toa/grid.hpp"

namespace toa {

enum class Species { electron_event, positron_event };

std::string to_string(Species s);

struct ModeLabel {
  Species species = Species::electron_event;
  double x = 1.0;
  Spin s = Spin::up;
  double tau = 0.0;

  EventKinematics kinematics() const { return EventKinematics(x, tau); }
  double arrival_time() const { return kinematics().arrival_time(); }
};

/// 2M <= 14 modes, Fock dimension <= 16384.
inline constexpr std::size_t kMaxModes = 14;

/// Modes in canonical order: electron events first, then positron events;
/// within a species ascending x, then spin up before spin down.
class ModeSet {
 public:
  ModeSet() = default;
  explicit ModeSet(std::vector<ModeLabel> modes);

  /// Modes at x_k = 2 pi (k + offset) / (N dp) on the conjugate lattice of a
  /// uniform momentum grid with N points. offset = 0 requires k != 0;
  /// offset = 1/2 gives a lattice that avoids the origin for every k.
  static ModeSet conjugate_lattice(const Grid1D& p_grid, std::span<const int> ks, double offset,
                                   std::span<const Spin> spins, std::span<const Species> species,
                                   double tau);

  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }
  const ModeLabel& operator[](std::size_t i) const { return modes_[i]; }
  const std::vector<ModeLabel>& labels() const { return modes_; }
  std::size_t fock_dimension() const { return std::size_t{1} << modes_.size(); }

 private:
  std::vector<ModeLabel> modes_;
};

using FockOperator = ComplexMatrix;

struct LadderOps {
  // annihilator[j] is a(x,s) for electron-event modes and b(x,s) for
  // positron-event modes; creator[j] is its adjoint.
  std::vector<FockOperator> annihilator;
  std::vector<FockOperator> creator;
};

LadderOps build_ladder_ops(const ModeSet& modes);

/// Largest entry of any {c_i, c_j^dagger} - delta_ij or {c_i, c_j} over all pairs.
double car_residual(const LadderOps& ops);

/// sum over (x,s) of [a^dagger a + b^dagger b - 1] T_x. The -1 term is
/// counted once per distinct (x, s) present in the set.
FockOperator build_T_quantized(const ModeSet& modes);

struct QuadraticFormResult {
  FockOperator t_quad;
  int sign = 0;                    // sigma minimising || t_quad - sigma T ||_inf
  double deviation = 0.0;          // || t_quad - sigma T ||_inf
  double deviation_opposite = 0.0; // same with -sigma
};

/// Conserved charge sum_j phi^dagger(p_j) (T phi)(p_j) dp built from the
/// operator-valued mode expansion, with T acting on each elementary mode by
/// its eigenvalue. Throws std::invalid_argument if the modes are off the
/// conjugate lattice of p_grid or alias one another.
QuadraticFormResult quadratic_form_T(const ModeSet& modes, const Grid1D& p_grid);

struct FieldCarResult {
  double residual = 0.0;          // max || {phi(p_j), pi(p_l)} - (i/dp) delta_jl I ||
  double phi_phi_residual = 0.0;  // max || {phi(p_j), phi(p_l)} ||
  double pi_pi_residual = 0.0;    // max || {pi(p_j), pi(p_l)} ||
  bool complete = false;
  std::string label;              // "complete basis" or "incomplete basis"
};

FieldCarResult field_car_check(const ModeSet& modes, const Grid1D& p_grid);

/// Operator-valued field components phi_alpha(p_j) at eps = 0, index
/// [j * 4 + alpha]. Exposed for tests.
std::vector<FockOperator> field_operators(const ModeSet& modes, const Grid1D& p_grid, const LadderOps& ops);

struct EventStatistics {
  double mean = 0.0;
  double variance = 0.0;
};

/// <T> and <T^2> - <T>^2 for a Hermitian T; the state is normalised internally.
EventStatistics event_statistics(std::span<const cplx> state, const FockOperator& t);

/// Occupation-basis vector with the given modes occupied.
std::vector<cplx> basis_state(const ModeSet& modes, std::span<const std::size_t> occupied);

}  // namespace toa
