#include "toa/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace toa {

namespace {

constexpr double kLatticeTol = 1e-9;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

bool same_site(const ModeLabel& a, const ModeLabel& b) { return a.x == b.x && a.s == b.s; }

double wrap_unit(double v) { return v - std::floor(v); }

// Lattice coordinate r = x N dp / 2pi of every mode; validates that all modes
// share one fractional offset and that no two plane waves alias on the grid.
struct LatticeInfo {
  std::vector<double> r;
  double offset = 0.0;
};

LatticeInfo lattice_info(const ModeSet& modes, const Grid1D& p_grid) {
  const double n = static_cast<double>(p_grid.size());
  const double scale = n * p_grid.spacing() / (2.0 * std::numbers::pi);
  LatticeInfo info;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double r = modes[i].x * scale;
    const double frac = wrap_unit(r + kLatticeTol) - kLatticeTol;
    if (i == 0) info.offset = frac;
    if (std::abs(frac - info.offset) > kLatticeTol) {
      throw std::invalid_argument("quadratic form: mode x = " + std::to_string(modes[i].x) +
                                  " is not on the conjugate lattice of the momentum grid");
    }
    info.r.push_back(r);
  }

  // Sum_j exp(i p_j d) vanishes unless d N dp / 2pi is a multiple of N.
  auto aliases = [n](double r_diff) {
    const double q = r_diff / n;
    return std::abs(q - std::round(q)) < kLatticeTol;
  };
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      const auto& a = modes[i];
      const auto& b = modes[j];
      if (a.species == b.species) {
        if (a.x != b.x && aliases(info.r[i] - info.r[j])) {
          throw std::invalid_argument("quadratic form: modes at x = " + std::to_string(a.x) + " and " +
                                      std::to_string(b.x) + " alias on the momentum grid");
        }
      } else if (aliases(info.r[i] + info.r[j]) && std::abs(a.x + b.x) > kLatticeTol * std::abs(a.x)) {
        throw std::invalid_argument("quadratic form: electron/positron modes at x = " + std::to_string(a.x) +
                                    " and " + std::to_string(b.x) + " alias on the momentum grid");
      }
    }
  return info;
}

bool lattice_complete(const ModeSet& modes, const Grid1D& p_grid, const LatticeInfo& info) {
  const auto n = static_cast<long long>(p_grid.size());
  std::vector<bool> residue(static_cast<std::size_t>(n), false);
  std::vector<double> xs;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto k = static_cast<long long>(std::llround(info.r[i] - info.offset));
    residue[static_cast<std::size_t>(((k % n) + n) % n)] = true;
    xs.push_back(modes[i].x);
  }
  if (!std::all_of(residue.begin(), residue.end(), [](bool b) { return b; })) return false;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    if (!std::binary_search(xs.begin(), xs.end(), -x)) return false;
    for (Species sp : {Species::electron_event, Species::positron_event})
      for (Spin s : {Spin::up, Spin::down}) {
        const bool present = std::any_of(modes.labels().begin(), modes.labels().end(), [&](const ModeLabel& m) {
          return m.x == x && m.s == s && m.species == sp;
        });
        if (!present) return false;
      }
  }
  return true;
}

// Coefficient of mode m in the spinor component `alpha` of the field at p:
// zeta(x,s) e^{-ipx}/sqrt(2pi) for electron events (paired with a),
// xi(x,s) e^{+ipx}/sqrt(2pi) for positron events (paired with b^dagger).
std::array<cplx, 4> mode_coefficients(const ModeLabel& m, double p) {
  const EventKinematics e = m.kinematics();
  const bool electron = m.species == Species::electron_event;
  const Spinor4 w = electron ? zeta_spinor(e, m.s) : xi_spinor(e, m.s);
  const cplx phase = std::polar(kInvSqrt2Pi, electron ? -p * m.x : p * m.x);
  std::array<cplx, 4> c{};
  for (std::size_t a = 0; a < 4; ++a) c[a] = phase * w[a];
  return c;
}

const FockOperator& field_ladder(const ModeLabel& m, const LadderOps& ops, std::size_t j) {
  return m.species == Species::electron_event ? ops.annihilator[j] : ops.creator[j];
}

void accumulate(FockOperator& target, cplx coeff, const FockOperator& op) {
  auto t = target.data();
  const auto o = op.data();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (o[i] != cplx{}) t[i] += coeff * o[i];
}

}  // namespace

std::string to_string(Species s) { return s == Species::electron_event ? "electron" : "positron"; }

ModeSet::ModeSet(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  if (modes_.size() > kMaxModes) {
    throw std::invalid_argument("ModeSet: " + std::to_string(modes_.size()) + " modes exceed the cap of " +
                                std::to_string(kMaxModes));
  }
  for (const auto& m : modes_) {
    if (!(std::abs(m.x) > 0.0) || !std::isfinite(m.x)) throw std::invalid_argument("ModeSet: mode x must be finite and nonzero");
    if (!std::isfinite(m.tau)) throw std::invalid_argument("ModeSet: tau must be finite");
  }
  std::sort(modes_.begin(), modes_.end(), [](const ModeLabel& a, const ModeLabel& b) {
    return std::tuple(a.species, a.x, a.s) < std::tuple(b.species, b.x, b.s);
  });
  for (std::size_t i = 1; i < modes_.size(); ++i) {
    if (modes_[i].species == modes_[i - 1].species && same_site(modes_[i], modes_[i - 1])) {
      throw std::invalid_argument("ModeSet: duplicate (species, x, s) label");
    }
  }
}

ModeSet ModeSet::conjugate_lattice(const Grid1D& p_grid, std::span<const int> ks, double offset,
                                   std::span<const Spin> spins, std::span<const Species> species, double tau) {
  const double unit = 2.0 * std::numbers::pi / (static_cast<double>(p_grid.size()) * p_grid.spacing());
  std::vector<ModeLabel> modes;
  for (Species sp : species)
    for (int k : ks) {
      const double kk = static_cast<double>(k) + offset;
      if (kk == 0.0) throw std::invalid_argument("ModeSet::conjugate_lattice: lattice point k = 0 is excluded");
      for (Spin s : spins) modes.push_back({sp, kk * unit, s, tau});
    }
  return ModeSet(std::move(modes));
}

LadderOps build_ladder_ops(const ModeSet& modes) {
  const std::size_t n = modes.size();
  const std::size_t dim = modes.fock_dimension();
  LadderOps ops;
  for (std::size_t j = 0; j < n; ++j) {
    FockOperator a(dim, dim);
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t state = 0; state < dim; ++state) {
      if ((state & bit) == 0) continue;
      const int parity = std::popcount(state & (bit - 1)) % 2;
      a(state ^ bit, state) = parity == 0 ? 1.0 : -1.0;
    }
    ops.creator.push_back(a.adjoint());
    ops.annihilator.push_back(std::move(a));
  }
  return ops;
}

double car_residual(const LadderOps& ops) {
  const std::size_t n = ops.annihilator.size();
  if (n == 0) return 0.0;
  const std::size_t dim = ops.annihilator.front().rows();
  const FockOperator id = FockOperator::identity(dim);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FockOperator mixed = anticommutator(ops.annihilator[i], ops.creator[j]);
      if (i == j) mixed -= id;
      worst = std::max(worst, mixed.max_abs());
      worst = std::max(worst, anticommutator(ops.annihilator[i], ops.annihilator[j]).max_abs());
      worst = std::max(worst, anticommutator(ops.creator[i], ops.creator[j]).max_abs());
    }
  return worst;
}

FockOperator build_T_quantized(const ModeSet& modes) {
  const std::size_t dim = modes.fock_dimension();
  double zero_point = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    bool first = true;
    for (std::size_t j = 0; j < i; ++j) first = first && !same_site(modes[i], modes[j]);
    if (first) zero_point -= modes[i].arrival_time();
  }
  std::vector<cplx> diag(dim, zero_point);
  for (std::size_t state = 0; state < dim; ++state)
    for (std::size_t j = 0; j < modes.size(); ++j)
      if (state & (std::size_t{1} << j)) diag[state] += modes[j].arrival_time();
  return FockOperator::diagonal(diag);
}

std::vector<FockOperator> field_operators(const ModeSet& modes, const Grid1D& p_grid, const LadderOps& ops) {
  const std::size_t dim = modes.fock_dimension();
  const double norm_m = static_cast<double>(p_grid.size()) * p_grid.spacing() / (2.0 * std::numbers::pi);
  const double inv_sqrt_m = 1.0 / std::sqrt(norm_m);
  std::vector<FockOperator> phi(p_grid.size() * 4, FockOperator(dim, dim));
  for (std::size_t j = 0; j < p_grid.size(); ++j)
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto c = mode_coefficients(modes[m], p_grid[j]);
      for (std::size_t a = 0; a < 4; ++a) accumulate(phi[j * 4 + a], inv_sqrt_m * c[a], field_ladder(modes[m], ops, m));
    }
  return phi;
}

QuadraticFormResult quadratic_form_T(const ModeSet& modes, const Grid1D& p_grid) {
  if (p_grid.axis() != Axis::momentum) throw std::invalid_argument("quadratic_form_T: expected a momentum grid");
  lattice_info(modes, p_grid);
  const std::size_t dim = modes.fock_dimension();
  const LadderOps ops = build_ladder_ops(modes);
  const double norm_m = static_cast<double>(p_grid.size()) * p_grid.spacing() / (2.0 * std::numbers::pi);
  const double inv_sqrt_m = 1.0 / std::sqrt(norm_m);

  QuadraticFormResult r;
  r.t_quad = FockOperator(dim, dim);
  for (std::size_t j = 0; j < p_grid.size(); ++j) {
    std::vector<FockOperator> phi(4, FockOperator(dim, dim));
    std::vector<FockOperator> t_phi(4, FockOperator(dim, dim));
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const auto c = mode_coefficients(modes[m], p_grid[j]);
      const double t = modes[m].arrival_time();
      // T phi_{xs} = -T_x phi_{xs}, T phi_{-xs} = +T_x phi_{-xs}
      const double lambda = modes[m].species == Species::electron_event ? -t : t;
      const FockOperator& op = field_ladder(modes[m], ops, m);
      for (std::size_t a = 0; a < 4; ++a) {
        accumulate(phi[a], inv_sqrt_m * c[a], op);
        accumulate(t_phi[a], inv_sqrt_m * lambda * c[a], op);
      }
    }
    for (std::size_t a = 0; a < 4; ++a) {
      FockOperator term = phi[a].adjoint() * t_phi[a];
      term *= p_grid.spacing();
      r.t_quad += term;
    }
  }

  const FockOperator t35 = build_T_quantized(modes);
  const double plus = max_abs_diff(r.t_quad, t35);
  const double minus = max_abs_diff(r.t_quad, cplx{-1.0} * t35);
  r.sign = minus < plus ? -1 : 1;
  r.deviation = std::min(plus, minus);
  r.deviation_opposite = std::max(plus, minus);
  return r;
}

FieldCarResult field_car_check(const ModeSet& modes, const Grid1D& p_grid) {
  if (p_grid.axis() != Axis::momentum) throw std::invalid_argument("field_car_check: expected a momentum grid");
  const LatticeInfo info = lattice_info(modes, p_grid);
  const std::size_t dim = modes.fock_dimension();
  const LadderOps ops = build_ladder_ops(modes);
  const std::vector<FockOperator> phi = field_operators(modes, p_grid, ops);
  const ComplexMatrix& g0 = dirac_basis().gamma[0];

  // pi_beta = i (phibar gamma^0)_beta = i sum_{d,g} phi_d^dagger g0_{dg} g0_{gb}
  const ComplexMatrix g00 = g0 * g0;
  const std::size_t np = p_grid.size();
  std::vector<FockOperator> pi(np * 4, FockOperator(dim, dim));
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t d = 0; d < 4; ++d) {
      const FockOperator dag = phi[j * 4 + d].adjoint();
      for (std::size_t b = 0; b < 4; ++b)
        if (g00(d, b) != cplx{}) accumulate(pi[j * 4 + b], cplx{0.0, 1.0} * g00(d, b), dag);
    }

  FieldCarResult r;
  const FockOperator id = FockOperator::identity(dim);
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t l = 0; l < np; ++l)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
          FockOperator ac = anticommutator(phi[j * 4 + a], pi[l * 4 + b]);
          if (j == l && a == b) ac -= cplx{0.0, 1.0 / p_grid.spacing()} * id;
          r.residual = std::max(r.residual, ac.max_abs());
          r.phi_phi_residual = std::max(r.phi_phi_residual, anticommutator(phi[j * 4 + a], phi[l * 4 + b]).max_abs());
          r.pi_pi_residual = std::max(r.pi_pi_residual, anticommutator(pi[j * 4 + a], pi[l * 4 + b]).max_abs());
        }
  r.complete = lattice_complete(modes, p_grid, info);
  r.label = r.complete ? "complete basis" : "incomplete basis";
  return r;
}

EventStatistics event_statistics(std::span<const cplx> state, const FockOperator& t) {
  if (state.size() != t.rows()) throw std::invalid_argument("event_statistics: state does not match operator");
  double norm2 = 0.0;
  for (const auto& v : state) norm2 += std::norm(v);
  if (!(norm2 > 0.0)) throw std::invalid_argument("event_statistics: zero-norm state");
  const std::vector<cplx> t_psi = matvec(t, state);
  cplx mean{};
  double second = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    mean += std::conj(state[i]) * t_psi[i];
    second += std::norm(t_psi[i]);
  }
  EventStatistics s;
  s.mean = mean.real() / norm2;
  s.variance = std::max(0.0, second / norm2 - s.mean * s.mean);
  return s;
}

std::vector<cplx> basis_state(const ModeSet& modes, std::span<const std::size_t> occupied) {
  std::size_t index = 0;
  for (std::size_t j : occupied) {
    if (j >= modes.size()) throw std::invalid_argument("basis_state: mode index out of range");
    index |= std::size_t{1} << j;
  }
  std::vector<cplx> v(modes.fock_dimension());
  v[index] = 1.0;
  return v;
}

}  // namespace toa
