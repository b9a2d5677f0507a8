// Copyright 2026 The jccat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JCCAT_JC_CORE_HPP
#define JCCAT_JC_CORE_HPP

// Closed resonant Jaynes-Cummings dynamics
//
//   H = w a^dag a + (w/2) sigma_z + g (sigma_+ a + sigma_- a^dag).
//
// H conserves n_S + n_C, so it splits into the ground state |0,g> and the
// 2x2 blocks {|n+1,g>, |n,e>}. All propagation happens on cavity levels
// 0..n_trunc+1: a state supported on levels <= n_trunc then only populates
// complete blocks and the truncated evolution is exact.

#include <cmath>
#include <span>
#include <vector>

#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/linalg.hpp"

namespace jccat {

struct SimulationParams {
  double omega = 2.0 * M_PI;
  double g = M_PI;
  int n_trunc = 20;

  void validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega))
      throw invalid_parameter("SimulationParams: omega must be positive");
    if (g == 0.0 || !std::isfinite(g)) throw invalid_parameter("SimulationParams: g must be nonzero");
    if (n_trunc < 2) throw invalid_parameter("SimulationParams: n_trunc must be >= 2");
  }

  /// Number of cavity levels used for propagation.
  int propagation_dim() const { return n_trunc + 2; }
};

/// c_n = cos(g t sqrt(n+1)) and s_n = sin(g t sqrt(n+1)) for n >= -1, and the
/// block phases phi_n = exp(-i (n + 1/2) w t).
class RabiTable {
 public:
  RabiTable(const SimulationParams& p, double t, int max_n)
      : c_(max_n + 2), s_(max_n + 2), phi_(max_n + 2) {
    for (int n = -1; n <= max_n; ++n) {
      const double angle = p.g * t * std::sqrt(n + 1.0);
      c_[n + 1] = std::cos(angle);
      s_[n + 1] = std::sin(angle);
      phi_[n + 1] = std::polar(1.0, -(n + 0.5) * p.omega * t);
    }
  }

  double c(int n) const { return in_range(n) ? c_[n + 1] : 1.0; }
  double s(int n) const { return in_range(n) ? s_[n + 1] : 0.0; }
  cplx phi(int n) const { return phi_[n + 1]; }
  int max_n() const { return static_cast<int>(c_.size()) - 2; }

 private:
  bool in_range(int n) const { return n >= -1 && n + 1 < static_cast<int>(c_.size()); }
  std::vector<double> c_, s_;
  std::vector<cplx> phi_;
};

/// Dense truncated Hamiltonian on the propagation space. Used by the Lindblad
/// generator and as a reference in tests.
inline Matrix jc_hamiltonian(const SimulationParams& p) {
  const int d = p.propagation_dim();
  Matrix h = Matrix::Zero(2 * d, 2 * d);
  for (int n = 0; n < d; ++n) {
    h(2 * n, 2 * n) = p.omega * n - 0.5 * p.omega;
    h(2 * n + 1, 2 * n + 1) = p.omega * n + 0.5 * p.omega;
    if (n + 1 < d) {
      // sigma_+ a |n+1, g> = sqrt(n+1) |n, e>
      const double coupling = p.g * std::sqrt(n + 1.0);
      h(2 * n + 1, 2 * (n + 1)) = coupling;
      h(2 * (n + 1), 2 * n + 1) = coupling;
    }
  }
  return h;
}

struct Propagator {
  double time = 0.0;
  Matrix matrix;
};

/// Closed-form U(t): phase on |0,g>, a rotation by g t sqrt(n+1) with phase
/// phi_n on each block {|n+1,g>, |n,e>}.
inline Propagator jc_propagator(const SimulationParams& p, double t) {
  p.validate();
  if (t < 0.0) throw invalid_parameter("jc_propagator: t must be >= 0");
  const int d = p.propagation_dim();
  const RabiTable rt(p, t, d);
  Matrix u = Matrix::Zero(2 * d, 2 * d);
  u(0, 0) = rt.phi(-1);
  for (int n = 0; n + 1 < d; ++n) {
    const int g_idx = 2 * (n + 1);
    const int e_idx = 2 * n + 1;
    u(g_idx, g_idx) = rt.phi(n) * rt.c(n);
    u(e_idx, e_idx) = rt.phi(n) * rt.c(n);
    u(g_idx, e_idx) = -kI * rt.phi(n) * rt.s(n);
    u(e_idx, g_idx) = -kI * rt.phi(n) * rt.s(n);
  }
  // |d-1, e> has no partner inside the truncation; it only picks up its phase.
  u(2 * d - 1, 2 * d - 1) = rt.phi(d - 1);
  return {t, std::move(u)};
}

namespace detail {

inline CavityState embed_for_propagation(const CavityState& cavity, const SimulationParams& p) {
  if (cavity.dim() > p.n_trunc + 1)
    throw truncation_too_small("cavity state has more levels than n_trunc + 1 = " +
                               std::to_string(p.n_trunc + 1));
  return cavity.embedded(p.propagation_dim());
}

// Cavity operator K with K|m> = coef(m) |m + shift>.
struct ShiftOp {
  int shift;
  Vector coef;
};

// acc += w * K1 rho K2^dag, evaluated entrywise.
inline void accumulate_sandwich(Matrix& acc, cplx w, const ShiftOp& k1, const Matrix& rho,
                                const ShiftOp& k2) {
  const int d = static_cast<int>(rho.rows());
  for (int m = 0; m < d; ++m) {
    const int src_m = m - k2.shift;
    if (src_m < 0 || src_m >= d) continue;
    const cplx right = std::conj(k2.coef(src_m));
    if (right == cplx(0.0)) continue;
    for (int n = 0; n < d; ++n) {
      const int src_n = n - k1.shift;
      if (src_n < 0 || src_n >= d) continue;
      acc(n, m) += w * k1.coef(src_n) * rho(src_n, src_m) * right;
    }
  }
}

}  // namespace detail

/// sigma_SC(t) = U (rho (x) chi) U^dag on the propagation space.
inline JointState evolve_closed(const CavityState& cavity, const AtomState& atom,
                                const SimulationParams& p, double t) {
  const CavityState rho = detail::embed_for_propagation(cavity, p);
  const Propagator u = jc_propagator(p, t);
  const Matrix joint = linalg::kron(rho.matrix(), atom.matrix());
  return JointState::trusted(linalg::hermitian_part(u.matrix * joint * u.matrix.adjoint()));
}

/// Reduced cavity state Tr_C[U (rho (x) chi) U^dag] evaluated entrywise from
/// the block structure of U, without forming the joint state. The result
/// lives on n_trunc + 2 levels.
inline CavityState reduced_cavity_analytic(const CavityState& cavity, const AtomState& atom,
                                           const SimulationParams& p, double t) {
  p.validate();
  const CavityState rho = detail::embed_for_propagation(cavity, p);
  const int d = rho.dim();
  const RabiTable rt(p, t, d);

  // <a|U|b> as cavity operators.
  detail::ShiftOp k_gg{0, Vector(d)}, k_eg{-1, Vector(d)}, k_ee{0, Vector(d)}, k_ge{1, Vector(d)};
  for (int m = 0; m < d; ++m) {
    k_gg.coef(m) = rt.phi(m - 1) * rt.c(m - 1);
    k_eg.coef(m) = -kI * rt.phi(m - 1) * rt.s(m - 1);
    k_ee.coef(m) = rt.phi(m) * rt.c(m);
    k_ge.coef(m) = m + 1 < d ? -kI * rt.phi(m) * rt.s(m) : cplx(0.0);
  }

  const Matrix chi = atom.matrix();
  const detail::ShiftOp* ops[2][2] = {{&k_gg, &k_ge}, {&k_eg, &k_ee}};  // ops[a][b] = <a|U|b>
  Matrix out = Matrix::Zero(d, d);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp)
        detail::accumulate_sandwich(out, chi(b, bp), *ops[a][b], rho.matrix(), *ops[a][bp]);
  return CavityState::trusted(linalg::hermitian_part(out));
}

/// Atom state at each time from the closed-form series for q(t) and r(t).
inline std::vector<AtomState> atom_trajectory(const CavityState& cavity, const AtomState& atom,
                                              const SimulationParams& p,
                                              std::span<const double> t_grid) {
  p.validate();
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1]) throw invalid_parameter("atom_trajectory: t_grid not monotone");

  const int d = cavity.dim();
  const double q = atom.q();
  const cplx r = atom.r();
  std::vector<AtomState> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const RabiTable rt(p, t, d + 2);
    const cplx e = std::polar(1.0, p.omega * t);
    double qt = 0.0;
    cplx coh_flip{0.0}, coh_keep{0.0}, coh_conj{0.0}, coh_q{0.0};
    for (int n = 0; n < d; ++n) {
      const double pn = cavity.population(n);
      qt += q * pn * rt.c(n - 1) * rt.c(n - 1) + (1.0 - q) * pn * rt.s(n) * rt.s(n) +
            (kI * r * cavity(n + 1, n)).real() * 2.0 * rt.s(n) * rt.c(n);
      coh_flip += cavity(n, n + 1) * rt.s(n) * rt.c(n + 1);
      coh_keep += pn * rt.c(n - 1) * rt.c(n);
      coh_conj += cavity(n, n + 2) * rt.s(n) * rt.s(n + 1);
      coh_q += cavity(n, n + 1) * rt.s(n) * (rt.c(n - 1) + rt.c(n + 1));
    }
    const cplx rt_val = -kI * e * coh_flip + r * e * coh_keep + std::conj(r) * e * coh_conj +
                        kI * e * q * coh_q;
    // Round-off can push q a hair outside [0, 1].
    out.emplace_back(std::clamp(qt, 0.0, 1.0), rt_val);
  }
  return out;
}

inline AtomState atom_at(const CavityState& cavity, const AtomState& atom,
                         const SimulationParams& p, double t) {
  const double grid[1] = {t};
  return atom_trajectory(cavity, atom, p, grid).front();
}

}  // namespace jccat

#endif  // JCCAT_JC_CORE_HPP
