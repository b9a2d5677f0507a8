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

#ifndef JCCAT_CATALYST_HPP
#define JCCAT_CATALYST_HPP

// Catalytic atom states: chi with Tr_S[Phi(rho (x) chi)] = chi.
//
// For closed dynamics the atom map chi -> Tr_S[U (rho (x) chi) U^dag] is
// affine in (q, r) and can be inverted in closed form. The general route
// builds the 4x4 superoperator of the effective atom channel and solves for
// its fixed point.

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"
#include "jccat/linalg.hpp"

namespace jccat {

/// Relative size below which a denominator marks the time as degenerate.
inline constexpr double kDegeneracyThreshold = 1e-9;

struct AuxFunctions {
  cplx a1, a2, a3, a4;
};

/// The four series that make the atom map affine:
///   r(t) = r (a1 + 1) + q a2 + r* a3 + a4.
inline AuxFunctions aux_functions(const CavityState& cavity, const SimulationParams& p, double t) {
  p.validate();
  const int d = cavity.dim();
  const RabiTable rt(p, t, d + 2);
  cplx keep{0.0}, mix{0.0}, conj_term{0.0}, flip{0.0};
  for (int n = 0; n < d; ++n) {
    keep += cavity.population(n) * rt.c(n - 1) * rt.c(n);
    mix += cavity(n, n + 1) * rt.s(n) * (rt.c(n - 1) + rt.c(n + 1));
    conj_term += cavity(n, n + 2) * rt.s(n) * rt.s(n + 1);
    flip += cavity(n, n + 1) * rt.s(n) * rt.c(n + 1);
  }
  const cplx e = std::polar(1.0, p.omega * t);
  return {e * keep - 1.0, kI * e * mix, e * conj_term, -kI * e * flip};
}

// --- effective atom channel ---------------------------------------------------

/// Superoperator on 2x2 atom operators in column-major vectorization,
/// vec(X) = (x00, x10, x01, x11).
class EffectiveChannel {
 public:
  EffectiveChannel() : m_(Matrix::Identity(4, 4)) {}
  explicit EffectiveChannel(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != 4 || m_.cols() != 4)
      throw dimension_mismatch("EffectiveChannel: expected a 4x4 matrix");
  }

  const Matrix& matrix() const { return m_; }

  static Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), 4); }
  static Matrix unvec(const Vector& v) { return Eigen::Map<const Matrix>(v.data(), 2, 2); }

  Matrix apply(const Matrix& x) const { return unvec(m_ * vec(x)); }
  AtomState apply(const AtomState& a) const { return AtomState::from_matrix(apply(a.matrix())); }

  /// Largest deviation of Phi^dag(I) from I.
  double trace_preservation_defect() const {
    Vector id(4);
    id << 1.0, 0.0, 0.0, 1.0;
    return (m_.adjoint() * id - id).cwiseAbs().maxCoeff();
  }

  /// Choi matrix sum_ij E_ij (x) Phi(E_ij).
  Matrix choi() const {
    Matrix j = Matrix::Zero(4, 4);
    for (int col = 0; col < 2; ++col)
      for (int row = 0; row < 2; ++row) {
        Matrix e = Matrix::Zero(2, 2);
        e(row, col) = 1.0;
        j.block(2 * row, 2 * col, 2, 2) = apply(e);
      }
    return j;
  }

  double choi_min_eigenvalue() const { return linalg::min_eigenvalue(choi()); }

  /// Pauli transfer matrix T_ij = Tr[P_i Phi(P_j)] / 2 with P = (I, X, Y, Z).
  Eigen::Matrix4d pauli_transfer() const {
    const auto paulis = pauli_basis();
    Eigen::Matrix4d t;
    for (int j = 0; j < 4; ++j) {
      const Matrix out = apply(paulis[j]);
      for (int i = 0; i < 4; ++i) t(i, j) = 0.5 * (paulis[i] * out).trace().real();
    }
    return t;
  }

  static std::array<Matrix, 4> pauli_basis() {
    std::array<Matrix, 4> p;
    for (auto& m : p) m = Matrix::Zero(2, 2);
    p[0] << 1.0, 0.0, 0.0, 1.0;
    p[1] << 0.0, 1.0, 1.0, 0.0;
    p[2] << 0.0, -kI, kI, 0.0;
    p[3] << 1.0, 0.0, 0.0, -1.0;
    return p;
  }

 private:
  Matrix m_;
};

/// A linear map on operators of cavity (x) atom, acting on cavity levels
/// 0..cavity_dim-1.
struct JointChannel {
  int cavity_dim = 0;
  std::function<Matrix(const Matrix&)> apply;
};

inline JointChannel unitary_channel(const SimulationParams& p, double t) {
  Matrix u = jc_propagator(p, t).matrix;
  return {p.propagation_dim(), [u = std::move(u)](const Matrix& x) -> Matrix {
            return u * x * u.adjoint();
          }};
}

namespace detail {

inline CavityState embed_for_channel(const CavityState& cavity, const JointChannel& ch) {
  if (cavity.dim() > ch.cavity_dim)
    throw truncation_too_small("cavity state does not fit the channel's cavity space");
  return cavity.embedded(ch.cavity_dim);
}

}  // namespace detail

/// chi -> Tr_S[Phi(rho (x) chi)] assembled column by column.
inline EffectiveChannel effective_atom_channel(const CavityState& cavity, const JointChannel& ch) {
  const CavityState rho = detail::embed_for_channel(cavity, ch);
  Matrix m(4, 4);
  for (int col = 0; col < 2; ++col)
    for (int row = 0; row < 2; ++row) {
      Matrix e = Matrix::Zero(2, 2);
      e(row, col) = 1.0;
      const Matrix out = trace_out_cavity(ch.apply(linalg::kron(rho.matrix(), e)));
      m.col(2 * col + row) = EffectiveChannel::vec(out);
    }
  return EffectiveChannel(std::move(m));
}

/// The closed-dynamics atom channel from the block structure of U, in O(dim).
inline EffectiveChannel closed_atom_channel(const CavityState& cavity, const SimulationParams& p,
                                            double t) {
  p.validate();
  const int d = cavity.dim();
  const RabiTable rt(p, t, d + 2);
  double stay_g = 0.0, to_g = 0.0, stay_e = 0.0, to_e = 0.0;
  cplx flip_gg{0.0}, coh_a{0.0}, coh_e{0.0}, coh_c{0.0}, coh_d{0.0};
  for (int n = 0; n < d; ++n) {
    const double pn = cavity.population(n);
    const double pn1 = cavity.population(n + 1);
    stay_g += pn * rt.c(n - 1) * rt.c(n - 1);
    to_g += pn * rt.s(n) * rt.s(n);
    stay_e += pn * rt.c(n) * rt.c(n);
    to_e += pn1 * rt.s(n) * rt.s(n);
    flip_gg += kI * cavity(n + 1, n) * rt.s(n) * rt.c(n);
    coh_a += pn * rt.c(n - 1) * rt.c(n);
    coh_e += cavity(n, n + 1) * rt.c(n - 1) * rt.s(n);
    coh_c += cavity(n, n + 1) * rt.s(n) * rt.c(n + 1);
    coh_d += cavity(n, n + 2) * rt.s(n) * rt.s(n + 1);
  }
  const cplx e = std::polar(1.0, p.omega * t);

  // Rows and columns ordered (00, 10, 01, 11).
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = stay_g;
  m(0, 3) = to_g;
  m(0, 2) = flip_gg;
  m(0, 1) = std::conj(flip_gg);
  m(3, 3) = stay_e;
  m(3, 0) = to_e;
  m(3, 2) = -flip_gg;
  m(3, 1) = -std::conj(flip_gg);
  m(2, 2) = e * coh_a;
  m(2, 0) = kI * e * coh_e;
  m(2, 3) = -kI * e * coh_c;
  m(2, 1) = e * coh_d;
  m(1, 1) = std::conj(m(2, 2));
  m(1, 0) = std::conj(m(2, 0));
  m(1, 3) = std::conj(m(2, 3));
  m(1, 2) = std::conj(m(2, 1));
  return EffectiveChannel(std::move(m));
}

// --- fixed points ---------------------------------------------------------------

/// Fixed point of a CPTP qubit channel. On a degenerate fixed space the
/// Bloch vector of minimum length is returned, which is the fixed point of
/// maximum entropy.
inline AtomState fixed_point(const EffectiveChannel& ch) {
  const Eigen::Matrix4d t = ch.pauli_transfer();
  const Eigen::Matrix3d a = t.bottomRightCorner<3, 3>();
  const Eigen::Vector3d c = t.block<3, 1>(1, 0);
  const Eigen::Matrix3d lhs = Eigen::Matrix3d::Identity() - a;

  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix3d> cod;
  cod.setThreshold(1e-10);
  cod.compute(lhs);
  const Eigen::Vector3d b = cod.solve(c);
  if ((lhs * b - c).norm() > 1e-9)
    throw no_psd_fixed_point("fixed_point: no Hermitian unit-trace fixed point");
  const double len = b.norm();
  if (len > 1.0 + 1e-8) throw no_psd_fixed_point("fixed_point: fixed point is not positive");
  const Eigen::Vector3d bc = len > 1.0 ? Eigen::Vector3d(b / len) : b;

  const auto paulis = EffectiveChannel::pauli_basis();
  const Matrix rho =
      0.5 * (paulis[0] + bc(0) * paulis[1] + bc(1) * paulis[2] + bc(2) * paulis[3]);
  if (linalg::max_abs(ch.apply(rho) - rho) > 1e-9)
    throw no_psd_fixed_point("fixed_point: residual too large");
  return {std::clamp(rho(0, 0).real(), 0.0, 1.0), rho(0, 1)};
}

// --- catalytic constraint ---------------------------------------------------------

inline double verify_catalytic(const CavityState& cavity, const AtomState& atom,
                               const JointChannel& ch) {
  const CavityState rho = detail::embed_for_channel(cavity, ch);
  const Matrix out = trace_out_cavity(ch.apply(linalg::kron(rho.matrix(), atom.matrix())));
  return trace_distance(atom.matrix(), out);
}

/// Catalytic defect for closed dynamics, evaluated through the O(dim) atom map.
inline double verify_catalytic_closed(const CavityState& cavity, const AtomState& atom,
                                      const SimulationParams& p, double t) {
  const Matrix out = closed_atom_channel(cavity, p, t).apply(atom.matrix());
  return trace_distance(atom.matrix(), out);
}

namespace detail {

// Accepts (q, r) as a state if it violates positivity by at most `tol`, and
// snaps it onto the state space.
inline std::optional<AtomState> snap_to_state(double q, cplx r, double tol) {
  if (!std::isfinite(q) || !std::isfinite(r.real()) || !std::isfinite(r.imag()))
    return std::nullopt;
  if (q < -tol || q > 1.0 + tol) return std::nullopt;
  q = std::clamp(q, 0.0, 1.0);
  const double bound = q * (1.0 - q);
  const double rr = std::norm(r);
  if (rr > bound + tol) return std::nullopt;
  if (rr > bound) r *= std::sqrt(bound / rr);
  return AtomState(q, r);
}

}  // namespace detail

/// Closed-form catalyst. Returns nullopt when the algebraic solution is not a
/// state; throws degenerate_time when a denominator is too small.
inline std::optional<AtomState> solve_catalyst_analytic(const CavityState& cavity,
                                                        const SimulationParams& p, double tau) {
  const AuxFunctions aux = aux_functions(cavity, p, tau);
  const double den = std::norm(aux.a1) - std::norm(aux.a3);
  if (std::abs(den) <= kDegeneracyThreshold * std::max(1.0, std::norm(aux.a1) + std::norm(aux.a3)))
    throw degenerate_time("solve_catalyst_analytic: |a1|^2 - |a3|^2 vanishes");

  // r = r0 + q r1 from the fixed-point condition on the coherence.
  const cplx r0 = (aux.a3 * std::conj(aux.a4) - std::conj(aux.a1) * aux.a4) / den;
  const cplx r1 = (aux.a3 * std::conj(aux.a2) - std::conj(aux.a1) * aux.a2) / den;

  const RabiTable rt(p, tau, cavity.dim() + 1);
  double pop = 0.0, exch = 0.0, lin0 = 0.0, lin1 = 0.0;
  for (int n = 0; n < cavity.dim(); ++n) {
    const double s2 = rt.s(n) * rt.s(n);
    const double sin2 = 2.0 * rt.s(n) * rt.c(n);
    pop += cavity.population(n) * s2;
    exch += (cavity.population(n) + cavity.population(n + 1)) * s2;
    lin0 += (kI * r0 * cavity(n + 1, n)).real() * sin2;
    lin1 += (kI * r1 * cavity(n + 1, n)).real() * sin2;
  }
  const double q_den = exch - lin1;
  if (std::abs(q_den) <= kDegeneracyThreshold * std::max(1.0, exch + std::abs(lin1)))
    throw degenerate_time("solve_catalyst_analytic: population equation is degenerate");

  const double q = (pop + lin0) / q_den;
  const cplx r = r0 + q * r1;
  auto atom = detail::snap_to_state(q, r, 1e-9);
  if (!atom) return std::nullopt;
  if (verify_catalytic_closed(cavity, *atom, p, tau) > 1e-8)
    throw degenerate_time("solve_catalyst_analytic: solution fails the catalytic check");
  return atom;
}

/// Closed-dynamics catalyst: the closed form where it is well conditioned,
/// otherwise the fixed point of the atom channel.
inline AtomState solve_catalyst(const CavityState& cavity, const SimulationParams& p, double tau) {
  try {
    if (auto atom = solve_catalyst_analytic(cavity, p, tau)) return *atom;
  } catch (const degenerate_time&) {
  }
  return fixed_point(closed_atom_channel(cavity, p, tau));
}

/// Ground-state population of the catalyst for a Fock-diagonal cavity state
/// (the coherence r vanishes).
inline double solve_catalyst_incoherent(const Eigen::VectorXd& populations, double g, double tau) {
  if ((populations.array() < 0.0).any())
    throw invalid_state("solve_catalyst_incoherent: negative population");
  if (std::abs(populations.sum() - 1.0) > 1e-10)
    throw invalid_state("solve_catalyst_incoherent: populations do not sum to one");
  const int d = static_cast<int>(populations.size());
  double num = 0.0, den = 0.0;
  for (int n = 0; n < d; ++n) {
    const double s = std::sin(g * tau * std::sqrt(n + 1.0));
    const double next = n + 1 < d ? populations(n + 1) : 0.0;
    num += populations(n) * s * s;
    den += (populations(n) + next) * s * s;
  }
  if (den <= kDegeneracyThreshold) throw degenerate_time("solve_catalyst_incoherent: vanishing denominator");
  return num / den;
}

}  // namespace jccat

#endif  // JCCAT_CATALYST_HPP
