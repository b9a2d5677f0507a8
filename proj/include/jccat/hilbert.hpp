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

#ifndef JCCAT_HILBERT_HPP
#define JCCAT_HILBERT_HPP

// State types on the truncated cavity Fock space, the atom qubit and their
// tensor product, plus the distance measures used to compare them.
//
// Basis conventions:
//  - cavity: Fock levels 0..dim-1;
//  - atom: index 0 = |g>, index 1 = |e>;
//  - joint: cavity-major, i.e. |n, a> has index 2 n + a.

#include <cmath>
#include <string>
#include <utility>

#include "jccat/errors.hpp"
#include "jccat/linalg.hpp"

namespace jccat {

/// Default bound on the Fock-space probability mass discarded by truncation.
inline constexpr double kTailTolerance = 1e-12;

struct StateTolerance {
  double hermitian = 1e-12;
  double trace = 1e-10;
  double psd = 1e-10;
};

namespace detail {

inline void validate_density_matrix(const Matrix& m, const std::string& what,
                                    bool check_psd, StateTolerance tol = {}) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw dimension_mismatch(what + ": matrix must be square and non-empty");
  if (linalg::hermiticity_defect(m) > tol.hermitian)
    throw invalid_state(what + ": matrix is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0)) > tol.trace)
    throw invalid_state(what + ": trace differs from one");
  if (check_psd && linalg::min_eigenvalue(m) < -tol.psd)
    throw invalid_state(what + ": matrix is not positive semidefinite");
}

}  // namespace detail

/// Density matrix of the cavity mode on Fock levels 0..n_trunc.
class CavityState {
 public:
  /// Validates hermiticity, unit trace and positivity.
  static CavityState from_matrix(Matrix m) {
    detail::validate_density_matrix(m, "CavityState", true);
    return CavityState(linalg::hermitian_part(m));
  }

  /// Wraps a matrix known to be a state by construction. Only the cheap
  /// checks run; the PSD check is skipped.
  static CavityState trusted(Matrix m) {
    detail::validate_density_matrix(m, "CavityState", false, {1e-9, 1e-9, 0.0});
    return CavityState(linalg::hermitian_part(m));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  int n_trunc() const { return dim() - 1; }
  const Matrix& matrix() const { return m_; }

  /// Element p_{n,m}; zero outside the stored levels.
  cplx operator()(int n, int m) const {
    if (n < 0 || m < 0 || n >= dim() || m >= dim()) return {0.0, 0.0};
    return m_(n, m);
  }
  double population(int n) const { return (*this)(n, n).real(); }

  /// Same state on a larger Fock space (zero padded).
  CavityState embedded(int new_dim) const {
    if (new_dim < dim())
      throw dimension_mismatch("CavityState::embedded: cannot shrink a state");
    Matrix out = Matrix::Zero(new_dim, new_dim);
    out.topLeftCorner(dim(), dim()) = m_;
    return CavityState(std::move(out));
  }

 private:
  explicit CavityState(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Qubit state  q|g><g| + r|g><e| + r*|e><g| + (1-q)|e><e|.
class AtomState {
 public:
  AtomState(double q, cplx r) : q_(q), r_(r) {
    constexpr double tol = 1e-12;
    if (!std::isfinite(q) || !std::isfinite(r.real()) || !std::isfinite(r.imag()))
      throw invalid_state("AtomState: non-finite parameters");
    if (q < -tol || q > 1.0 + tol)
      throw invalid_state("AtomState: q outside [0, 1]");
    if (q * (1.0 - q) - std::norm(r) < -tol)
      throw invalid_state("AtomState: q(1-q) < |r|^2, state is not positive");
  }

  static AtomState ground() { return {1.0, 0.0}; }
  static AtomState excited() { return {0.0, 0.0}; }
  static AtomState maximally_mixed() { return {0.5, 0.0}; }

  static AtomState from_matrix(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2)
      throw dimension_mismatch("AtomState::from_matrix: expected a 2x2 matrix");
    detail::validate_density_matrix(m, "AtomState", false, {1e-9, 1e-9, 0.0});
    return {m(0, 0).real(), 0.5 * (m(0, 1) + std::conj(m(1, 0)))};
  }

  double q() const { return q_; }
  cplx r() const { return r_; }

  Matrix matrix() const {
    Matrix m(2, 2);
    m << q_, r_, std::conj(r_), 1.0 - q_;
    return m;
  }

  /// Bloch coordinates with z = 2q - 1 (z = +1 is |g>) and y = 2 Im r.
  double bloch_x() const { return 2.0 * r_.real(); }
  double bloch_y() const { return 2.0 * r_.imag(); }
  double bloch_z() const { return 2.0 * q_ - 1.0; }

  double purity() const { return q_ * q_ + (1.0 - q_) * (1.0 - q_) + 2.0 * std::norm(r_); }

 private:
  double q_;
  cplx r_;
};

/// Density matrix on cavity (x) atom, cavity-major ordering.
class JointState {
 public:
  static JointState from_matrix(Matrix m) {
    detail::validate_density_matrix(m, "JointState", true);
    if (m.rows() % 2 != 0) throw dimension_mismatch("JointState: odd dimension");
    return JointState(linalg::hermitian_part(m));
  }

  static JointState trusted(Matrix m) {
    if (m.rows() % 2 != 0 || m.rows() != m.cols())
      throw dimension_mismatch("JointState: bad dimensions");
    return JointState(std::move(m));
  }

  int cavity_dim() const { return static_cast<int>(m_.rows() / 2); }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  static int index(int n, int atom) { return 2 * n + atom; }

 private:
  explicit JointState(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// --- constructors -----------------------------------------------------------

/// Probability mass of the Poisson distribution with mean |alpha|^2 above level
/// n_trunc.
inline double coherent_tail_mass(cplx alpha, int n_trunc) {
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = n_trunc + 1;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (n > mean && term == 0.0) break;
  }
  return tail;
}

/// Smallest n_trunc for which the truncated coherent state discards at most
/// `tail_tol` probability.
inline int required_truncation(cplx alpha, double tail_tol = kTailTolerance) {
  int n = 1;
  const double mean = std::norm(alpha);
  // Start the search below the bulk of the distribution.
  if (mean > 25.0) n = static_cast<int>(mean);
  while (coherent_tail_mass(alpha, n) > tail_tol) ++n;
  return n;
}

inline CavityState coherent_state(cplx alpha, int n_trunc, double tail_tol = kTailTolerance) {
  if (n_trunc < 1) throw invalid_parameter("coherent_state: n_trunc must be >= 1");
  const double tail = coherent_tail_mass(alpha, n_trunc);
  if (tail > tail_tol)
    throw truncation_too_small("coherent_state: truncation at n=" + std::to_string(n_trunc) +
                               " discards probability " + std::to_string(tail));
  const double mean = std::norm(alpha);
  const double amp = std::abs(alpha);
  const double phase = std::arg(alpha);
  Vector c(n_trunc + 1);
  for (int n = 0; n <= n_trunc; ++n) {
    double mag;
    if (amp == 0.0)
      mag = n == 0 ? 1.0 : 0.0;
    else
      mag = std::exp(-0.5 * mean + n * std::log(amp) - 0.5 * std::lgamma(n + 1.0));
    c(n) = std::polar(mag, n * phase);
  }
  c /= c.norm();
  return CavityState::trusted(c * c.adjoint());
}

inline CavityState fock_state(int n, int n_trunc) {
  if (n < 0 || n > n_trunc) throw index_out_of_range("fock_state: n outside 0..n_trunc");
  Matrix m = Matrix::Zero(n_trunc + 1, n_trunc + 1);
  m(n, n) = 1.0;
  return CavityState::trusted(std::move(m));
}

/// Diagonal (Fock-incoherent) state with the given populations.
inline CavityState fock_mixture(const Eigen::VectorXd& populations) {
  if ((populations.array() < 0.0).any())
    throw invalid_state("fock_mixture: negative population");
  return CavityState::trusted(populations.cast<cplx>().asDiagonal().toDenseMatrix());
}

inline JointState tensor(const CavityState& cavity, const AtomState& atom) {
  return JointState::trusted(linalg::kron(cavity.matrix(), atom.matrix()));
}

// --- partial traces ---------------------------------------------------------

/// Tr_atom of an arbitrary operator on cavity (x) atom.
inline Matrix trace_out_atom(const Matrix& m) {
  const int d = static_cast<int>(m.rows() / 2);
  Matrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

/// Tr_cavity of an arbitrary operator on cavity (x) atom.
inline Matrix trace_out_cavity(const Matrix& m) {
  const int d = static_cast<int>(m.rows() / 2);
  Matrix out = Matrix::Zero(2, 2);
  for (int n = 0; n < d; ++n) out += m.block(2 * n, 2 * n, 2, 2);
  return out;
}

/// Reduced state of the cavity.
inline CavityState reduce_to_cavity(const JointState& joint) {
  return CavityState::trusted(trace_out_atom(joint.matrix()));
}

/// Reduced state of the atom.
inline AtomState reduce_to_atom(const JointState& joint) {
  return AtomState::from_matrix(trace_out_cavity(joint.matrix()));
}

// --- distances ----------------------------------------------------------------

/// ||a - b||_1, the sum of singular values of the difference. Lies in [0, 2]
/// for density matrices.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_mismatch("trace_distance: operands differ in shape");
  return linalg::trace_norm(a - b);
}

inline double trace_distance(const AtomState& a, const AtomState& b) {
  return trace_distance(a.matrix(), b.matrix());
}

/// Squared Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, in [0, 1].
inline double uhlmann_fidelity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_mismatch("uhlmann_fidelity: operands differ in shape");
  constexpr double psd_tol = 1e-10;
  if (linalg::min_eigenvalue(a) < -psd_tol || linalg::min_eigenvalue(b) < -psd_tol)
    throw non_psd_input("uhlmann_fidelity: operand is not positive semidefinite");
  const Matrix sa = linalg::psd_sqrt(a);
  const Matrix inner = sa * linalg::hermitian_part(b) * sa;
  const double root_sum = linalg::drop_noise(linalg::hermitian_eigenvalues(inner)).cwiseSqrt().sum();
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace jccat

#endif  // JCCAT_HILBERT_HPP
