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

#ifndef JCCAT_LINDBLAD_HPP
#define JCCAT_LINDBLAD_HPP

// Damped Jaynes-Cummings dynamics
//
//   drho/dt = -i[H, rho] + kappa (n_th + 1) D[a] + kappa n_th D[a^dag] + Gamma D[sigma_-],
//   D[L] rho = L rho L^dag - {L^dag L, rho}/2,
//
// on column-major vectorized joint operators.
//
// Every term except w N (N = n_S + n_C) maps |i><j| to operators with the same
// N_i - N_j, so the free part commutes with the rest and contributes the
// diagonal phases exp(-i w (N_i - N_j) t). The remainder is propagated with a
// scaled Taylor series of its sparse generator.

#include <cmath>
#include <vector>

#include <Eigen/Sparse>

#include "jccat/catalyst.hpp"
#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"

namespace jccat {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct DissipationParams {
  double kappa = 0.0;
  double gamma = 0.0;
  double n_th = 0.0;

  void validate() const {
    for (double v : {kappa, gamma, n_th})
      if (!std::isfinite(v) || v < 0.0)
        throw invalid_parameter("DissipationParams: rates and n_th must be finite and >= 0");
  }
};

/// Mean thermal occupation 1/(exp(1/T) - 1), temperature in units of the
/// mode energy.
inline double thermal_occupation(double temperature) {
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw invalid_parameter("thermal_occupation: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(1.0 / temperature);
}

struct Liouvillian {
  int cavity_dim = 0;
  SparseMatrix full;         // complete generator
  SparseMatrix interaction;  // generator without the free part
  Vector free_rates;         // -i w (N_i - N_j) per vectorized entry

  int joint_dim() const { return 2 * cavity_dim; }
  Matrix dense() const { return Matrix(full); }
};

namespace detail {

inline SparseMatrix to_sparse(const Matrix& m) {
  SparseMatrix s = m.sparseView(0.0, 0.0);
  s.makeCompressed();
  return s;
}

inline SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib)
          trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                            ia.value() * ib.value());
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

inline SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

// -i[H, .] in column-major vectorization: -i (I (x) H - H^T (x) I).
inline SparseMatrix commutator_generator(const Matrix& h) {
  const SparseMatrix hs = to_sparse(h);
  const SparseMatrix id = sparse_identity(h.rows());
  const SparseMatrix ht = to_sparse(h.transpose());
  return cplx(0.0, -1.0) * (sparse_kron(id, hs) - sparse_kron(ht, id));
}

// D[L] = conj(L) (x) L - (I (x) L^dag L + (L^dag L)^T (x) I)/2.
inline SparseMatrix dissipator(const Matrix& l) {
  const Matrix ldl = l.adjoint() * l;
  const SparseMatrix id = sparse_identity(l.rows());
  return sparse_kron(to_sparse(l.conjugate()), to_sparse(l)) -
         0.5 * (sparse_kron(id, to_sparse(ldl)) + sparse_kron(to_sparse(ldl.transpose()), id));
}

inline double one_norm(const SparseMatrix& a) {
  double best = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

}  // namespace detail

inline Liouvillian build_liouvillian(const SimulationParams& p, const DissipationParams& diss) {
  p.validate();
  diss.validate();
  const int d = p.propagation_dim();
  const int dj = 2 * d;

  Matrix a = Matrix::Zero(dj, dj);
  Matrix sm = Matrix::Zero(dj, dj);
  Matrix h0 = Matrix::Zero(dj, dj);
  Eigen::VectorXd excitations(dj);
  for (int n = 0; n < d; ++n)
    for (int at = 0; at < 2; ++at) {
      const int i = JointState::index(n, at);
      excitations(i) = n + at;
      h0(i, i) = p.omega * (n + at - 0.5);
      if (n + 1 < d) a(JointState::index(n, at), JointState::index(n + 1, at)) = std::sqrt(n + 1.0);
    }
  for (int n = 0; n < d; ++n) sm(JointState::index(n, 0), JointState::index(n, 1)) = 1.0;

  const Matrix h = jc_hamiltonian(p);
  Liouvillian l;
  l.cavity_dim = d;
  l.interaction = detail::commutator_generator(h - h0);
  if (diss.kappa > 0.0) {
    l.interaction += diss.kappa * (diss.n_th + 1.0) * detail::dissipator(a);
    if (diss.n_th > 0.0) l.interaction += diss.kappa * diss.n_th * detail::dissipator(a.adjoint());
  }
  if (diss.gamma > 0.0) l.interaction += diss.gamma * detail::dissipator(sm);
  l.interaction.prune(cplx(0.0), 0.0);
  l.interaction.makeCompressed();

  l.free_rates.resize(static_cast<Eigen::Index>(dj) * dj);
  for (int j = 0; j < dj; ++j)
    for (int i = 0; i < dj; ++i)
      l.free_rates(static_cast<Eigen::Index>(j) * dj + i) =
          cplx(0.0, -p.omega * (excitations(i) - excitations(j)));
  SparseMatrix free_part(l.free_rates.size(), l.free_rates.size());
  std::vector<Eigen::Triplet<cplx>> diag;
  for (Eigen::Index k = 0; k < l.free_rates.size(); ++k)
    if (l.free_rates(k) != cplx(0.0)) diag.emplace_back(k, k, l.free_rates(k));
  free_part.setFromTriplets(diag.begin(), diag.end());
  l.full = l.interaction + free_part;
  return l;
}

/// exp(L t) applied to an arbitrary joint operator.
inline Matrix propagate_operator(const Liouvillian& l, const Matrix& x, double t) {
  if (t < 0.0) throw invalid_parameter("propagate: t must be >= 0");
  const int dj = l.joint_dim();
  if (x.rows() != dj || x.cols() != dj)
    throw dimension_mismatch("propagate: operator does not match the Liouvillian");
  Vector v = Eigen::Map<const Vector>(x.data(), x.size());
  if (t == 0.0) return x;

  const double norm = detail::one_norm(l.interaction);
  const int steps = std::max(1, static_cast<int>(std::ceil(t * norm)));
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    Vector term = v;
    Vector acc = v;
    for (int k = 1; k <= 60; ++k) {
      term = (h / k) * (l.interaction * term);
      acc += term;
      if (term.lpNorm<Eigen::Infinity>() <= 1e-17 * acc.lpNorm<Eigen::Infinity>()) break;
    }
    v = std::move(acc);
  }
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) *= std::exp(l.free_rates(k) * t);
  return Eigen::Map<const Matrix>(v.data(), dj, dj);
}

/// exp(L t) rho with Hermiticity and trace restored. Throws when the result
/// has an eigenvalue below -1e-8.
inline JointState propagate(const Liouvillian& l, const JointState& state, double t) {
  Matrix out = linalg::hermitian_part(propagate_operator(l, state.matrix(), t));
  const cplx tr = out.trace();
  if (std::abs(tr) < 1e-12) throw propagation_unstable("propagate: trace collapsed");
  out /= tr.real();
  if (linalg::min_eigenvalue(out) < -1e-8)
    throw propagation_unstable("propagate: state lost positivity; increase n_trunc");
  return JointState::trusted(std::move(out));
}

inline JointChannel lindblad_channel(const Liouvillian& l, double t) {
  return {l.cavity_dim, [l, t](const Matrix& x) { return propagate_operator(l, x, t); }};
}

struct DissipativeRun {
  AtomState catalyst = AtomState::maximally_mixed();
  JointState final_state = JointState::trusted(Matrix::Zero(2, 2));
  double delta = 0.0;
};

/// Catalyst of the channel exp(L tau) together with the final joint state,
/// sharing the four propagations between both.
inline DissipativeRun dissipative_run(const CavityState& cavity, const Liouvillian& l,
                                      double tau) {
  const CavityState rho = cavity.embedded(std::max(cavity.dim(), l.cavity_dim));
  if (rho.dim() != l.cavity_dim)
    throw truncation_too_small("dissipative_run: cavity state does not fit the Liouvillian");

  Matrix outputs[2][2];
  Matrix chan(4, 4);
  for (int col = 0; col < 2; ++col)
    for (int row = 0; row < 2; ++row) {
      Matrix e = Matrix::Zero(2, 2);
      e(row, col) = 1.0;
      outputs[row][col] = propagate_operator(l, linalg::kron(rho.matrix(), e), tau);
      chan.col(2 * col + row) = EffectiveChannel::vec(trace_out_cavity(outputs[row][col]));
    }
  const EffectiveChannel ch(std::move(chan));
  const AtomState chi = fixed_point(ch);

  const Matrix c = chi.matrix();
  Matrix joint = Matrix::Zero(rho.dim() * 2, rho.dim() * 2);
  for (int row = 0; row < 2; ++row)
    for (int col = 0; col < 2; ++col) joint += c(row, col) * outputs[row][col];
  joint = linalg::hermitian_part(joint);
  joint /= joint.trace().real();
  if (linalg::min_eigenvalue(joint) < -1e-8)
    throw propagation_unstable("dissipative_run: state lost positivity; increase n_trunc");

  DissipativeRun run;
  run.catalyst = chi;
  run.delta = trace_distance(c, trace_out_cavity(joint));
  run.final_state = JointState::trusted(std::move(joint));
  return run;
}

inline AtomState dissipative_catalyst(const CavityState& cavity, const Liouvillian& l, double tau) {
  return fixed_point(effective_atom_channel(cavity, lindblad_channel(l, tau)));
}

}  // namespace jccat

#endif  // JCCAT_LINDBLAD_HPP
