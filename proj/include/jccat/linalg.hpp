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

#ifndef JCCAT_LINALG_HPP
#define JCCAT_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Dense>

#include "jccat/errors.hpp"

namespace jccat {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr cplx kI{0.0, 1.0};

namespace linalg {

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const Matrix& m) {
  return m.rows() == 0 ? 0.0 : hermitian_eigenvalues(m).minCoeff();
}

/// Kronecker product with the left factor as the slow (major) index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Square root of a Hermitian PSD matrix; eigenvalues below zero are clipped.
// Eigenvalues below n * eps * max are rounding noise; their square roots
// (~1e-8) would otherwise leak into fidelities.
inline Eigen::VectorXd drop_noise(Eigen::VectorXd w) {
  const double floor = w.size() * std::numeric_limits<double>::epsilon() * w.cwiseAbs().maxCoeff();
  for (auto& x : w)
    if (x < floor) x = 0.0;
  return w;
}

inline Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  Eigen::VectorXd w = drop_noise(es.eigenvalues()).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

/// Schatten-1 norm (sum of singular values).
inline double trace_norm(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace linalg
}  // namespace jccat

#endif  // JCCAT_LINALG_HPP
