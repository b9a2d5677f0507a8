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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "jccat/lindblad.hpp"
#include "jccat/witness.hpp"
#include "support/oracles.hpp"

namespace jccat {
namespace {

SimulationParams params(double g, int n_trunc) {
  SimulationParams p;
  p.g = g;
  p.n_trunc = n_trunc;
  return p;
}

DissipationParams diss(double kappa, double gamma, double n_th) {
  DissipationParams d;
  d.kappa = kappa;
  d.gamma = gamma;
  d.n_th = n_th;
  return d;
}

TEST(Liouvillian, TaylorPropagationMatchesDenseExponential) {
  std::mt19937_64 rng(53);
  const SimulationParams p = params(0.7, 3);
  const Liouvillian l = build_liouvillian(p, diss(0.3, 0.2, 0.4));
  for (int k = 0; k < 5; ++k) {
    const Matrix x = oracle::random_density(l.joint_dim(), rng);
    const double t = 0.4 + 1.3 * k;
    EXPECT_LE(linalg::max_abs(propagate_operator(l, x, t) - oracle::liouvillian_expm(l, x, t)), 1e-12);
  }
}

TEST(Liouvillian, ClosedLimitMatchesUnitaryEvolution) {
  std::mt19937_64 rng(59);
  const SimulationParams p = params(M_PI, 6);
  const Liouvillian l = build_liouvillian(p, {});
  for (int k = 0; k < 5; ++k) {
    const CavityState c = oracle::random_cavity(5, rng);
    const AtomState a = oracle::random_atom(rng);
    const double t = 0.3 + 0.9 * k;
    const JointState open = propagate(l, tensor(c.embedded(l.cavity_dim), a), t);
    EXPECT_LE(linalg::max_abs(open.matrix() - evolve_closed(c, a, p, t).matrix()), 1e-11);
  }
}

TEST(Liouvillian, GeneratorIsTracePreservingWithStableSpectrum) {
  const SimulationParams p = params(0.5, 3);
  const Liouvillian l = build_liouvillian(p, diss(0.2, 0.1, 0.3));
  const Matrix dense = l.dense();
  const int dj = l.joint_dim();
  // Tr(L x) = 0 for every x: the row vector vec(I)^T annihilates L.
  Vector trace_row = Vector::Zero(static_cast<Eigen::Index>(dj) * dj);
  for (int i = 0; i < dj; ++i) trace_row(static_cast<Eigen::Index>(i) * dj + i) = 1.0;
  EXPECT_LE((trace_row.transpose() * dense).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::ComplexEigenSolver<Matrix> es(dense);
  EXPECT_LE(es.eigenvalues().real().maxCoeff(), 1e-10);
}

TEST(Liouvillian, ChannelIsCompletelyPositive) {
  const SimulationParams p = params(0.8, 2);
  const Liouvillian l = build_liouvillian(p, diss(0.4, 0.3, 0.2));
  const int dj = l.joint_dim();
  Matrix choi = Matrix::Zero(dj * dj, dj * dj);
  for (int i = 0; i < dj; ++i)
    for (int j = 0; j < dj; ++j) {
      Matrix e = Matrix::Zero(dj, dj);
      e(i, j) = 1.0;
      choi += linalg::kron(e, propagate_operator(l, e, 1.7));
    }
  EXPECT_GE(linalg::min_eigenvalue(choi), -1e-10);
}

// g = 1e-9 leaves the modes uncoupled to well below the tolerances.
TEST(Liouvillian, ThermalRelaxationWithoutCoupling) {
  const SimulationParams p = params(1e-9, 12);
  const Liouvillian l = build_liouvillian(p, diss(1.0, 1.0, 0.3));
  const JointState out =
      propagate(l, tensor(fock_state(2, 12).embedded(l.cavity_dim), AtomState::excited()), 25.0);
  EXPECT_NEAR(mean_photon_number(reduce_to_cavity(out)), 0.3, 1e-3);
  EXPECT_NEAR(reduce_to_atom(out).q(), 1.0, 1e-9);
}

TEST(Liouvillian, SpontaneousDecayOfAtom) {
  const SimulationParams p = params(1e-9, 4);
  const Liouvillian l = build_liouvillian(p, diss(0.0, 0.5, 0.0));
  const CavityState vacuum = fock_state(0, 4).embedded(l.cavity_dim);
  for (int k = 1; k <= 4; ++k) {
    const double t = 0.5 * k;
    const AtomState a = reduce_to_atom(propagate(l, tensor(vacuum, AtomState(0.5, 0.5)), t));
    EXPECT_NEAR(a.q(), 1.0 - 0.5 * std::exp(-0.5 * t), 1e-12);
    EXPECT_NEAR(std::abs(a.r()), 0.5 * std::exp(-0.25 * t), 1e-12);
  }
}

TEST(DissipativeCatalyst, IsStationaryUnderTheOpenChannel) {
  const SimulationParams p = params(0.1 * M_PI, 8);
  const Liouvillian l = build_liouvillian(p, diss(0.005, 0.05, 0.1));
  const CavityState c = coherent_state(1.0 / std::sqrt(2.0), 8, 1e-6);
  for (double tau : {2.0, 8.0, 20.0}) {
    const DissipativeRun run = dissipative_run(c, l, tau);
    EXPECT_LE(run.delta, 1e-8) << tau;
    const AtomState other = dissipative_catalyst(c, l, tau);
    EXPECT_LE(trace_distance(other, run.catalyst), 1e-9);
  }
}

TEST(DissipativeCatalyst, ReducesToClosedCatalyst) {
  const SimulationParams p = params(M_PI, 10);
  const Liouvillian l = build_liouvillian(p, {});
  const CavityState c = coherent_state(1.0 / std::sqrt(2.0), 10, 1e-6);
  for (double tau : {0.7, 3.1, 5.0}) {
    const DissipativeRun run = dissipative_run(c, l, tau);
    const AtomState closed = solve_catalyst(c, p, tau);
    EXPECT_LE(trace_distance(run.catalyst, closed), 1e-8) << tau;
  }
}

TEST(DissipativeCatalyst, ShortTimeLimitIsMaximallyMixed) {
  const SimulationParams p = params(M_PI, 6);
  const Liouvillian l = build_liouvillian(p, diss(0.1, 0.1, 0.0));
  const DissipativeRun run = dissipative_run(coherent_state(0.5, 6, 1e-6), l, 0.0);
  EXPECT_LE(trace_distance(run.catalyst, AtomState::maximally_mixed()), 1e-9);
}

TEST(ThermalOccupation, Values) {
  EXPECT_EQ(thermal_occupation(0.0), 0.0);
  EXPECT_NEAR(thermal_occupation(1.0), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
  EXPECT_THROW(thermal_occupation(-1.0), invalid_parameter);
  DissipationParams bad;
  bad.kappa = -0.1;
  EXPECT_THROW(bad.validate(), invalid_parameter);
}

}  // namespace
}  // namespace jccat
