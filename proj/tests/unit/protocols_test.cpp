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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "jccat/protocols.hpp"
#include "support/oracles.hpp"

namespace jccat {
namespace {

SimulationParams params(double g, int n_trunc) {
  SimulationParams p;
  p.g = g;
  p.n_trunc = n_trunc;
  return p;
}

TEST(TimeTrace, RowsMatchDirectEvolution) {
  const SimulationParams p = params(M_PI, 14);
  const CavityState c = coherent_state(1.0 / std::sqrt(2.0), 14);
  std::vector<double> grid;
  for (int k = 0; k <= 40; ++k) grid.push_back(0.125 * k);
  const TimeTrace tr = scan_g2_vs_time(c, p, grid);
  EXPECT_NEAR(tr.rows.front().value, g2(c), 1e-12);
  EXPECT_LE(tr.rows.back().delta, 1e-8);
  for (std::size_t i = 3; i < grid.size(); i += 9) {
    const JointState full = evolve_closed(c, tr.catalyst, p, grid[i]);
    EXPECT_NEAR(tr.rows[i].value, g2(reduce_to_cavity(full)), 1e-10);
    EXPECT_NEAR(tr.rows[i].delta, trace_distance(tr.catalyst, reduce_to_atom(full)), 1e-10);
  }
  EXPECT_THROW(scan_g2_vs_time(c, p, std::vector<double>{1.0, 0.5}), invalid_parameter);
  EXPECT_THROW(scan_g2_vs_time(c, p, std::vector<double>{}), invalid_parameter);
}

TEST(TimeTrace, IndependentOfThreadCount) {
  const SimulationParams p = params(M_PI, 12);
  const CavityState c = coherent_state(0.8, 12);
  std::vector<double> grid;
  for (int k = 0; k < 101; ++k) grid.push_back(0.05 * k);
  const TimeTrace a = scan_g2_vs_time(c, p, grid, 1);
  const TimeTrace b = scan_g2_vs_time(c, p, grid, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a.rows[i].value, b.rows[i].value);
    EXPECT_EQ(a.rows[i].delta, b.rows[i].delta);
  }
}

TEST(BoundedTauGrid, RespectsBound) {
  const auto grid = bounded_tau_grid(M_PI, 10.0, 0.01);
  ASSERT_FALSE(grid.empty());
  EXPECT_DOUBLE_EQ(grid.front(), 0.01);
  EXPECT_LE(M_PI * grid.back(), 10.0 + 1e-9);
  EXPECT_GT(M_PI * (grid.back() + 0.01), 10.0);
  EXPECT_THROW(bounded_tau_grid(M_PI, -1.0, 0.01), invalid_parameter);
}

TEST(MinimizeOverTau, MatchesExhaustiveSearch) {
  const SimulationParams p = params(M_PI, 12);
  const CavityState c = coherent_state(0.5, 12);
  const auto grid = bounded_tau_grid(p.g, 10.0, 0.05);
  const TauMinimum best =
      minimize_over_tau(c, p, grid, [](const CatalyticPoint& pt, double) { return pt.g2; });
  for (double tau : grid) {
    const CatalyticPoint pt = catalytic_point(c, p, tau);
    if (pt.feasible) EXPECT_GE(pt.g2, best.value);
  }
  EXPECT_LE(best.point.delta, kCatalyticTolerance);
}

TEST(AlphaScan, RaisesTruncationAndIsThreadIndependent) {
  const SimulationParams p = params(M_PI, 4);
  const std::vector<double> alphas{0.3, 1.2};
  const auto a = scan_min_g2_vs_alpha(alphas, p, 5.0, 0.05, 1);
  const auto b = scan_min_g2_vs_alpha(alphas, p, 5.0, 0.05, 2);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_GE(a[1].n_trunc, required_truncation(1.2));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].min_g2, b[i].min_g2);
    EXPECT_EQ(a[i].argmin_tau, b[i].argmin_tau);
  }
}

TEST(CatalyticSet, SamplesAreReproducibleAndReverified) {
  const SimulationParams p = params(M_PI, 12);
  const CavityState c = coherent_state(1.0 / std::sqrt(2.0), 12);
  const auto a = catalytic_set_scan(c, p, 60, 20.0, 7, 1);
  const auto b = catalytic_set_scan(c, p, 60, 20.0, 7, 3);
  ASSERT_EQ(a.size(), 60u);
  int feasible = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].tau, b[i].tau);
    EXPECT_EQ(a[i].feasible, b[i].feasible);
    EXPECT_GT(a[i].tau, 0.0);
    EXPECT_LE(p.g * a[i].tau, 20.0 + 1e-12);
    if (!a[i].feasible) continue;
    ++feasible;
    const AtomState chi(a[i].q, a[i].r);
    EXPECT_LE(trace_distance(chi, reduce_to_atom(evolve_closed(c, chi, p, a[i].tau))), 1e-8);
  }
  EXPECT_GT(feasible, 50);
  EXPECT_NE(catalytic_set_scan(c, p, 5, 20.0, 8)[0].tau, a[0].tau);
}

TEST(CatalyticSet, ModerateAmplitudeReachesSubPoissonianLight) {
  const SimulationParams p = params(M_PI, 20);
  const auto recs = catalytic_set_scan(coherent_state(1.0 / std::sqrt(2.0), 20), p, 2000, 100.0, 3);
  int feasible = 0, sub_poissonian = 0;
  for (const auto& r : recs) {
    feasible += r.feasible;
    sub_poissonian += r.feasible && r.g2 < 1.0;
  }
  EXPECT_GT(feasible, 0);
  EXPECT_GT(sub_poissonian, 0);
}

class LargeAmplitudeSet : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    SimulationParams p = params(M_PI, 20);
    p.n_trunc = required_truncation(25.0);
    records_ = catalytic_set_scan(coherent_state(25.0, p.n_trunc), p, 10000, 100.0, 20260101);
  }
  static std::vector<ScanRecord> records_;
};
std::vector<ScanRecord> LargeAmplitudeSet::records_;

TEST_F(LargeAmplitudeSet, CatalystsSitNearTheEquatorialPlane) {
  std::vector<double> z;
  for (const auto& r : records_)
    if (r.feasible) z.push_back(std::abs(2.0 * r.q - 1.0));
  ASSERT_FALSE(z.empty());
  std::sort(z.begin(), z.end());
  EXPECT_LT(z[z.size() / 2], 0.1);
  EXPECT_LT(z[z.size() * 9 / 10], 0.1);
}

TEST_F(LargeAmplitudeSet, NoSubPoissonianSample) {
  int count = 0;
  double lowest = 1.0;
  for (const auto& r : records_)
    if (r.feasible && r.g2 < 1.0) {
      ++count;
      lowest = std::min(lowest, r.g2);
    }
  EXPECT_EQ(count, 0) << "lowest g2 " << lowest;
}

TEST(MultiCavity, SingleCavityIsExact) {
  const SimulationParams p = params(M_PI, 6);
  const CavityState c = coherent_state(0.5, 6, 1e-5);
  const MultiCavityResult r = multi_cavity_protocol(c, p, 1.0, 1);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
  EXPECT_LE(r.marginal_spread, 1e-10);
}

TEST(MultiCavity, TwoCavitiesMatchDenseConstruction) {
  const SimulationParams p = params(M_PI, 2);
  const CavityState c = coherent_state(0.4, 2, 1e-2);
  const double tau = 0.37;
  const MultiCavityResult r = multi_cavity_protocol(c, p, tau, 2);

  // Dense reference: the atom interacts with cavity 1, then cavity 2.
  const int d = p.propagation_dim();
  const AtomState chi = solve_catalyst(c, p, tau);
  const CavityState rho = c.embedded(d);
  const Matrix h = oracle::hamiltonian_from_operators(p.omega, p.g, d);
  const Matrix u = oracle::unitary_expm(h, tau);  // on cavity (x) atom
  // Reorder to (cavity1, cavity2, atom); u1 acts on cavity1 and atom.
  const Matrix id = Matrix::Identity(d, d);
  Matrix u1 = Matrix::Zero(2 * d * d, 2 * d * d);
  for (int n1 = 0; n1 < d; ++n1)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int m1 = 0; m1 < d; ++m1)
        for (int b1 = 0; b1 < 2; ++b1)
          for (int k = 0; k < d; ++k)
            u1((n1 * d + k) * 2 + a1, (m1 * d + k) * 2 + b1) = u(n1 * 2 + a1, m1 * 2 + b1);
  const Matrix u2 = linalg::kron(id, u);
  const Matrix in = linalg::kron(linalg::kron(rho.matrix(), rho.matrix()), chi.matrix());
  const Matrix out = u2 * u1 * in * u1.adjoint() * u2.adjoint();
  const Matrix cavities = trace_out_atom(out);
  const CavityState single = reduced_cavity_analytic(c, chi, p, tau);
  // Fidelity responds like sqrt to rounding in near-null directions.
  EXPECT_NEAR(r.fidelity, uhlmann_fidelity(cavities, linalg::kron(single.matrix(), single.matrix())),
              1e-7);
  EXPECT_LE(r.marginal_spread, 1e-8);
  ASSERT_EQ(r.per_cavity_g2.size(), 2u);
  EXPECT_NEAR(r.per_cavity_g2[0], g2(single), 1e-8);
}

TEST(MultiCavity, BudgetIsEnforced) {
  const SimulationParams p = params(M_PI, 6);
  EXPECT_THROW(multi_cavity_protocol(coherent_state(0.5, 6, 1e-5), p, 1.0, 4),
               dimension_budget_exceeded);
}

TEST(DissipativeScan, ClosedColumnsMatchAnalyticRun) {
  const SimulationParams p = params(0.1 * M_PI, 8);
  DissipationParams d;
  d.kappa = 0.005;
  d.gamma = 0.05;
  d.n_th = 0.1;
  const CavityState c = coherent_state(1.0 / std::sqrt(2.0), 8, 1e-6);
  const std::vector<double> taus{2.0, 8.0};
  const auto rows = dissipative_scan(c, p, d, taus, {1.0 / std::sqrt(2.0), 121}, 2);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const AtomState chi = solve_catalyst(c, p, taus[i]);
    EXPECT_NEAR(rows[i].g2_closed, g2(reduced_cavity_analytic(c, chi, p, taus[i])), 1e-12);
    EXPECT_LE(rows[i].delta, 1e-8);
    EXPECT_GT(rows[i].g2_open, 0.0);
  }
}

}  // namespace
}  // namespace jccat
