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

#ifndef JCCAT_PROTOCOLS_HPP
#define JCCAT_PROTOCOLS_HPP

// Composite experiments built from the single-shot solvers: time traces,
// scans over tau and alpha, catalytic-set sampling, the sequential
// multi-cavity protocol and the dissipative comparison.

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "jccat/catalyst.hpp"
#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"
#include "jccat/lindblad.hpp"
#include "jccat/parallel.hpp"
#include "jccat/witness.hpp"

namespace jccat {

/// Catalytic defect accepted as "exactly catalytic".
inline constexpr double kCatalyticTolerance = 1e-8;

// --- time traces ---------------------------------------------------------------

struct TimeRow {
  double t = 0.0;
  double value = 0.0;  // witness of the reduced cavity state at t
  double delta = 0.0;  // trace distance between the atom at t and the catalyst
  AtomState atom = AtomState::ground();
};

struct TimeTrace {
  AtomState catalyst = AtomState::ground();
  std::vector<TimeRow> rows;
};

namespace detail {

inline void check_time_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw invalid_parameter("time grid is empty");
  for (double t : t_grid)
    if (!std::isfinite(t) || t < 0.0) throw invalid_parameter("time grid entries must be >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1]) throw invalid_parameter("time grid must be non-decreasing");
}

}  // namespace detail

/// Evolves rho (x) chi with chi the catalyst for the last grid time and
/// evaluates `witness` on the reduced cavity at every grid time.
template <class Witness>
TimeTrace time_trace(const CavityState& cavity, const SimulationParams& p,
                     std::span<const double> t_grid, Witness&& witness, int threads = 1) {
  detail::check_time_grid(t_grid);
  TimeTrace out;
  out.catalyst = solve_catalyst(cavity, p, t_grid.back());
  out.rows.resize(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    const double t = t_grid[i];
    TimeRow& row = out.rows[i];
    row.t = t;
    row.atom = atom_at(cavity, out.catalyst, p, t);
    row.delta = trace_distance(out.catalyst, row.atom);
    row.value = witness(reduced_cavity_analytic(cavity, out.catalyst, p, t));
  });
  return out;
}

inline TimeTrace scan_g2_vs_time(const CavityState& cavity, const SimulationParams& p,
                                 std::span<const double> t_grid, int threads = 1) {
  return time_trace(cavity, p, t_grid, [](const CavityState& s) { return g2(s); }, threads);
}

// --- catalytic points ------------------------------------------------------------

struct CatalyticPoint {
  bool feasible = false;
  AtomState atom = AtomState::maximally_mixed();
  double g2 = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
};

/// Catalyst at tau (closed form, else fixed point) and the resulting g2.
/// A point is feasible when a catalyst exists and passes re-verification.
inline CatalyticPoint catalytic_point(const CavityState& cavity, const SimulationParams& p,
                                      double tau) {
  CatalyticPoint pt;
  std::optional<AtomState> atom;
  try {
    atom = solve_catalyst_analytic(cavity, p, tau);
  } catch (const degenerate_time&) {
  }
  if (!atom) {
    try {
      atom = fixed_point(closed_atom_channel(cavity, p, tau));
    } catch (const no_psd_fixed_point&) {
      return pt;
    }
  }
  pt.atom = *atom;
  pt.delta = verify_catalytic_closed(cavity, pt.atom, p, tau);
  if (!(pt.delta <= kCatalyticTolerance)) return pt;
  pt.g2 = g2_catalytic_predict(cavity, pt.atom, p, tau);
  pt.feasible = true;
  return pt;
}

/// tau_k = k * step for k >= 1 with |g| tau_k <= gtau_bound.
inline std::vector<double> bounded_tau_grid(double g, double gtau_bound, double step) {
  if (!(gtau_bound > 0.0)) throw invalid_parameter("gtau_bound must be positive");
  if (!(step > 0.0)) throw invalid_parameter("tau step must be positive");
  const double tau_max = gtau_bound / std::abs(g);
  const auto count = static_cast<std::size_t>(std::floor(tau_max / step * (1.0 + 1e-12)));
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = (k + 1) * step;
  return grid;
}

struct TauMinimum {
  double tau = 0.0;
  double value = 0.0;
  CatalyticPoint point;
};

/// Smallest value of `objective(point, tau)` over the feasible points of the grid.
template <class Objective>
TauMinimum minimize_over_tau(const CavityState& cavity, const SimulationParams& p,
                             std::span<const double> tau_grid, Objective&& objective) {
  std::optional<TauMinimum> best;
  for (double tau : tau_grid) {
    const CatalyticPoint pt = catalytic_point(cavity, p, tau);
    if (!pt.feasible) continue;
    const double v = objective(pt, tau);
    if (!best || v < best->value) best = TauMinimum{tau, v, pt};
  }
  if (!best) throw no_feasible_tau("no feasible catalytic time on the grid");
  return *best;
}

struct AlphaScanRow {
  double alpha = 0.0;
  double min_g2 = 0.0;
  double argmin_tau = 0.0;
  int n_trunc = 0;
};

/// Minimum catalytic g2 per coherent amplitude. The truncation is raised per
/// alpha to meet the tail tolerance when params.n_trunc is too small.
inline std::vector<AlphaScanRow> scan_min_g2_vs_alpha(std::span<const double> alpha_grid,
                                                      const SimulationParams& p,
                                                      double gtau_bound, double tau_step,
                                                      int threads = 1) {
  p.validate();
  const std::vector<double> taus = bounded_tau_grid(p.g, gtau_bound, tau_step);
  std::vector<AlphaScanRow> rows(alpha_grid.size());
  parallel_for(alpha_grid.size(), threads, [&](std::size_t i) {
    const double alpha = alpha_grid[i];
    SimulationParams pa = p;
    pa.n_trunc = std::max(p.n_trunc, required_truncation(alpha));
    const CavityState cavity = coherent_state(alpha, pa.n_trunc);
    const TauMinimum best = minimize_over_tau(
        cavity, pa, taus, [](const CatalyticPoint& pt, double) { return pt.g2; });
    rows[i] = {alpha, best.value, best.tau, pa.n_trunc};
  });
  return rows;
}

// --- catalytic set -----------------------------------------------------------------

struct ScanRecord {
  double tau = 0.0;
  double q = std::numeric_limits<double>::quiet_NaN();
  cplx r{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double g2 = std::numeric_limits<double>::quiet_NaN();
  bool feasible = false;
  double delta = std::numeric_limits<double>::quiet_NaN();
};

/// Catalysts at tau drawn uniformly from (0, gtau_bound/|g|] with a
/// mt19937_64 stream seeded by `seed`. Samples are drawn up front so the
/// result does not depend on the thread count.
inline std::vector<ScanRecord> catalytic_set_scan(const CavityState& cavity,
                                                  const SimulationParams& p, int n_samples,
                                                  double gtau_bound, std::uint64_t seed,
                                                  int threads = 1) {
  p.validate();
  if (n_samples < 1) throw invalid_parameter("catalytic_set_scan: n_samples must be >= 1");
  if (!(gtau_bound > 0.0)) throw invalid_parameter("catalytic_set_scan: gtau_bound must be > 0");
  const double tau_max = gtau_bound / std::abs(p.g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ScanRecord> out(n_samples);
  for (auto& rec : out) rec.tau = tau_max * (1.0 - unit(rng));  // (0, tau_max]

  parallel_for(out.size(), threads, [&](std::size_t i) {
    ScanRecord& rec = out[i];
    const CatalyticPoint pt = catalytic_point(cavity, p, rec.tau);
    rec.delta = pt.delta;
    if (std::isfinite(pt.delta)) {
      rec.q = pt.atom.q();
      rec.r = pt.atom.r();
    }
    rec.feasible = pt.feasible;
    rec.g2 = pt.g2;
  });
  return out;
}

// --- multi-cavity protocol ------------------------------------------------------------

struct MultiCavityResult {
  int n_cavities = 0;
  double fidelity = 0.0;
  std::vector<double> per_cavity_g2;
  double marginal_spread = 0.0;  // max trace distance of a marginal from the single run
};

/// Default bound on the joint Hilbert-space dimension of the protocol.
inline constexpr long kMultiCavityDimBudget = 4096;

namespace detail {

// Reduced state of cavity `which` from a state on n cavities of dimension d.
inline Matrix cavity_marginal(const Matrix& rho, int d, int n, int which) {
  long outer = 1, inner = 1;
  for (int k = 0; k < which; ++k) outer *= d;
  for (int k = which + 1; k < n; ++k) inner *= d;
  Matrix out = Matrix::Zero(d, d);
  for (long o = 0; o < outer; ++o)
    for (long in = 0; in < inner; ++in)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          out(a, b) += rho((o * d + a) * inner + in, (o * d + b) * inner + in);
  return out;
}

}  // namespace detail

/// An atom in the catalyst for (cavity, tau) meets n identical cavities in
/// turn. Returns the fidelity of the cavities' joint state with the product
/// of single-run marginals.
inline MultiCavityResult multi_cavity_protocol(const CavityState& cavity,
                                               const SimulationParams& p, double tau,
                                               int n_cavities,
                                               long dim_budget = kMultiCavityDimBudget) {
  p.validate();
  if (n_cavities < 1) throw invalid_parameter("multi_cavity_protocol: n_cavities must be >= 1");
  const int d = p.propagation_dim();
  long cav_dim = 1;
  for (int k = 0; k < n_cavities; ++k) {
    cav_dim *= d;
    if (2 * cav_dim > dim_budget)
      throw dimension_budget_exceeded("multi_cavity_protocol: joint dimension " +
                                      std::to_string(2 * cav_dim) + " exceeds the budget");
  }
  const long dim = 2 * cav_dim;

  const AtomState chi = solve_catalyst(cavity, p, tau);
  const CavityState rho = detail::embed_for_propagation(cavity, p);
  const Matrix u = jc_propagator(p, tau).matrix;

  Matrix state = rho.matrix();
  for (int k = 1; k < n_cavities; ++k) state = linalg::kron(state, rho.matrix());
  state = linalg::kron(state, chi.matrix());

  // Joint index ((n_1 d + n_2) d + ...) * 2 + atom.
  for (int k = 0; k < n_cavities; ++k) {
    long inner = 1;
    for (int j = k + 1; j < n_cavities; ++j) inner *= d;
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(2 * dim));
    for (long col = 0; col < dim; ++col) {
      const int atom = static_cast<int>(col % 2);
      const long cav = col / 2;
      const int n_k = static_cast<int>((cav / inner) % d);
      const long rest = cav - n_k * inner;
      const int local_col = JointState::index(n_k, atom);
      for (int local_row = 0; local_row < 2 * d; ++local_row) {
        const cplx v = u(local_row, local_col);
        if (v == cplx(0.0)) continue;
        const long row = 2 * (rest + (local_row / 2) * inner) + local_row % 2;
        trip.emplace_back(row, col, v);
      }
    }
    SparseMatrix uk(dim, dim);
    uk.setFromTriplets(trip.begin(), trip.end());
    const Matrix half = uk * state;
    state = (uk * half.adjoint()).adjoint();
  }

  const Matrix cavities = linalg::hermitian_part(trace_out_atom(state));
  const CavityState single = reduced_cavity_analytic(cavity, chi, p, tau);

  MultiCavityResult res;
  res.n_cavities = n_cavities;
  Matrix target = single.matrix();
  for (int k = 1; k < n_cavities; ++k) target = linalg::kron(target, single.matrix());
  res.fidelity = uhlmann_fidelity(cavities, target);
  for (int k = 0; k < n_cavities; ++k) {
    const Matrix m = detail::cavity_marginal(cavities, d, n_cavities, k);
    res.per_cavity_g2.push_back(g2(CavityState::trusted(m)));
    res.marginal_spread = std::max(res.marginal_spread, trace_distance(m, single.matrix()));
  }
  return res;
}

// --- dissipative comparison -------------------------------------------------------------

struct DissipativeRow {
  double tau = 0.0;
  double wln_open = 0.0;
  double g2_open = 0.0;
  double wln_closed = 0.0;
  double g2_closed = 0.0;
  double delta = 0.0;
};

/// Witness grids: covering_grid(state, alpha_abs, points).
struct GridSpec {
  double alpha_abs = 0.0;
  int points = 201;
};

/// Per tau: the dissipative catalyst and the witnesses of the cavity it
/// leaves behind, next to the same quantities for closed dynamics.
inline std::vector<DissipativeRow> dissipative_scan(const CavityState& cavity,
                                                    const SimulationParams& p,
                                                    const DissipationParams& diss,
                                                    std::span<const double> tau_grid,
                                                    const GridSpec& grid, int threads = 1) {
  detail::check_time_grid(tau_grid);
  const Liouvillian l = build_liouvillian(p, diss);
  std::vector<DissipativeRow> rows(tau_grid.size());
  parallel_for(tau_grid.size(), threads, [&](std::size_t i) {
    const double tau = tau_grid[i];
    DissipativeRow& row = rows[i];
    row.tau = tau;
    const DissipativeRun run = dissipative_run(cavity, l, tau);
    const CavityState open = reduce_to_cavity(run.final_state);
    row.delta = run.delta;
    row.g2_open = g2(open);
    row.wln_open = wln(open, covering_grid(open, grid.alpha_abs, grid.points));

    const AtomState chi = solve_catalyst(cavity, p, tau);
    const CavityState closed = reduced_cavity_analytic(cavity, chi, p, tau);
    row.g2_closed = g2(closed);
    row.wln_closed = wln(closed, covering_grid(closed, grid.alpha_abs, grid.points));
  });
  return rows;
}

}  // namespace jccat

#endif  // JCCAT_PROTOCOLS_HPP
