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

#ifndef JCCAT_WITNESS_HPP
#define JCCAT_WITNESS_HPP

// Photon statistics and phase-space witnesses of non-classicality.

#include <cmath>
#include <vector>

#include "jccat/catalyst.hpp"
#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"

namespace jccat {

// --- photon statistics ----------------------------------------------------------

/// <n^k> of the cavity state.
inline double photon_moment(const CavityState& s, int k) {
  double m = 0.0;
  for (int n = 1; n < s.dim(); ++n) m += std::pow(static_cast<double>(n), k) * s.population(n);
  return m;
}

inline double mean_photon_number(const CavityState& s) { return photon_moment(s, 1); }

/// Second-order coherence (<n^2> - <n>) / <n>^2.
inline double g2(const CavityState& s) {
  const double n1 = photon_moment(s, 1);
  if (n1 <= 1e-12) throw vacuum_undefined("g2: mean photon number vanishes");
  return (photon_moment(s, 2) - n1) / (n1 * n1);
}

/// <n_S (x) |e><e|> after closed evolution, from the block structure alone.
inline double correlation_term(const CavityState& cavity, const AtomState& atom,
                               const SimulationParams& p, double t) {
  const RabiTable rt(p, t, cavity.dim() + 1);
  const double q = atom.q();
  double sum = 0.0;
  for (int n = 1; n < cavity.dim(); ++n) {
    const double y = 2.0 * (atom.r() * cavity(n + 1, n)).imag() * rt.s(n) * rt.c(n);
    sum += n * ((1.0 - q) * cavity.population(n) * rt.c(n) * rt.c(n) + y +
                q * cavity.population(n + 1) * rt.s(n) * rt.s(n));
  }
  return sum;
}

/// g2 of the cavity after a catalytic closed evolution, without building the
/// joint state. Conservation of excitations fixes <n> and leaves only the
/// correlation term in <n^2>.
inline double g2_catalytic_predict(const CavityState& cavity, const AtomState& atom,
                                   const SimulationParams& p, double tau) {
  if (verify_catalytic_closed(cavity, atom, p, tau) > 1e-6)
    throw not_catalytic("g2_catalytic_predict: atom is not catalytic at this time");
  const double n1 = mean_photon_number(cavity);
  const double g2_in = g2(cavity);
  const double corr = correlation_term(cavity, atom, p, tau);
  return g2_in - 2.0 / (n1 * n1) * (corr - (1.0 - atom.q()) * n1);
}

/// Residual of the k-th moment balance implied by conservation of
/// N = n_S + n_C:
///   <n_S^k>_sigma - <n_S^k>_rho - Tr[(Delta_k + n_C^k)(rho_SC - sigma_SC)],
/// with Delta_k = sum_{i=1}^{k-1} C(k,i) n_S^{k-i} n_C^i. The n_C^k term
/// vanishes for catalytic atoms.
inline double verify_moment_relation(const CavityState& cavity, const AtomState& atom,
                                     const SimulationParams& p, double t, int k) {
  if (k < 2) throw invalid_parameter("verify_moment_relation: k must be >= 2");
  const CavityState rho_s = detail::embed_for_propagation(cavity, p);
  const JointState before = tensor(rho_s, atom);
  const JointState after = evolve_closed(cavity, atom, p, t);
  const int d = before.cavity_dim();

  // All observables are diagonal in the product basis.
  auto cross_term = [&](int n, int a) {
    double v = 0.0;
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) {
      binom = binom * (k - i + 1) / i;
      if (i < k) v += binom * std::pow(static_cast<double>(n), k - i) * std::pow(a, i);
    }
    return v + std::pow(a, k);
  };
  double ns_before = 0.0, ns_after = 0.0, cross = 0.0;
  for (int n = 0; n < d; ++n)
    for (int a = 0; a < 2; ++a) {
      const int idx = JointState::index(n, a);
      const double pb = before.matrix()(idx, idx).real();
      const double pa = after.matrix()(idx, idx).real();
      const double nk = std::pow(static_cast<double>(n), k);
      ns_before += nk * pb;
      ns_after += nk * pa;
      cross += cross_term(n, a) * (pb - pa);
    }
  return std::abs(ns_after - ns_before - cross);
}

// --- phase space ------------------------------------------------------------------

struct PhaseGrid {
  std::vector<double> x;
  std::vector<double> p;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw invalid_parameter("linspace: need at least two points");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

/// Square grid [-L, L]^2 with L = sqrt(2) (|alpha| + 3) + 1.
inline PhaseGrid default_grid(double alpha_abs, int points = 201) {
  const double l = std::sqrt(2.0) * (alpha_abs + 3.0) + 1.0;
  return {linspace(-l, l, points), linspace(-l, l, points)};
}

struct WignerField {
  std::vector<double> x_grid;
  std::vector<double> p_grid;
  RealMatrix values;  // values(i, j) = W(x_i, p_j)

  /// 2-D trapezoid integral of f(W).
  template <class F>
  double integrate(F f) const {
    const double hx = x_grid[1] - x_grid[0];
    const double hp = p_grid[1] - p_grid[0];
    const Eigen::Index nx = values.rows(), np = values.cols();
    double total = 0.0;
    for (Eigen::Index i = 0; i < nx; ++i) {
      const double wi = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
      for (Eigen::Index j = 0; j < np; ++j) {
        const double wj = (j == 0 || j == np - 1) ? 0.5 : 1.0;
        total += wi * wj * f(values(i, j));
      }
    }
    return total * hx * hp;
  }

  double mass() const {
    return integrate([](double w) { return w; });
  }
  double absolute_mass() const {
    return integrate([](double w) { return std::abs(w); });
  }
};

namespace detail {

inline void check_uniform(const std::vector<double>& g, const char* name) {
  if (g.size() < 3) throw grid_too_small(std::string(name) + ": fewer than three points");
  const double h = g[1] - g[0];
  if (!(h > 0.0)) throw invalid_parameter(std::string(name) + ": grid must be increasing");
  for (std::size_t i = 2; i < g.size(); ++i)
    if (std::abs((g[i] - g[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw invalid_parameter(std::string(name) + ": grid must be uniform");
}

struct QuadratureStats {
  double mean_x, mean_p, sd_x, sd_p;
};

inline QuadratureStats quadrature_stats(const CavityState& s) {
  cplx a{0.0}, a2{0.0};
  for (int n = 0; n + 1 < s.dim(); ++n) a += s(n, n + 1) * std::sqrt(n + 1.0);
  for (int n = 0; n + 2 < s.dim(); ++n) a2 += s(n, n + 2) * std::sqrt((n + 1.0) * (n + 2.0));
  const double n1 = mean_photon_number(s);
  // X = (a + a^dag)/sqrt 2, P = (a - a^dag)/(i sqrt 2).
  const double mx = std::sqrt(2.0) * a.real();
  const double mp = std::sqrt(2.0) * a.imag();
  const double x2 = a2.real() + n1 + 0.5;
  const double p2 = -a2.real() + n1 + 0.5;
  return {mx, mp, std::sqrt(std::max(0.0, x2 - mx * mx)), std::sqrt(std::max(0.0, p2 - mp * mp))};
}

inline void check_coverage(const CavityState& s, const PhaseGrid& grid) {
  const QuadratureStats st = quadrature_stats(s);
  constexpr double k = 5.0;
  if (grid.x.front() > st.mean_x - k * st.sd_x || grid.x.back() < st.mean_x + k * st.sd_x ||
      grid.p.front() > st.mean_p - k * st.sd_p || grid.p.back() < st.mean_p + k * st.sd_p)
    throw grid_too_small("phase-space grid covers less than five standard deviations");
}

}  // namespace detail

/// default_grid(alpha_abs), widened when needed so it spans five standard
/// deviations of `s` around its mean in both quadratures.
inline PhaseGrid covering_grid(const CavityState& s, double alpha_abs, int points = 201) {
  const detail::QuadratureStats st = detail::quadrature_stats(s);
  const double need = 5.5 * std::max(st.sd_x, st.sd_p) + std::max(std::abs(st.mean_x), std::abs(st.mean_p));
  const double l = std::max(std::sqrt(2.0) * (alpha_abs + 3.0) + 1.0, need);
  return {linspace(-l, l, points), linspace(-l, l, points)};
}

/// W(x, p) with alpha = (x + i p)/sqrt 2, normalized so that the vacuum has
/// W(0, 0) = 1/pi. Evaluated from the Fock expansion
///   W = (1/pi) sum_{m,n} rho_{n,m} <m| D(alpha) (-1)^N D(alpha)^dag |n>.
inline WignerField wigner(const CavityState& s, const std::vector<double>& x_grid,
                          const std::vector<double>& p_grid) {
  detail::check_uniform(x_grid, "wigner x_grid");
  detail::check_uniform(p_grid, "wigner p_grid");
  detail::check_coverage(s, {x_grid, p_grid});

  const int d = s.dim();
  std::vector<double> lfact(d);
  for (int n = 0; n < d; ++n) lfact[n] = std::lgamma(n + 1.0);

  WignerField field{x_grid, p_grid, RealMatrix(x_grid.size(), p_grid.size())};
  std::vector<double> lag(d);
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
      const cplx alpha = cplx(x_grid[i], p_grid[j]) / std::sqrt(2.0);
      const double r2 = std::norm(alpha);
      const double u = 4.0 * r2;
      const double log2a = r2 > 0.0 ? std::log(2.0 * std::sqrt(r2)) : 0.0;
      const cplx unit = r2 > 0.0 ? alpha / std::sqrt(r2) : cplx(1.0);
      double w = 0.0;
      for (int diff = 0; diff < d; ++diff) {
        // Laguerre L_n^{(diff)}(u) for n = 0 .. d-1-diff.
        const int nmax = d - 1 - diff;
        lag[0] = 1.0;
        if (nmax >= 1) lag[1] = 1.0 + diff - u;
        for (int n = 1; n < nmax; ++n)
          lag[n + 1] = ((2.0 * n + 1.0 + diff - u) * lag[n] - (n + diff) * lag[n - 1]) / (n + 1.0);
        const cplx phase = std::pow(unit, diff);
        for (int n = 0; n <= nmax; ++n) {
          const int m = n + diff;
          if (diff > 0 && r2 == 0.0) break;
          const double mag = std::exp(-2.0 * r2 + diff * log2a + 0.5 * (lfact[n] - lfact[m]));
          const double sign = (n % 2 == 0) ? 1.0 : -1.0;
          // <m|...|n> = sign * mag * L * (alpha/|alpha|)^diff; the (n, m)
          // element is its conjugate.
          const cplx elem = sign * mag * lag[n] * phase;
          if (diff == 0)
            w += (s(n, n) * elem).real();
          else
            w += 2.0 * (s(n, m) * elem).real();
        }
      }
      field.values(i, j) = w / M_PI;
    }
  return field;
}

/// Tolerance on the grid-integrated Wigner mass.
inline constexpr double kGridMassTolerance = 1e-4;

/// ln of the integrated |W|, the Wigner logarithmic negativity in nats.
inline double wln(const WignerField& field) {
  const double mass = field.mass();
  if (std::abs(mass - 1.0) > kGridMassTolerance)
    throw grid_too_small("wln: grid-integrated Wigner mass differs from one");
  return std::max(0.0, std::log(field.absolute_mass()));
}

inline double wln(const CavityState& s, const PhaseGrid& grid) {
  return wln(wigner(s, grid.x, grid.p));
}

/// sqrt(2) Delta X_1 with X_1 = (a + a^dag)/sqrt 2; equals one for coherent
/// states.
inline double squeezing_xi(const CavityState& s) {
  return std::sqrt(2.0) * detail::quadrature_stats(s).sd_x;
}

struct WitnessReport {
  double mean_n = 0.0;
  double second_moment_n = 0.0;
  double g2 = 0.0;
  double wln = 0.0;
  double xi = 1.0;
};

inline WitnessReport witness_report(const CavityState& s, const PhaseGrid& grid) {
  WitnessReport r;
  r.mean_n = photon_moment(s, 1);
  r.second_moment_n = photon_moment(s, 2);
  r.g2 = g2(s);
  r.wln = wln(s, grid);
  r.xi = squeezing_xi(s);
  return r;
}

}  // namespace jccat

#endif  // JCCAT_WITNESS_HPP
