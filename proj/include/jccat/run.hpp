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

#ifndef JCCAT_RUN_HPP
#define JCCAT_RUN_HPP

// Experiment orchestration: resolves a RunConfig, runs the protocol and
// writes one CSV plus metadata.conf into the output directory.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jccat/config.hpp"
#include "jccat/protocols.hpp"
#include "jccat/version.hpp"
#include "jccat/witness.hpp"

namespace jccat {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& header) { out_ << header << '\n'; }

  template <class... T>
  void row(const T&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  std::ostringstream out_;
};

struct RunResult {
  std::string csv_name;
  std::string csv;
  std::string metadata;
};

namespace detail {

inline PhaseGrid witness_grid(const RunConfig& c, const CavityState& s) {
  if (c.grid_half_width > 0.0) {
    const auto axis = linspace(-c.grid_half_width, c.grid_half_width, c.grid_points);
    return {axis, axis};
  }
  return covering_grid(s, std::abs(c.alpha), c.grid_points);
}

inline void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot write '" + path.string() + "'");
  f << body;
  if (!f) throw io_error("error while writing '" + path.string() + "'");
}

}  // namespace detail

/// Runs the experiment and returns the CSV and metadata text.
inline RunResult compute_experiment(const RunConfig& c, int threads = 1) {
  std::ostringstream meta;
  meta << "meta.version = " << kVersion << '\n';
  meta << "meta.wln_log_base = e\n";
  meta << "meta.fidelity = squared Uhlmann\n";
  meta << "meta.bloch_coordinates = z = 2q - 1, y = 2 Im r\n";
  if (c.grid_half_width > 0.0)
    meta << "meta.grid = fixed square, points per axis " << c.grid_points << '\n';
  else
    meta << "meta.grid = [-L, L]^2, L = max(sqrt2(|alpha| + 3) + 1, |mean| + 5.5 sd), points per axis "
         << c.grid_points << '\n';

  const SimulationParams& p = c.params;
  auto cavity = [&] { return coherent_state(c.alpha, p.n_trunc, c.tail_tol); };
  RunResult res;

  auto trace_meta = [&](const TimeTrace& tr) {
    meta << "meta.catalyst_q = " << format_number(tr.catalyst.q()) << '\n';
    meta << "meta.catalyst_re_r = " << format_number(tr.catalyst.r().real()) << '\n';
    meta << "meta.catalyst_im_r = " << format_number(tr.catalyst.r().imag()) << '\n';
  };

  switch (c.experiment) {
    case Experiment::g2_vs_time: {
      const TimeTrace tr = scan_g2_vs_time(cavity(), p, c.tau_grid, threads);
      CsvWriter csv("t,g2,delta,q,re_r,im_r");
      for (const auto& r : tr.rows)
        csv.row(r.t, r.value, r.delta, r.atom.q(), r.atom.r().real(), r.atom.r().imag());
      trace_meta(tr);
      res = {"g2_vs_t.csv", csv.str(), {}};
      break;
    }
    case Experiment::wln_vs_time:
    case Experiment::squeezing: {
      const bool is_wln = c.experiment == Experiment::wln_vs_time;
      const TimeTrace tr = time_trace(
          cavity(), p, c.tau_grid,
          [&](const CavityState& s) {
            return is_wln ? wln(s, detail::witness_grid(c, s)) : squeezing_xi(s);
          },
          threads);
      CsvWriter csv(is_wln ? "t,wln,delta" : "t,xi,delta");
      for (const auto& r : tr.rows) csv.row(r.t, r.value, r.delta);
      trace_meta(tr);
      res = {is_wln ? "wln_vs_t.csv" : "squeezing.csv", csv.str(), {}};
      break;
    }
    case Experiment::wigner: {
      const CavityState rho = cavity();
      const AtomState chi = solve_catalyst(rho, p, *c.tau);
      const CavityState s = reduced_cavity_analytic(rho, chi, p, *c.tau);
      const PhaseGrid grid = detail::witness_grid(c, s);
      const WignerField w = wigner(s, grid.x, grid.p);
      CsvWriter csv("x,p,w");
      for (std::size_t i = 0; i < grid.x.size(); ++i)
        for (std::size_t j = 0; j < grid.p.size(); ++j) csv.row(grid.x[i], grid.p[j], w.values(i, j));
      meta << "meta.catalyst_q = " << format_number(chi.q()) << '\n';
      meta << "meta.catalyst_re_r = " << format_number(chi.r().real()) << '\n';
      meta << "meta.catalyst_im_r = " << format_number(chi.r().imag()) << '\n';
      meta << "meta.delta = " << format_number(verify_catalytic_closed(rho, chi, p, *c.tau)) << '\n';
      meta << "meta.wln = " << format_number(wln(w)) << '\n';
      res = {"wigner.csv", csv.str(), {}};
      break;
    }
    case Experiment::scan_alpha: {
      const auto rows = scan_min_g2_vs_alpha(c.alpha_grid, p, c.gtau_bound, c.tau_step, threads);
      CsvWriter csv("alpha,min_g2,argmin_tau");
      meta << "meta.n_trunc_per_alpha =";
      for (const auto& r : rows) {
        csv.row(r.alpha, r.min_g2, r.argmin_tau);
        meta << ' ' << r.n_trunc;
      }
      meta << '\n';
      meta << "meta.tau_grid = tau_k = k * run.tau_step, |g| tau_k <= run.gtau_bound\n";
      res = {"scan_alpha.csv", csv.str(), {}};
      break;
    }
    case Experiment::catalytic_set: {
      const auto recs = catalytic_set_scan(cavity(), p, c.n_samples, c.gtau_bound, c.seed, threads);
      CsvWriter csv("tau,q,re_r,im_r,g2,feasible,delta");
      for (const auto& r : recs) csv.row(r.tau, r.q, r.r.real(), r.r.imag(), r.g2, r.feasible, r.delta);
      meta << "meta.sampling_law = tau uniform on (0, run.gtau_bound / |g|], mt19937_64(seed)\n";
      res = {"catalytic_set.csv", csv.str(), {}};
      break;
    }
    case Experiment::dissipative: {
      const auto rows = dissipative_scan(cavity(), p, c.diss, c.tau_grid,
                                         {std::abs(c.alpha), c.grid_points}, threads);
      CsvWriter csv("tau,wln_open,g2_open,wln_closed,g2_closed,delta");
      for (const auto& r : rows)
        csv.row(r.tau, r.wln_open, r.g2_open, r.wln_closed, r.g2_closed, r.delta);
      res = {"dissipative.csv", csv.str(), {}};
      break;
    }
    case Experiment::multicavity: {
      const CavityState rho = cavity();
      std::vector<MultiCavityResult> results(c.n_cavities.size());
      parallel_for(results.size(), threads, [&](std::size_t i) {
        results[i] = multi_cavity_protocol(rho, p, *c.tau, c.n_cavities[i]);
      });
      CsvWriter csv("n_cavities,fidelity");
      for (const auto& r : results) csv.row(r.n_cavities, r.fidelity);
      res = {"multicavity.csv", csv.str(), {}};
      break;
    }
  }
  res.metadata = serialize_config(c) + meta.str();
  return res;
}

/// Runs the experiment and writes <output_dir>/<csv> and
/// <output_dir>/metadata.conf.
inline RunResult run_experiment(const RunConfig& c, const std::string& output_dir, int threads = 1) {
  RunConfig resolved = c;
  resolved.output_dir = output_dir;
  RunResult res = compute_experiment(resolved, threads);
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw io_error("cannot create output directory '" + output_dir + "': " + ec.message());
  detail::write_file(std::filesystem::path(output_dir) / res.csv_name, res.csv);
  detail::write_file(std::filesystem::path(output_dir) / "metadata.conf", res.metadata);
  return res;
}

}  // namespace jccat

#endif  // JCCAT_RUN_HPP
