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

#ifndef JCCAT_CONFIG_HPP
#define JCCAT_CONFIG_HPP

// Run configuration: flat "key = value" text with dotted section prefixes.
//
//   # comment
//   experiment   = g2-vs-time
//   params.omega = 2pi
//   run.tau_grid = linspace(0, 40, 401)
//
// Numbers accept the constant pi, sqrt(.), products and quotients, e.g.
// "0.1pi", "pi/2", "1/sqrt(2)". Lists are comma separated or linspace(a, b, n).
// Keys under meta. are informational and ignored.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jccat/errors.hpp"
#include "jccat/hilbert.hpp"
#include "jccat/jc_core.hpp"
#include "jccat/lindblad.hpp"

namespace jccat {

enum class Experiment {
  g2_vs_time,
  wigner,
  wln_vs_time,
  scan_alpha,
  catalytic_set,
  squeezing,
  dissipative,
  multicavity,
};

inline const std::vector<std::pair<Experiment, std::string>>& experiment_names() {
  static const std::vector<std::pair<Experiment, std::string>> names = {
      {Experiment::g2_vs_time, "g2-vs-time"},   {Experiment::wigner, "wigner"},
      {Experiment::wln_vs_time, "wln-vs-time"}, {Experiment::scan_alpha, "scan-alpha"},
      {Experiment::catalytic_set, "catalytic-set"}, {Experiment::squeezing, "squeezing"},
      {Experiment::dissipative, "dissipative"}, {Experiment::multicavity, "multicavity"},
  };
  return names;
}

inline std::string to_string(Experiment e) {
  for (const auto& [k, v] : experiment_names())
    if (k == e) return v;
  return "unknown";
}

struct RunConfig {
  Experiment experiment = Experiment::g2_vs_time;
  SimulationParams params;
  DissipationParams diss;
  cplx alpha{1.0 / std::sqrt(2.0), 0.0};
  double tail_tol = kTailTolerance;
  std::optional<double> tau;
  std::vector<double> tau_grid;
  std::vector<double> alpha_grid;
  double gtau_bound = 100.0;
  double tau_step = 0.01;
  int n_samples = 1000;
  std::vector<int> n_cavities = {1, 2, 3};
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int grid_points = 201;
  double grid_half_width = 0.0;  // 0: chosen from alpha
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (skip(); pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-'); skip()) {
      const char op = s_[pos_++];
      const double rhs = term();
      v = op == '+' ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = unary();
    for (;;) {
      skip();
      if (pos_ >= s_.size()) return v;
      const char c = s_[pos_];
      if (c == '*' || c == '/') {
        ++pos_;
        const double rhs = unary();
        v = c == '*' ? v * rhs : v / rhs;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
        v *= unary();  // implicit product, as in "2pi"
      } else {
        return v;
      }
    }
  }

  double unary() {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      const bool neg = s_[pos_++] == '-';
      const double v = unary();
      return neg ? -v : v;
    }
    return primary();
  }

  double primary() {
    skip();
    if (pos_ >= s_.size()) fail("expected a value");
    if (s_[pos_] == '(') {
      ++pos_;
      const double v = expr();
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      const std::string name = s_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "pi") return M_PI;
      if (name == "sqrt") {
        expect('(');
        const double v = expr();
        expect(')');
        return std::sqrt(v);
      }
      if (name == "inf" || name == "nan") fail("non-finite value");
      fail("unknown name '" + name + "'");
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw config_error("cannot parse number '" + s_ + "': " + msg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !parts.empty()) parts.push_back(trim(cur));
  return parts;
}

}  // namespace detail

inline double parse_number(const std::string& text) {
  const double v = detail::ExprParser(detail::trim(text)).parse();
  if (!std::isfinite(v)) throw config_error("value '" + text + "' is not finite");
  return v;
}

inline long parse_integer(const std::string& text) {
  const double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw config_error("value '" + text + "' is not an integer");
  return static_cast<long>(v);
}

inline std::vector<double> parse_list(const std::string& text) {
  const std::string t = detail::trim(text);
  if (t.rfind("linspace", 0) == 0) {
    const auto open = t.find('(');
    const auto close = t.rfind(')');
    if (open == std::string::npos || close != t.size() - 1)
      throw config_error("malformed linspace '" + t + "'");
    const auto args = detail::split_top_level(t.substr(open + 1, close - open - 1));
    if (args.size() != 3) throw config_error("linspace needs three arguments");
    const double lo = parse_number(args[0]);
    const double hi = parse_number(args[1]);
    const long n = parse_integer(args[2]);
    if (n < 1) throw config_error("linspace needs at least one point");
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
  }
  std::vector<double> v;
  for (const auto& part : detail::split_top_level(t)) {
    if (part.empty()) throw config_error("empty list element in '" + t + "'");
    v.push_back(parse_number(part));
  }
  return v;
}

/// Parses configuration text. Unknown keys, duplicate keys and invalid
/// values raise config_error.
inline RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) throw config_error("duplicate key '" + key + "'");
  }

  RunConfig c;
  bool have_experiment = false;
  std::optional<double> n_th, temperature;
  for (const auto& [key, value] : kv) {
    if (key.rfind("meta.", 0) == 0) continue;
    if (key == "experiment") {
      bool found = false;
      for (const auto& [e, name] : experiment_names())
        if (name == value) {
          c.experiment = e;
          found = true;
        }
      if (!found) throw config_error("unknown experiment '" + value + "'");
      have_experiment = true;
    } else if (key == "seed") {
      const long s = parse_integer(value);
      if (s < 0) throw config_error("seed must be >= 0");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else if (key == "params.omega") {
      c.params.omega = parse_number(value);
    } else if (key == "params.g") {
      c.params.g = parse_number(value);
    } else if (key == "params.detuning") {
      if (parse_number(value) != 0.0) throw config_error("only resonant dynamics is supported");
    } else if (key == "params.n_trunc") {
      c.params.n_trunc = static_cast<int>(parse_integer(value));
    } else if (key == "diss.kappa") {
      c.diss.kappa = parse_number(value);
    } else if (key == "diss.gamma") {
      c.diss.gamma = parse_number(value);
    } else if (key == "diss.n_th") {
      n_th = parse_number(value);
    } else if (key == "diss.temperature") {
      temperature = parse_number(value);
    } else if (key == "cavity.alpha_re") {
      c.alpha.real(parse_number(value));
    } else if (key == "cavity.alpha_im") {
      c.alpha.imag(parse_number(value));
    } else if (key == "cavity.tail_tol") {
      c.tail_tol = parse_number(value);
      if (!(c.tail_tol > 0.0)) throw config_error("cavity.tail_tol must be > 0");
    } else if (key == "run.tau") {
      c.tau = parse_number(value);
    } else if (key == "run.tau_grid") {
      c.tau_grid = parse_list(value);
      if (c.tau_grid.empty()) throw config_error("run.tau_grid is empty");
    } else if (key == "run.alpha_grid") {
      c.alpha_grid = parse_list(value);
      if (c.alpha_grid.empty()) throw config_error("run.alpha_grid is empty");
    } else if (key == "run.gtau_bound") {
      c.gtau_bound = parse_number(value);
    } else if (key == "run.tau_step") {
      c.tau_step = parse_number(value);
    } else if (key == "run.n_samples") {
      c.n_samples = static_cast<int>(parse_integer(value));
    } else if (key == "run.n_cavities") {
      c.n_cavities.clear();
      for (double v : parse_list(value)) {
        if (v != std::floor(v)) throw config_error("run.n_cavities must hold integers");
        c.n_cavities.push_back(static_cast<int>(v));
      }
    } else if (key == "grid.points") {
      c.grid_points = static_cast<int>(parse_integer(value));
    } else if (key == "grid.half_width") {
      c.grid_half_width = parse_number(value);
    } else {
      throw config_error("unknown key '" + key + "'");
    }
  }
  if (!have_experiment) throw config_error("missing key 'experiment'");
  if (n_th && temperature) throw config_error("give diss.n_th or diss.temperature, not both");
  if (n_th) c.diss.n_th = *n_th;
  if (temperature) c.diss.n_th = thermal_occupation(*temperature);

  // Validation that needs no computation.
  c.params.validate();
  c.diss.validate();
  if (c.tau && *c.tau < 0.0) throw config_error("run.tau must be >= 0");
  for (double t : c.tau_grid)
    if (t < 0.0) throw config_error("run.tau_grid entries must be >= 0");
  for (std::size_t i = 1; i < c.tau_grid.size(); ++i)
    if (c.tau_grid[i] < c.tau_grid[i - 1]) throw config_error("run.tau_grid must be non-decreasing");
  if (!(c.gtau_bound > 0.0)) throw config_error("run.gtau_bound must be > 0");
  if (!(c.tau_step > 0.0)) throw config_error("run.tau_step must be > 0");
  if (c.n_samples < 1) throw config_error("run.n_samples must be >= 1");
  for (int n : c.n_cavities)
    if (n < 1) throw config_error("run.n_cavities entries must be >= 1");
  if (c.grid_points < 3) throw config_error("grid.points must be >= 3");
  if (c.grid_half_width < 0.0) throw config_error("grid.half_width must be >= 0");

  switch (c.experiment) {
    case Experiment::g2_vs_time:
    case Experiment::wln_vs_time:
    case Experiment::squeezing:
    case Experiment::dissipative:
      if (c.tau_grid.empty()) throw config_error("experiment needs a non-empty run.tau_grid");
      break;
    case Experiment::wigner:
    case Experiment::multicavity:
      if (!c.tau) throw config_error("experiment needs run.tau");
      break;
    case Experiment::scan_alpha:
      if (c.alpha_grid.empty()) throw config_error("experiment needs a non-empty run.alpha_grid");
      break;
    case Experiment::catalytic_set:
      break;
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

/// Shortest round-trip decimal form.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out;
}

/// Configuration text that parses back to `c` exactly.
inline std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "experiment = " << to_string(c.experiment) << '\n';
  o << "seed = " << c.seed << '\n';
  o << "output_dir = " << c.output_dir << '\n';
  o << "params.omega = " << format_number(c.params.omega) << '\n';
  o << "params.g = " << format_number(c.params.g) << '\n';
  o << "params.n_trunc = " << c.params.n_trunc << '\n';
  o << "diss.kappa = " << format_number(c.diss.kappa) << '\n';
  o << "diss.gamma = " << format_number(c.diss.gamma) << '\n';
  o << "diss.n_th = " << format_number(c.diss.n_th) << '\n';
  o << "cavity.alpha_re = " << format_number(c.alpha.real()) << '\n';
  o << "cavity.alpha_im = " << format_number(c.alpha.imag()) << '\n';
  o << "cavity.tail_tol = " << format_number(c.tail_tol) << '\n';
  if (c.tau) o << "run.tau = " << format_number(*c.tau) << '\n';
  if (!c.tau_grid.empty()) o << "run.tau_grid = " << format_list(c.tau_grid) << '\n';
  if (!c.alpha_grid.empty()) o << "run.alpha_grid = " << format_list(c.alpha_grid) << '\n';
  o << "run.gtau_bound = " << format_number(c.gtau_bound) << '\n';
  o << "run.tau_step = " << format_number(c.tau_step) << '\n';
  o << "run.n_samples = " << c.n_samples << '\n';
  o << "run.n_cavities = ";
  for (std::size_t i = 0; i < c.n_cavities.size(); ++i) o << (i ? ", " : "") << c.n_cavities[i];
  o << '\n';
  o << "grid.points = " << c.grid_points << '\n';
  o << "grid.half_width = " << format_number(c.grid_half_width) << '\n';
  return o.str();
}

}  // namespace jccat

#endif  // JCCAT_CONFIG_HPP
