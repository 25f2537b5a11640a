// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "occo/payoff.hpp"
#include "occo/runtime.hpp"

namespace occo {

/// Seedable generator with independent named streams. The engine is
/// std::mt19937_64 seeded with splitmix64(seed + stream * golden). Uniforms
/// take the top 53 bits; Gaussians use Box-Muller (both outputs consumed).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform();
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream ids.
inline constexpr std::uint64_t kEnvironmentStream = 1;
inline constexpr std::uint64_t kAlgorithmStream = 2;

enum class EnvCase { kI, kII, kIII, kIV };
enum class Level { kI, kII, kIII };

std::string_view to_string(EnvCase c);
std::string_view to_string(Level l);
EnvCase parse_case(std::string_view s);
Level parse_level(std::string_view s);

/// Saddle-center generator for the four environment settings, with
/// z1(t) = ln(1 + t), z2(t) = ln ln(e + t):
///   I:   (z2 / 3) exp(i z1)
///   II:  (z2 / 3) exp(i (2 pi / 3) t + i z2)
///   III: exp((eps + i 2 pi t) / 7) / 2,  eps ~ U(0, 1)
///   IV:  exp(i (phi + arg(x_t + i y_t))) / 2,  phi ~ N(pi, 1)
class Environment {
 public:
  Environment(EnvCase c, std::uint64_t seed);

  EnvCase env_case() const { return case_; }
  /// (x*_t, y*_t). Case IV needs the pair played this round.
  std::array<double, 2> saddle_center(long t, std::optional<std::array<double, 2>> played = std::nullopt);
  /// Case IV with the Gaussian draw replaced by a fixed phase.
  static std::array<double, 2> adversarial_center(double phi, double x, double y);

 private:
  EnvCase case_;
  Rng rng_;
};

/// Comparator for one round. Level i: (0, 0). Level ii: the saddle center
/// divided by ln(1 + t), clamped. Level iii: (argmin_x f(x, y_t),
/// argmax_y f(x_t, y)); closed form for the scalar quadratic family with
/// positive curvature, a 100001-point grid search otherwise.
std::array<double, 2> comparator(Level level, const PayoffFunction& f, double x, double y, double x_star,
                                 double y_star, long t, const BoxDomain& X, const BoxDomain& Y);

/// argmin over a scalar box of g, by grid search on `points` points.
double grid_argmin(const std::function<double(double)>& g, double lo, double hi, std::size_t points);

enum class SolverMode { kFixedPoint, kCertified };

struct RunConfig {
  EnvCase env_case = EnvCase::kI;
  Level level = Level::kIII;
  long rounds = 10'000;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kModular;
  std::vector<int> delays = {1, 3, 7, 8};
  double epsilon = 1.0;
  /// Certificate tolerance of the dual extrapolation path.
  double tol = 1e-9;
  /// Update-norm tolerance of the fixed-point path.
  double fp_tol = 1e-13;
  double beta = 0.5;
  long t0 = 64;
  SolverMode solver = SolverMode::kFixedPoint;
  bool cross_check = false;
  double lambda = -1.0;
  double mu = -1.0;
  std::string out;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
  PlayerConfig player_config() const;
};

/// Set one key=value pair. Keys: case, level, rounds, seed, algo, delays,
/// epsilon, tol, fp_tol, beta, t0, solver, cross_check, lambda, mu, out.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat key=value lines; '#' starts a comment. Returns the pairs in order.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in);
std::vector<std::pair<std::string, std::string>> read_key_values_file(const std::filesystem::path& path);

struct TraceRow {
  RoundDiagnostics diag;
  double x_star = 0.0;
  double y_star = 0.0;
  double u = 0.0;
  double v = 0.0;
  double gap = 0.0;
  double cum_gap = 0.0;
  double avg_gap = 0.0;
};

struct RunResult {
  RunConfig config;
  std::vector<TraceRow> rows;
  std::vector<PayoffPtr> payoffs;
};

/// Runs the round loop; writes the trace CSV when cfg.out is set.
RunResult run_experiment(const RunConfig& cfg);

inline constexpr std::string_view kTraceHeader =
    "t,x,y,u,v,gap,cum_gap,avg_gap,w,omega,xi_1,xi_2,xi_3,xi_4,eta,gamma,theta,vartheta,zeta,solver_iters,"
    "solver_flag";

/// Shortest round-trip decimal form.
std::string format_number(double v);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

struct PlotSeries {
  std::string name;
  Vec avg_gap;
};

/// Long-format CSV (t,series,avg_gap) plus a plotting script stub next to it
/// (<path>.plot.py). Series must share the round axis.
void emit_plotdata(const std::vector<PlotSeries>& series, const std::filesystem::path& path);

/// Cartesian product over the list-valued keys case, level, algo and seed
/// (comma separated). Every run goes to <out>/run_<case>_<level>_<algo>_s<seed>.csv
/// and the time-averaged gaps are collected in <out>/plotdata.csv.
/// Returns the number of runs.
std::size_t run_sweep(const std::vector<std::pair<std::string, std::string>>& settings);

}  // namespace occo
