// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "occo/error.hpp"

namespace occo {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("invalid number for " + std::string(key) + ": '" + v + "'");
  }
  return out;
}

long long parse_integer(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("invalid integer for " + std::string(key) + ": '" + v + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + v + "'");
}

std::array<double, 2> to_pair(std::complex<double> z) { return {z.real(), z.imag()}; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed + stream * kGolden)) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal(double mean, double stddev) {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return mean + stddev * z;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  return mean + stddev * r * std::cos(a);
}

std::string_view to_string(EnvCase c) {
  switch (c) {
    case EnvCase::kI:
      return "I";
    case EnvCase::kII:
      return "II";
    case EnvCase::kIII:
      return "III";
    case EnvCase::kIV:
      return "IV";
  }
  return "?";
}

std::string_view to_string(Level l) {
  switch (l) {
    case Level::kI:
      return "i";
    case Level::kII:
      return "ii";
    case Level::kIII:
      return "iii";
  }
  return "?";
}

EnvCase parse_case(std::string_view s) {
  if (s == "I") return EnvCase::kI;
  if (s == "II") return EnvCase::kII;
  if (s == "III") return EnvCase::kIII;
  if (s == "IV") return EnvCase::kIV;
  throw ConfigError("unknown case: " + std::string(s));
}

Level parse_level(std::string_view s) {
  if (s == "i") return Level::kI;
  if (s == "ii") return Level::kII;
  if (s == "iii") return Level::kIII;
  throw ConfigError("unknown comparator level: " + std::string(s));
}

Environment::Environment(EnvCase c, std::uint64_t seed) : case_(c), rng_(seed, kEnvironmentStream) {}

std::array<double, 2> Environment::adversarial_center(double phi, double x, double y) {
  return to_pair(0.5 * std::exp(std::complex<double>(0.0, phi + std::atan2(y, x))));
}

std::array<double, 2> Environment::saddle_center(long t, std::optional<std::array<double, 2>> played) {
  OCCO_REQUIRE(t >= 1, InputError, "rounds start at 1");
  const double td = static_cast<double>(t);
  const double z1 = std::log1p(td);
  const double z2 = std::log(std::log(std::numbers::e + td));
  std::array<double, 2> p{};
  switch (case_) {
    case EnvCase::kI:
      p = to_pair(z2 / 3.0 * std::exp(std::complex<double>(0.0, z1)));
      break;
    case EnvCase::kII:
      p = to_pair(z2 / 3.0 * std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / 3.0 * td + z2)));
      break;
    case EnvCase::kIII: {
      const double eps = rng_.uniform();
      p = to_pair(0.5 * std::exp(std::complex<double>(eps, 2.0 * std::numbers::pi * td) / 7.0));
      break;
    }
    case EnvCase::kIV: {
      OCCO_REQUIRE(played.has_value(), ProtocolError, "the adversarial case needs the played strategies");
      const double phi = rng_.normal(std::numbers::pi, 1.0);
      p = adversarial_center(phi, (*played)[0], (*played)[1]);
      break;
    }
  }
  OCCO_REQUIRE(std::abs(p[0]) <= 1.0 && std::abs(p[1]) <= 1.0, InvariantViolation, "saddle center left [-1, 1]^2");
  return p;
}

double grid_argmin(const std::function<double(double)>& g, double lo, double hi, std::size_t points) {
  OCCO_REQUIRE(points >= 2, InputError, "grid needs at least two points");
  double best_x = lo;
  double best = g(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = g(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

std::array<double, 2> comparator(Level level, const PayoffFunction& f, double x, double y, double x_star,
                                 double y_star, long t, const BoxDomain& X, const BoxDomain& Y) {
  OCCO_REQUIRE(X.dim() == 1 && Y.dim() == 1, InputError, "comparators are defined on scalar domains");
  const double xl = X.lower()[0], xu = X.upper()[0];
  const double yl = Y.lower()[0], yu = Y.upper()[0];
  switch (level) {
    case Level::kI:
      return {0.0, 0.0};
    case Level::kII: {
      const double s = std::log1p(static_cast<double>(t));
      return {std::clamp(x_star / s, xl, xu), std::clamp(y_star / s, yl, yu)};
    }
    case Level::kIII: {
      const auto q = f.quadratic_form();
      if (q && q->c > 0.0) {
        // Stationarity: c (u + y) + p = 0 and c (x - v) + q = 0.
        return {std::clamp(-y - q->p / q->c, xl, xu), std::clamp(x + q->q / q->c, yl, yu)};
      }
      constexpr std::size_t kPoints = 100'001;
      const double u = grid_argmin([&](double a) { return f.at(a, y); }, xl, xu, kPoints);
      const double v = grid_argmin([&](double b) { return -f.at(x, b); }, yl, yu, kPoints);
      return {u, v};
    }
  }
  return {0.0, 0.0};
}

void RunConfig::validate() const {
  OCCO_REQUIRE(rounds >= 1, ConfigError, "rounds must be >= 1");
  OCCO_REQUIRE(epsilon > 0.0, ConfigError, "epsilon must be positive");
  OCCO_REQUIRE(tol > 0.0 && fp_tol > 0.0, ConfigError, "tolerances must be positive");
  OCCO_REQUIRE(beta > 0.0 && beta <= 1.0, ConfigError, "beta must lie in (0, 1]");
  OCCO_REQUIRE(t0 >= 2, ConfigError, "t0 must be >= 2");
  if (algorithm != Algorithm::kAderPair) {
    OCCO_REQUIRE(!delays.empty(), ConfigError, "delays must be nonempty");
  }
  OCCO_REQUIRE(delays.size() <= 4, ConfigError, "at most four predictors are supported");
  OCCO_REQUIRE(std::is_sorted(delays.begin(), delays.end()) &&
                   std::adjacent_find(delays.begin(), delays.end()) == delays.end(),
               ConfigError, "delays must be sorted and unique");
  for (int d : delays) OCCO_REQUIRE(d >= 1, ConfigError, "delays must be positive");
  if (algorithm == Algorithm::kModular) {
    OCCO_REQUIRE(t0 >= static_cast<long>(delays.size()), ConfigError, "t0 must be at least the number of delays");
  }
}

PlayerConfig RunConfig::player_config() const {
  PlayerConfig p;
  p.algorithm = algorithm;
  p.predictors = std::max<std::size_t>(delays.size(), 1);
  p.initial_horizon = t0;
  p.epsilon = epsilon;
  p.lambda = lambda;
  p.mu = mu;
  p.solver.tol = fp_tol;
  p.solver.damping = beta;
  p.solver.cross_check = cross_check;
  p.solver.certified_only = solver == SolverMode::kCertified;
  p.solver.certified_tol = tol;
  return p;
}

void apply_setting(RunConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "case") {
    cfg.env_case = parse_case(value);
  } else if (key == "level") {
    cfg.level = parse_level(value);
  } else if (key == "rounds") {
    cfg.rounds = static_cast<long>(parse_integer(key, value));
  } else if (key == "seed") {
    const long long s = parse_integer(key, value);
    OCCO_REQUIRE(s >= 0, ConfigError, "seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "algo") {
    cfg.algorithm = parse_algorithm(value);
  } else if (key == "delays") {
    cfg.delays.clear();
    if (!value.empty()) {
      for (const auto& d : split(value, ',')) cfg.delays.push_back(static_cast<int>(parse_integer(key, d)));
    }
  } else if (key == "epsilon") {
    cfg.epsilon = parse_double(key, value);
  } else if (key == "tol") {
    cfg.tol = parse_double(key, value);
  } else if (key == "fp_tol") {
    cfg.fp_tol = parse_double(key, value);
  } else if (key == "beta") {
    cfg.beta = parse_double(key, value);
  } else if (key == "t0") {
    cfg.t0 = static_cast<long>(parse_integer(key, value));
  } else if (key == "solver") {
    if (value == "fixed-point") {
      cfg.solver = SolverMode::kFixedPoint;
    } else if (value == "certified") {
      cfg.solver = SolverMode::kCertified;
    } else {
      throw ConfigError("unknown solver: " + value);
    }
  } else if (key == "cross_check") {
    cfg.cross_check = parse_bool(key, value);
  } else if (key == "lambda") {
    cfg.lambda = parse_double(key, value);
  } else if (key == "mu") {
    cfg.mu = parse_double(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw ConfigError("unknown setting: " + key);
  }
}

std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_key_values_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  return read_key_values(in);
}

RunResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  RunResult res;
  res.config = cfg;
  const PlayerConfig pc = cfg.player_config();
  auto player = make_player(pc);
  Environment env(cfg.env_case, cfg.seed);
  const std::vector<int> bank_delays =
      cfg.algorithm == Algorithm::kOptOppm ? std::vector<int>{cfg.delays.front()} : cfg.delays;
  res.rows.reserve(static_cast<std::size_t>(cfg.rounds));
  res.payoffs.reserve(static_cast<std::size_t>(cfg.rounds));
  double cum = 0.0;
  for (long t = 1; t <= cfg.rounds; ++t) {
    std::vector<PayoffPtr> bank;
    if (cfg.algorithm != Algorithm::kAderPair) bank = delayed_predictor_bank(res.payoffs, bank_delays, t);
    const Strategy s = player->decide(bank);
    const auto center = env.saddle_center(t, std::array<double, 2>{s.x[0], s.y[0]});
    const PayoffPtr f = make_quadratic(center[0], center[1]);
    TraceRow row;
    row.diag = player->observe(f);
    row.x_star = center[0];
    row.y_star = center[1];
    const auto uv = comparator(cfg.level, *f, s.x[0], s.y[0], center[0], center[1], t, pc.X, pc.Y);
    row.u = uv[0];
    row.v = uv[1];
    row.gap = f->at(s.x[0], row.v) - f->at(row.u, s.y[0]);
    cum += row.gap;
    row.cum_gap = cum;
    row.avg_gap = cum / static_cast<double>(t);
    res.rows.push_back(std::move(row));
    res.payoffs.push_back(f);
  }
  if (!cfg.out.empty()) write_trace_csv(std::filesystem::path(cfg.out), res.rows);
  return res;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("number formatting failed");
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  auto opt = [&](const std::optional<double>& v) {
    out << ',';
    if (v) out << format_number(*v);
  };
  for (const auto& r : rows) {
    const RoundDiagnostics& d = r.diag;
    out << d.t << ',' << format_number(d.x[0]) << ',' << format_number(d.y[0]) << ',' << format_number(r.u) << ','
        << format_number(r.v) << ',' << format_number(r.gap) << ',' << format_number(r.cum_gap) << ','
        << format_number(r.avg_gap);
    opt(d.w);
    opt(d.omega);
    for (std::size_t k = 0; k < 4; ++k) {
      out << ',';
      if (k < d.xi.size()) out << format_number(d.xi[k]);
    }
    opt(d.eta);
    opt(d.gamma);
    opt(d.theta);
    opt(d.vartheta);
    opt(d.zeta);
    out << ',';
    if (d.solver_iterations) out << *d.solver_iterations;
    out << ',';
    if (d.solver_flag) out << to_string(*d.solver_flag);
    out << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open trace file for writing: " + path.string());
  write_trace_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed writing trace file: " + path.string());
}

void emit_plotdata(const std::vector<PlotSeries>& series, const std::filesystem::path& path) {
  for (const auto& s : series) {
    OCCO_REQUIRE(s.avg_gap.size() == series.front().avg_gap.size(), InputError,
                 "plot series must share the round axis");
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open plot data file for writing: " + path.string());
    out << "t,series,avg_gap\n";
    for (const auto& s : series) {
      for (std::size_t t = 0; t < s.avg_gap.size(); ++t) {
        out << (t + 1) << ',' << s.name << ',' << format_number(s.avg_gap[t]) << '\n';
      }
    }
    out.flush();
    if (!out) throw IoError("failed writing plot data file: " + path.string());
  }
  std::filesystem::path script = path;
  script += ".plot.py";
  std::ofstream py(script, std::ios::binary);
  if (!py) throw IoError("cannot open plot script for writing: " + script.string());
  py << "# Plots time-averaged D-DGap per series from the CSV next to this file.\n"
        "import csv\n"
        "import sys\n"
        "from collections import defaultdict\n"
        "\n"
        "import matplotlib.pyplot as plt\n"
        "\n"
        "path = sys.argv[1] if len(sys.argv) > 1 else "
     << '"' << path.filename().string() << '"'
     << "\n"
        "series = defaultdict(lambda: ([], []))\n"
        "with open(path) as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        ts, gs = series[row[\"series\"]]\n"
        "        ts.append(int(row[\"t\"]))\n"
        "        gs.append(float(row[\"avg_gap\"]))\n"
        "for name, (ts, gs) in sorted(series.items()):\n"
        "    plt.plot(ts, gs, label=name)\n"
        "plt.xscale(\"log\")\n"
        "plt.xlabel(\"t\")\n"
        "plt.ylabel(\"time-averaged D-DGap\")\n"
        "plt.legend()\n"
        "plt.savefig(path + \".png\", dpi=150)\n";
  if (!py) throw IoError("failed writing plot script: " + script.string());
}

std::size_t run_sweep(const std::vector<std::pair<std::string, std::string>>& settings) {
  RunConfig base;
  std::vector<std::string> cases{"I"}, levels{"iii"}, algos{"modular"}, seeds{"0"};
  std::string out_dir;
  for (const auto& [k, v] : settings) {
    if (k == "case") {
      cases = split(v, ',');
    } else if (k == "level") {
      levels = split(v, ',');
    } else if (k == "algo") {
      algos = split(v, ',');
    } else if (k == "seed") {
      seeds = split(v, ',');
    } else if (k == "out") {
      out_dir = v;
    } else {
      apply_setting(base, k, v);
    }
  }
  OCCO_REQUIRE(!out_dir.empty(), ConfigError, "sweep needs an output directory (out=...)");
  // Validate every value before running anything.
  for (const auto& c : cases) parse_case(c);
  for (const auto& l : levels) parse_level(l);
  for (const auto& a : algos) parse_algorithm(a);
  for (const auto& s : seeds) apply_setting(base, "seed", s);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
  std::vector<PlotSeries> series;
  std::size_t runs = 0;
  for (const auto& c : cases) {
    for (const auto& l : levels) {
      for (const auto& a : algos) {
        for (const auto& s : seeds) {
          RunConfig cfg = base;
          apply_setting(cfg, "case", c);
          apply_setting(cfg, "level", l);
          apply_setting(cfg, "algo", a);
          apply_setting(cfg, "seed", s);
          const std::string name = "run_" + c + "_" + l + "_" + a + "_s" + s;
          cfg.out = (std::filesystem::path(out_dir) / (name + ".csv")).string();
          const RunResult r = run_experiment(cfg);
          PlotSeries ps{name.substr(4), {}};
          ps.avg_gap.reserve(r.rows.size());
          for (const auto& row : r.rows) ps.avg_gap.push_back(row.avg_gap);
          series.push_back(std::move(ps));
          ++runs;
        }
      }
    }
  }
  emit_plotdata(series, std::filesystem::path(out_dir) / "plotdata.csv");
  return runs;
}

}  // namespace occo
