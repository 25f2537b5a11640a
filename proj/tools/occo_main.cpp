// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "occo/occo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

int exit_code(occo_status s) {
  switch (s) {
    case OCCO_OK:
      return kExitOk;
    case OCCO_ERR_CONFIG:
    case OCCO_ERR_INPUT:
    case OCCO_ERR_DOMAIN:
      return kExitConfig;
    case OCCO_ERR_IO:
      return kExitIo;
    case OCCO_ERR_INVARIANT:
    case OCCO_ERR_PROTOCOL:
    case OCCO_ERR_INTERNAL:
      return kExitInvariant;
  }
  return kExitInvariant;
}

int fail(occo_status s) {
  std::fprintf(stderr, "occo: %s\n", occo_last_error());
  return exit_code(s);
}

struct RunFlags {
  std::string config;
  std::vector<std::pair<std::string, std::optional<std::string>>> settings;
};

int do_run(const RunFlags& flags) {
  occo_config* cfg = nullptr;
  occo_status s = occo_config_create(&cfg);
  if (s != OCCO_OK) return fail(s);
  if (!flags.config.empty()) s = occo_config_load_file(cfg, flags.config.c_str());
  for (const auto& [key, value] : flags.settings) {
    if (s != OCCO_OK) break;
    if (value) s = occo_config_set(cfg, key.c_str(), value->c_str());
  }
  occo_trace* trace = nullptr;
  if (s == OCCO_OK) s = occo_run(cfg, &trace);
  occo_config_destroy(cfg);
  if (s != OCCO_OK) return fail(s);
  size_t n = 0;
  occo_trace_row last{};
  s = occo_trace_length(trace, &n);
  if (s == OCCO_OK && n > 0) s = occo_trace_row_at(trace, n - 1, &last);
  occo_trace_destroy(trace);
  if (s != OCCO_OK) return fail(s);
  std::printf("rounds=%zu cum_gap=%.17g avg_gap=%.17g\n", n, last.cum_gap, last.avg_gap);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online convex-concave optimization simulator"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::vector<std::pair<std::string, std::optional<std::string>>> values = {
      {"case", {}},  {"level", {}}, {"rounds", {}}, {"seed", {}}, {"algo", {}},   {"delays", {}},
      {"epsilon", {}}, {"tol", {}},   {"t0", {}},     {"out", {}},  {"beta", {}},   {"fp_tol", {}},
      {"solver", {}}, {"lambda", {}}, {"mu", {}},     {"cross_check", {}}};
  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", run_flags.config, "key=value file applied before the flags");
  for (auto& [key, value] : values) run->add_option("--" + key, value);

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a key=value file");
  sweep->add_option("--config", sweep_config, "sweep file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*run) {
    run_flags.settings = values;
    return do_run(run_flags);
  }
  size_t runs = 0;
  const occo_status s = occo_sweep_file(sweep_config.c_str(), &runs);
  if (s != OCCO_OK) return fail(s);
  std::printf("runs=%zu\n", runs);
  return kExitOk;
}
