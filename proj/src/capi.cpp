// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#include "occo/occo.h"

#include <exception>
#include <filesystem>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "occo/error.hpp"
#include "occo/harness.hpp"

struct occo_config {
  occo::RunConfig cfg;
};

struct occo_trace {
  occo::RunResult result;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
occo_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return OCCO_OK;
  } catch (const occo::ConfigError& e) {
    g_last_error = e.what();
    return OCCO_ERR_CONFIG;
  } catch (const occo::InvariantViolation& e) {
    g_last_error = e.what();
    return OCCO_ERR_INVARIANT;
  } catch (const occo::IoError& e) {
    g_last_error = e.what();
    return OCCO_ERR_IO;
  } catch (const occo::InputError& e) {
    g_last_error = e.what();
    return OCCO_ERR_INPUT;
  } catch (const occo::DomainError& e) {
    g_last_error = e.what();
    return OCCO_ERR_DOMAIN;
  } catch (const occo::ProtocolError& e) {
    g_last_error = e.what();
    return OCCO_ERR_PROTOCOL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OCCO_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OCCO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OCCO_ERR_INTERNAL;
  }
}

void require_arg(const void* p, const char* name) {
  if (p == nullptr) throw occo::InputError(std::string(name) + " must not be null");
}

double or_nan(const std::optional<double>& v) { return v ? *v : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

extern "C" {

const char* occo_last_error(void) { return g_last_error.c_str(); }

const char* occo_version(void) { return "1.0.0"; }

occo_status occo_config_create(occo_config** out) {
  return guard([&] {
    require_arg(out, "out");
    *out = new occo_config();
  });
}

void occo_config_destroy(occo_config* cfg) { delete cfg; }

occo_status occo_config_set(occo_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require_arg(cfg, "cfg");
    require_arg(key, "key");
    require_arg(value, "value");
    occo::apply_setting(cfg->cfg, key, value);
  });
}

occo_status occo_config_load_file(occo_config* cfg, const char* path) {
  return guard([&] {
    require_arg(cfg, "cfg");
    require_arg(path, "path");
    occo::RunConfig next = cfg->cfg;
    for (const auto& [k, v] : occo::read_key_values_file(path)) occo::apply_setting(next, k, v);
    cfg->cfg = std::move(next);
  });
}

occo_status occo_run(const occo_config* cfg, occo_trace** out) {
  return guard([&] {
    require_arg(cfg, "cfg");
    require_arg(out, "out");
    *out = nullptr;
    auto trace = std::make_unique<occo_trace>();
    trace->result = occo::run_experiment(cfg->cfg);
    *out = trace.release();
  });
}

void occo_trace_destroy(occo_trace* trace) { delete trace; }

occo_status occo_trace_length(const occo_trace* trace, size_t* out) {
  return guard([&] {
    require_arg(trace, "trace");
    require_arg(out, "out");
    *out = trace->result.rows.size();
  });
}

occo_status occo_trace_row_at(const occo_trace* trace, size_t index, occo_trace_row* out) {
  return guard([&] {
    require_arg(trace, "trace");
    require_arg(out, "out");
    const auto& rows = trace->result.rows;
    if (index >= rows.size()) throw occo::InputError("row index out of range");
    const occo::TraceRow& r = rows[index];
    const occo::RoundDiagnostics& d = r.diag;
    occo_trace_row row{};
    row.t = d.t;
    row.x = d.x.at(0);
    row.y = d.y.at(0);
    row.u = r.u;
    row.v = r.v;
    row.gap = r.gap;
    row.cum_gap = r.cum_gap;
    row.avg_gap = r.avg_gap;
    row.w = or_nan(d.w);
    row.omega = or_nan(d.omega);
    for (std::size_t k = 0; k < 4; ++k) {
      row.xi[k] = k < d.xi.size() ? d.xi[k] : std::numeric_limits<double>::quiet_NaN();
    }
    row.eta = or_nan(d.eta);
    row.gamma = or_nan(d.gamma);
    row.theta = or_nan(d.theta);
    row.vartheta = or_nan(d.vartheta);
    row.zeta = or_nan(d.zeta);
    row.solver_iterations = d.solver_iterations ? *d.solver_iterations : -1;
    *out = row;
  });
}

occo_status occo_trace_write_csv(const occo_trace* trace, const char* path) {
  return guard([&] {
    require_arg(trace, "trace");
    require_arg(path, "path");
    occo::write_trace_csv(std::filesystem::path(path), trace->result.rows);
  });
}

occo_status occo_plotdata_write(const occo_trace* const* traces, const char* const* names, size_t count,
                                const char* path) {
  return guard([&] {
    require_arg(path, "path");
    if (count > 0) {
      require_arg(traces, "traces");
      require_arg(names, "names");
    }
    std::vector<occo::PlotSeries> series;
    for (size_t i = 0; i < count; ++i) {
      require_arg(traces[i], "trace");
      require_arg(names[i], "name");
      occo::PlotSeries s{names[i], {}};
      for (const auto& row : traces[i]->result.rows) s.avg_gap.push_back(row.avg_gap);
      series.push_back(std::move(s));
    }
    occo::emit_plotdata(series, std::filesystem::path(path));
  });
}

occo_status occo_sweep_file(const char* path, size_t* runs) {
  return guard([&] {
    require_arg(path, "path");
    const std::size_t n = occo::run_sweep(occo::read_key_values_file(path));
    if (runs != nullptr) *runs = n;
  });
}

}  // extern "C"
