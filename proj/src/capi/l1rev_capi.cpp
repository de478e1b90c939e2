// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "l1rev/l1rev.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "core/bench.hpp"
#include "core/error.hpp"
#include "core/methods.hpp"
#include "core/textio.hpp"

struct l1rev_matrix {
  l1rev::Matrix value;
};
struct l1rev_vector {
  l1rev::Vector value;
};
struct l1rev_report {
  l1rev::SolveReport value;
};
struct l1rev_bench {
  std::vector<l1rev::BenchRecord> records;
};

namespace {

thread_local std::string g_last_error;

l1rev_status to_status(l1rev::ErrorCode code) {
  switch (code) {
    case l1rev::ErrorCode::invalid_argument: return L1REV_INVALID_ARGUMENT;
    case l1rev::ErrorCode::dimension_mismatch: return L1REV_DIMENSION_MISMATCH;
    case l1rev::ErrorCode::numerical: return L1REV_NUMERICAL;
    case l1rev::ErrorCode::parse: return L1REV_PARSE;
    case l1rev::ErrorCode::io: return L1REV_IO;
    case l1rev::ErrorCode::unknown_method: return L1REV_UNKNOWN_METHOD;
    case l1rev::ErrorCode::too_large: return L1REV_TOO_LARGE;
    case l1rev::ErrorCode::internal: return L1REV_INTERNAL;
  }
  return L1REV_INTERNAL;
}

l1rev_status set_error(l1rev_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
l1rev_status guarded(F&& body) {
  try {
    body();
    return L1REV_OK;
  } catch (const l1rev::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(L1REV_TOO_LARGE, "out of memory");
  } catch (const std::exception& e) {
    return set_error(L1REV_INTERNAL, e.what());
  } catch (...) {
    return set_error(L1REV_INTERNAL, "unknown exception");
  }
}

l1rev_status null_arg(const char* who) {
  return set_error(L1REV_INVALID_ARGUMENT, std::string(who) + ": null argument");
}

l1rev::SolverParams to_core(const l1rev_params& p) {
  l1rev::SolverParams s;
  s.epsilon = p.epsilon;
  s.lambda = p.lambda;
  s.maxiter = p.maxiter;
  s.tau = p.tau;
  s.mu = p.mu;
  s.zeta = p.zeta;
  s.zero_tol = p.zero_tol;
  s.lp_feas_tol = p.lp_feas_tol;
  s.ptb_c = p.ptb_c;
  s.ptb_maxiter = p.ptb_maxiter;
  return s;
}

std::vector<l1rev::Method> parse_method_list(const char* list) {
  std::vector<l1rev::Method> out;
  if (list == nullptr || *list == '\0') {
    for (l1rev::Method m : l1rev::all_methods())
      if (m != l1rev::Method::oracle) out.push_back(m);
    return out;
  }
  const std::string s(list);
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    std::string item = s.substr(start, comma - start);
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? std::string() : item.substr(first, last - first + 1);
    if (item.empty()) l1rev::fail(l1rev::ErrorCode::invalid_argument, "empty entry in method list");
    out.push_back(l1rev::parse_method(item));
    start = comma + 1;
  }
  return out;
}

const l1rev::BenchRecord* record_at(const l1rev_bench* b, size_t row) {
  if (b == nullptr || row >= b->records.size()) return nullptr;
  return &b->records[row];
}

}  // namespace

extern "C" {

const char* l1rev_version(void) { return "0.1.0"; }

const char* l1rev_status_string(l1rev_status status) {
  switch (status) {
    case L1REV_OK: return "ok";
    case L1REV_INVALID_ARGUMENT: return "invalid_argument";
    case L1REV_DIMENSION_MISMATCH: return "dimension_mismatch";
    case L1REV_NUMERICAL: return "numerical";
    case L1REV_PARSE: return "parse";
    case L1REV_IO: return "io";
    case L1REV_UNKNOWN_METHOD: return "unknown_method";
    case L1REV_TOO_LARGE: return "too_large";
    case L1REV_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* l1rev_last_error(void) { return g_last_error.c_str(); }

// --- matrices and vectors --------------------------------------------------

l1rev_status l1rev_matrix_create(size_t rows, size_t cols, const double* entries,
                                 l1rev_matrix** out) {
  if (out == nullptr) return null_arg("l1rev_matrix_create");
  return guarded([&] {
    auto h = std::make_unique<l1rev_matrix>();
    if (entries == nullptr) {
      h->value = l1rev::Matrix(rows, cols);
    } else {
      h->value = l1rev::Matrix(rows, cols, std::vector<double>(entries, entries + rows * cols));
    }
    *out = h.release();
  });
}

l1rev_status l1rev_matrix_load(const char* path, l1rev_matrix** out) {
  if (path == nullptr || out == nullptr) return null_arg("l1rev_matrix_load");
  return guarded([&] {
    auto h = std::make_unique<l1rev_matrix>();
    h->value = l1rev::read_matrix(path);
    *out = h.release();
  });
}

l1rev_status l1rev_matrix_save(const l1rev_matrix* a, const char* path) {
  if (a == nullptr || path == nullptr) return null_arg("l1rev_matrix_save");
  return guarded([&] { l1rev::write_matrix(path, a->value); });
}

size_t l1rev_matrix_rows(const l1rev_matrix* a) { return a ? a->value.rows() : 0; }
size_t l1rev_matrix_cols(const l1rev_matrix* a) { return a ? a->value.cols() : 0; }
const double* l1rev_matrix_data(const l1rev_matrix* a) { return a ? a->value.data() : nullptr; }
void l1rev_matrix_free(l1rev_matrix* a) { delete a; }

l1rev_status l1rev_vector_create(size_t size, const double* entries, l1rev_vector** out) {
  if (out == nullptr) return null_arg("l1rev_vector_create");
  return guarded([&] {
    auto h = std::make_unique<l1rev_vector>();
    if (entries == nullptr) {
      h->value.assign(size, 0.0);
    } else {
      h->value.assign(entries, entries + size);
    }
    *out = h.release();
  });
}

l1rev_status l1rev_vector_load(const char* path, l1rev_vector** out) {
  if (path == nullptr || out == nullptr) return null_arg("l1rev_vector_load");
  return guarded([&] {
    auto h = std::make_unique<l1rev_vector>();
    h->value = l1rev::read_vector(path);
    *out = h.release();
  });
}

l1rev_status l1rev_vector_save(const l1rev_vector* v, const char* path) {
  if (v == nullptr || path == nullptr) return null_arg("l1rev_vector_save");
  return guarded([&] { l1rev::write_vector(path, v->value); });
}

size_t l1rev_vector_size(const l1rev_vector* v) { return v ? v->value.size() : 0; }
const double* l1rev_vector_data(const l1rev_vector* v) { return v ? v->value.data() : nullptr; }
void l1rev_vector_free(l1rev_vector* v) { delete v; }

// --- parameters ------------------------------------------------------------

void l1rev_params_default(l1rev_params* params) {
  if (params == nullptr) return;
  const l1rev::SolverParams s;
  params->epsilon = s.epsilon;
  params->lambda = s.lambda;
  params->maxiter = s.maxiter;
  params->tau = s.tau;
  params->mu = s.mu;
  params->zeta = s.zeta;
  params->zero_tol = s.zero_tol;
  params->lp_feas_tol = s.lp_feas_tol;
  params->ptb_c = s.ptb_c;
  params->ptb_maxiter = s.ptb_maxiter;
}

l1rev_status l1rev_params_validate(const l1rev_params* params) {
  if (params == nullptr) return null_arg("l1rev_params_validate");
  return guarded([&] { to_core(*params).validate(); });
}

// --- methods ---------------------------------------------------------------

size_t l1rev_method_count(void) { return l1rev::all_methods().size(); }

const char* l1rev_method_name(size_t index) {
  const auto all = l1rev::all_methods();
  return index < all.size() ? l1rev::cli_name(all[index]) : nullptr;
}

const char* l1rev_method_label(const char* name) {
  if (name == nullptr) return nullptr;
  try {
    return l1rev::label(l1rev::parse_method(name));
  } catch (const l1rev::Error&) {
    return nullptr;
  }
}

// --- solving ---------------------------------------------------------------

l1rev_status l1rev_solve(const l1rev_matrix* a, const l1rev_vector* b, const char* method,
                         const l1rev_params* params, l1rev_report** out) {
  if (a == nullptr || b == nullptr || method == nullptr || out == nullptr)
    return null_arg("l1rev_solve");
  return guarded([&] {
    l1rev_params p;
    if (params == nullptr) {
      l1rev_params_default(&p);
    } else {
      p = *params;
    }
    const l1rev::Method m = l1rev::parse_method(method);
    const l1rev::MlmProblem problem(a->value, b->value);
    auto h = std::make_unique<l1rev_report>();
    h->value = l1rev::solve(problem, m, to_core(p));
    *out = h.release();
  });
}

const char* l1rev_report_label(const l1rev_report* r) { return r ? r->value.label.c_str() : ""; }
size_t l1rev_report_size(const l1rev_report* r) { return r ? r->value.x.size() : 0; }
const double* l1rev_report_x(const l1rev_report* r) { return r ? r->value.x.data() : nullptr; }
const double* l1rev_report_residual(const l1rev_report* r) {
  return r ? r->value.residual.data() : nullptr;
}
size_t l1rev_report_residual_size(const l1rev_report* r) {
  return r ? r->value.residual.size() : 0;
}
double l1rev_report_cost(const l1rev_report* r) { return r ? r->value.cost : NAN; }
size_t l1rev_report_iterations(const l1rev_report* r) { return r ? r->value.iterations : 0; }
int l1rev_report_converged(const l1rev_report* r) { return r && r->value.converged ? 1 : 0; }
double l1rev_report_runtime(const l1rev_report* r) { return r ? r->value.runtime_seconds : NAN; }
double l1rev_report_rev_feasibility(const l1rev_report* r) {
  return r && r->value.has_rev ? r->value.rev_feasibility : 0.0;
}
size_t l1rev_report_warning_count(const l1rev_report* r) {
  return r ? r->value.warnings.size() : 0;
}
const char* l1rev_report_warning(const l1rev_report* r, size_t index) {
  if (r == nullptr || index >= r->value.warnings.size()) return nullptr;
  return r->value.warnings[index].c_str();
}
void l1rev_report_free(l1rev_report* r) { delete r; }

// --- synthetic data --------------------------------------------------------

l1rev_status l1rev_generate(size_t m, size_t n, uint64_t seed, double sparsity,
                            double noise_variance, l1rev_matrix** a, l1rev_vector** b,
                            l1rev_vector** p) {
  if (a == nullptr || b == nullptr || p == nullptr) return null_arg("l1rev_generate");
  if (!(sparsity >= 0.0 && sparsity <= 1.0)) {
    return set_error(L1REV_INVALID_ARGUMENT, "l1rev_generate: sparsity must lie in [0, 1]");
  }
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    return set_error(L1REV_INVALID_ARGUMENT, "l1rev_generate: noise variance must be >= 0");
  }
  return guarded([&] {
    const l1rev::Instance in = l1rev::gen_instance(m, n, seed);
    auto ha = std::make_unique<l1rev_matrix>();
    auto hb = std::make_unique<l1rev_vector>();
    auto hp = std::make_unique<l1rev_vector>();
    ha->value = in.problem.a();
    hb->value = l1rev::add_sparse_noise(in.problem.b(), sparsity, noise_variance, seed);
    hp->value = in.p;
    *a = ha.release();
    *b = hb.release();
    *p = hp.release();
  });
}

// --- experiments -----------------------------------------------------------

void l1rev_bench_options_default(l1rev_bench_options* options) {
  if (options == nullptr) return;
  const l1rev::ExperimentSpec s;
  options->experiment = "noise-free";
  options->m = s.m;
  options->n = s.n;
  options->repeats = s.repeats;
  options->seed = s.seed;
  options->methods = nullptr;
  options->sparsity = nullptr;
  options->sparsity_count = 0;
  options->drl = nullptr;
  options->drl_count = 0;
  options->noise_variance = s.noise_variance;
  options->noise_is_std = s.noise_is_std ? 1 : 0;
  options->threads = s.threads;
  l1rev_params_default(&options->params);
}

l1rev_status l1rev_bench_run(const l1rev_bench_options* options, l1rev_bench** out) {
  if (options == nullptr || out == nullptr || options->experiment == nullptr)
    return null_arg("l1rev_bench_run");
  return guarded([&] {
    l1rev::ExperimentSpec spec;
    spec.kind = l1rev::parse_experiment_kind(options->experiment);
    spec.m = options->m;
    spec.n = options->n;
    spec.repeats = options->repeats;
    spec.seed = options->seed;
    spec.methods = parse_method_list(options->methods);
    if (options->sparsity_count > 0) {
      if (options->sparsity == nullptr) l1rev::fail(l1rev::ErrorCode::invalid_argument, "null sparsity list");
      spec.sparsity_ratios.assign(options->sparsity, options->sparsity + options->sparsity_count);
    }
    if (options->drl_count > 0) {
      if (options->drl == nullptr) l1rev::fail(l1rev::ErrorCode::invalid_argument, "null drl list");
      spec.drl_values.assign(options->drl, options->drl + options->drl_count);
    }
    spec.noise_variance = options->noise_variance;
    spec.noise_is_std = options->noise_is_std != 0;
    spec.threads = options->threads;
    spec.params = to_core(options->params);
    spec.validate();
    auto h = std::make_unique<l1rev_bench>();
    h->records = l1rev::run_experiment(spec);
    *out = h.release();
  });
}

l1rev_status l1rev_bench_write_csv(const l1rev_bench* bench, const char* path) {
  if (bench == nullptr) return null_arg("l1rev_bench_write_csv");
  return guarded([&] {
    if (path == nullptr || std::string(path) == "-") {
      l1rev::write_csv(std::cout, bench->records);
      std::cout.flush();
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) l1rev::fail(l1rev::ErrorCode::io, std::string("cannot open '") + path + "' for writing");
    l1rev::write_csv(os, bench->records);
    os.flush();
    if (!os) l1rev::fail(l1rev::ErrorCode::io, std::string("write to '") + path + "' failed");
  });
}

size_t l1rev_bench_rows(const l1rev_bench* bench) { return bench ? bench->records.size() : 0; }

const char* l1rev_bench_method(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->method.c_str() : nullptr;
}
double l1rev_bench_mean_rel_err(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->mean_relative_error : NAN;
}
double l1rev_bench_mean_runtime(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->mean_runtime_seconds : NAN;
}
double l1rev_bench_sparsity(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->sparsity : NAN;
}
double l1rev_bench_drl(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->drl : NAN;
}
size_t l1rev_bench_repeats(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->repeats : 0;
}
size_t l1rev_bench_errors(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->errors : 0;
}
const char* l1rev_bench_first_error(const l1rev_bench* bench, size_t row) {
  const auto* r = record_at(bench, row);
  return r ? r->first_error.c_str() : nullptr;
}
void l1rev_bench_free(l1rev_bench* bench) { delete bench; }

}  // extern "C"
