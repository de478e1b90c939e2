// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>
#include <tuple>

#include "core/error.hpp"
#include "core/random.hpp"

namespace l1rev {

Instance gen_instance(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (n < 2 || m <= n) fail(ErrorCode::invalid_argument, "gen_instance: need m > n >= 2");
  CounterRng rng(instance_stream_key(seed));
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.normal();
  Vector p(n);
  for (double& v : p) v = rng.normal();
  Vector b = matvec(a, p);
  return Instance{MlmProblem(std::move(a), std::move(b)), std::move(p)};
}

Vector add_sparse_noise(std::span<const double> b, double ratio, double variance,
                        std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    fail(ErrorCode::invalid_argument, "add_sparse_noise: ratio must lie in [0, 1]");
  }
  if (!(variance >= 0.0)) fail(ErrorCode::invalid_argument, "add_sparse_noise: variance < 0");
  const std::size_t m = b.size();
  const auto count = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(m)));
  Vector out(b.begin(), b.end());
  if (count == 0) return out;

  CounterRng rng(noise_stream_key(seed));
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.index(m - i)]);
  const double sd = std::sqrt(variance);
  for (std::size_t i = 0; i < count; ++i) out[idx[i]] += sd * rng.normal();
  return out;
}

double relative_error(std::span<const double> x, std::span<const double> p) {
  return norm2(sub(x, p)) / norm2(p);
}

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::noise_free: return "noise-free";
    case ExperimentKind::sparse_noise: return "sparse-noise";
    case ExperimentKind::drl_sweep: return "drl";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "noise-free") return ExperimentKind::noise_free;
  if (name == "sparse-noise") return ExperimentKind::sparse_noise;
  if (name == "drl") return ExperimentKind::drl_sweep;
  fail(ErrorCode::invalid_argument,
       "unknown experiment '" + std::string(name) + "'; valid: noise-free, sparse-noise, drl");
}

void ExperimentSpec::validate() const {
  auto bad = [](const std::string& s) { fail(ErrorCode::invalid_argument, "experiment: " + s); };
  if (repeats < 1) bad("repeats must be >= 1");
  if (methods.empty()) bad("no methods selected");
  if (kind == ExperimentKind::drl_sweep) {
    if (n < 2) bad("n must be >= 2");
    if (drl_values.empty()) bad("drl grid is empty");
    for (double d : drl_values) {
      if (!(d >= 1.0)) bad("drl values must be >= 1");
      if (std::llround(d * static_cast<double>(n)) <= static_cast<long long>(n))
        bad("drl * n must exceed n");
    }
  } else if (n < 2 || m <= n) {
    bad("need m > n >= 2");
  }
  for (double g : sparsity_ratios)
    if (!(g >= 0.0 && g <= 1.0)) bad("sparsity ratios must lie in [0, 1]");
  if (kind != ExperimentKind::noise_free && sparsity_ratios.empty()) bad("no sparsity ratios");
  if (!(noise_variance >= 0.0)) bad("noise variance must be >= 0");
  params.validate();
}

std::size_t resolve_threads(std::size_t requested) {
  if (const char* env = std::getenv("L1REV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  if (requested == 0) return std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

namespace {

struct Config {
  std::size_t m;
  std::size_t n;
  double sparsity;
};

struct RunOutcome {
  bool ok = false;
  bool converged = true;
  double rel_err = 0.0;
  double runtime = 0.0;
  double feas_ratio = 0.0;
  std::string error;
};

std::vector<Config> configurations(const ExperimentSpec& spec) {
  std::vector<Config> out;
  switch (spec.kind) {
    case ExperimentKind::noise_free: out.push_back({spec.m, spec.n, 0.0}); break;
    case ExperimentKind::sparse_noise:
      for (double g : spec.sparsity_ratios) out.push_back({spec.m, spec.n, g});
      break;
    case ExperimentKind::drl_sweep:
      for (double d : spec.drl_values) {
        const auto m = static_cast<std::size_t>(std::llround(d * static_cast<double>(spec.n)));
        out.push_back({m, spec.n, spec.sparsity_ratios.front()});
      }
      break;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<BenchRecord> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<Config> configs = configurations(spec);
  const std::size_t nm = spec.methods.size();
  const std::size_t reps = spec.repeats;
  const double variance = spec.noise_is_std ? spec.noise_variance * spec.noise_variance
                                            : spec.noise_variance;

  // outcomes[(config * reps + rep) * nm + method]
  std::vector<RunOutcome> outcomes(configs.size() * reps * nm);
  const std::size_t jobs = configs.size() * reps;

  auto run_job = [&](std::size_t job) {
    const Config& cfg = configs[job / reps];
    const std::uint64_t seed = spec.seed + job % reps;
    Instance inst = gen_instance(cfg.m, cfg.n, seed);
    const MlmProblem prob =
        cfg.sparsity > 0.0
            ? MlmProblem(inst.problem.a(), add_sparse_noise(inst.problem.b(), cfg.sparsity, variance, seed))
            : inst.problem;
    for (std::size_t k = 0; k < nm; ++k) {
      RunOutcome& out = outcomes[job * nm + k];
      try {
        const SolveReport rep = solve(prob, spec.methods[k], spec.params);
        out.ok = true;
        out.converged = rep.converged;
        out.rel_err = relative_error(rep.x, inst.p);
        out.runtime = rep.runtime_seconds;
        if (rep.has_rev) {
          const double bound = std::max(spec.params.epsilon, 1e-6 * (1.0 + rep.w_norm));
          out.feas_ratio = rep.rev_feasibility / bound;
        }
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };

  const std::size_t workers = std::min(resolve_threads(spec.threads), jobs);
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs; j = next++) run_job(j);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<BenchRecord> records;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t k = 0; k < nm; ++k) {
      BenchRecord rec;
      rec.method = label(spec.methods[k]);
      rec.m = configs[c].m;
      rec.n = configs[c].n;
      rec.sparsity = configs[c].sparsity;
      rec.drl = static_cast<double>(rec.m) / static_cast<double>(rec.n);
      rec.repeats = reps;
      double err_sum = 0.0;
      double time_sum = 0.0;
      std::size_t ok = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const RunOutcome& out = outcomes[(c * reps + r) * nm + k];
        if (!out.ok) {
          ++rec.errors;
          if (rec.first_error.empty()) rec.first_error = out.error;
          continue;
        }
        ++ok;
        err_sum += out.rel_err;
        time_sum += out.runtime;
        if (!out.converged) ++rec.not_converged;
        rec.worst_feasibility_ratio = std::max(rec.worst_feasibility_ratio, out.feas_ratio);
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.mean_relative_error = ok ? err_sum / static_cast<double>(ok) : nan;
      rec.mean_runtime_seconds = ok ? time_sum / static_cast<double>(ok) : nan;
      records.push_back(std::move(rec));
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.method, a.m, a.n, a.sparsity, a.drl) <
           std::tie(b.method, b.m, b.n, b.sparsity, b.drl);
  });
  return records;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "method,m,n,sparsity,drl,mean_rel_err,mean_runtime_s,repeats,errors\n";
  for (const BenchRecord& r : records) {
    os << r.method << ',' << r.m << ',' << r.n << ',' << format_double(r.sparsity) << ','
       << format_double(r.drl) << ',' << format_double(r.mean_relative_error) << ','
       << format_double(r.mean_runtime_seconds) << ',' << r.repeats << ',' << r.errors << '\n';
  }
}

}  // namespace l1rev
