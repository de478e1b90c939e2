// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// l1rev command line: generate synthetic data, solve one instance, run an
// experiment. Exit codes: 0 success, 1 usage or input error, 2 the solver
// stopped at its iteration cap (the result is still printed).

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "l1rev/l1rev.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

struct MatrixDeleter {
  void operator()(l1rev_matrix* p) const { l1rev_matrix_free(p); }
};
struct VectorDeleter {
  void operator()(l1rev_vector* p) const { l1rev_vector_free(p); }
};
struct ReportDeleter {
  void operator()(l1rev_report* p) const { l1rev_report_free(p); }
};
struct BenchDeleter {
  void operator()(l1rev_bench* p) const { l1rev_bench_free(p); }
};
using MatrixPtr = std::unique_ptr<l1rev_matrix, MatrixDeleter>;
using VectorPtr = std::unique_ptr<l1rev_vector, VectorDeleter>;
using ReportPtr = std::unique_ptr<l1rev_report, ReportDeleter>;
using BenchPtr = std::unique_ptr<l1rev_bench, BenchDeleter>;

int report_failure(l1rev_status status) {
  std::fprintf(stderr, "l1rev: error (%s): %s\n", l1rev_status_string(status), l1rev_last_error());
  return kExitUsage;
}

std::string method_list() {
  std::string out;
  for (size_t i = 0; i < l1rev_method_count(); ++i) {
    if (i) out += ", ";
    out += l1rev_method_name(i);
  }
  return out;
}

struct GenArgs {
  size_t m = 0;
  size_t n = 0;
  uint64_t seed = 1;
  double sparsity = 0.0;
  double noise_var = 0.25;
  std::string out_prefix;
};

int run_gen(const GenArgs& g) {
  if (g.n < 2 || g.m <= g.n) {
    std::fprintf(stderr, "l1rev gen: need m > n >= 2 (got m=%zu, n=%zu)\n", g.m, g.n);
    return kExitUsage;
  }
  l1rev_matrix* a = nullptr;
  l1rev_vector* b = nullptr;
  l1rev_vector* p = nullptr;
  l1rev_status st = l1rev_generate(g.m, g.n, g.seed, g.sparsity, g.noise_var, &a, &b, &p);
  if (st != L1REV_OK) return report_failure(st);
  MatrixPtr ha(a);
  VectorPtr hb(b), hp(p);
  if ((st = l1rev_matrix_save(a, (g.out_prefix + "A.txt").c_str())) != L1REV_OK ||
      (st = l1rev_vector_save(b, (g.out_prefix + "b.txt").c_str())) != L1REV_OK ||
      (st = l1rev_vector_save(p, (g.out_prefix + "p.txt").c_str())) != L1REV_OK) {
    return report_failure(st);
  }
  return kExitOk;
}

struct SolveArgs {
  std::string method = "l1-res";
  std::string matrix;
  std::string rhs;
  std::string out;
  l1rev_params params{};
  bool maxiter_given = false;
};

int run_solve(SolveArgs& s) {
  if (l1rev_method_label(s.method.c_str()) == nullptr) {
    std::fprintf(stderr, "l1rev solve: unknown method '%s'; valid methods: %s\n", s.method.c_str(),
                 method_list().c_str());
    return kExitUsage;
  }
  if (s.maxiter_given) s.params.ptb_maxiter = s.params.maxiter;

  l1rev_matrix* a = nullptr;
  l1rev_status st = l1rev_matrix_load(s.matrix.c_str(), &a);
  if (st != L1REV_OK) return report_failure(st);
  MatrixPtr ha(a);
  l1rev_vector* b = nullptr;
  if ((st = l1rev_vector_load(s.rhs.c_str(), &b)) != L1REV_OK) return report_failure(st);
  VectorPtr hb(b);

  l1rev_report* r = nullptr;
  if ((st = l1rev_solve(a, b, s.method.c_str(), &s.params, &r)) != L1REV_OK) {
    return report_failure(st);
  }
  ReportPtr hr(r);

  FILE* out = stdout;
  if (!s.out.empty() && s.out != "-") {
    out = std::fopen(s.out.c_str(), "w");
    if (out == nullptr) {
      std::fprintf(stderr, "l1rev solve: cannot open '%s' for writing\n", s.out.c_str());
      return kExitUsage;
    }
  }
  const double* x = l1rev_report_x(r);
  for (size_t i = 0; i < l1rev_report_size(r); ++i) std::fprintf(out, "%.17g\n", x[i]);
  const bool write_ok = std::fflush(out) == 0 && !std::ferror(out);
  if (out != stdout) std::fclose(out);
  if (!write_ok) {
    std::fprintf(stderr, "l1rev solve: writing the solution failed\n");
    return kExitUsage;
  }

  const bool converged = l1rev_report_converged(r) != 0;
  for (size_t i = 0; i < l1rev_report_warning_count(r); ++i)
    std::fprintf(stderr, "warning: %s\n", l1rev_report_warning(r, i));
  std::fprintf(stderr, "method: %s\nC1: %.17g\niterations: %zu\nruntime_s: %.6g\nconverged: %s\n",
               l1rev_report_label(r), l1rev_report_cost(r), l1rev_report_iterations(r),
               l1rev_report_runtime(r), converged ? "yes" : "no (iteration cap reached)");
  return converged ? kExitOk : kExitNotConverged;
}

struct BenchArgs {
  std::string experiment;
  l1rev_bench_options options{};
  std::string methods;
  std::vector<double> sparsity;
  std::vector<double> drl;
  std::string csv = "-";
};

int run_bench(BenchArgs& b) {
  b.options.experiment = b.experiment.c_str();
  b.options.methods = b.methods.c_str();
  b.options.sparsity = b.sparsity.data();
  b.options.sparsity_count = b.sparsity.size();
  b.options.drl = b.drl.data();
  b.options.drl_count = b.drl.size();

  l1rev_bench* res = nullptr;
  l1rev_status st = l1rev_bench_run(&b.options, &res);
  if (st != L1REV_OK) return report_failure(st);
  BenchPtr hres(res);
  if ((st = l1rev_bench_write_csv(res, b.csv.c_str())) != L1REV_OK) return report_failure(st);

  size_t runs = 0;
  size_t errors = 0;
  for (size_t i = 0; i < l1rev_bench_rows(res); ++i) {
    runs += l1rev_bench_repeats(res, i);
    errors += l1rev_bench_errors(res, i);
    if (l1rev_bench_errors(res, i) > 0) {
      std::fprintf(stderr, "%s: %zu of %zu runs failed, first: %s\n", l1rev_bench_method(res, i),
                   l1rev_bench_errors(res, i), l1rev_bench_repeats(res, i),
                   l1rev_bench_first_error(res, i));
    }
  }
  if (runs > 0 && errors == runs) {
    std::fprintf(stderr, "l1rev bench: every run failed\n");
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least absolute deviation fitting through the residual reduction", "l1rev"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(l1rev_version()));

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance A.txt, b.txt, p.txt");
  gen_cmd->add_option("--m", gen.m, "Rows of A")->required();
  gen_cmd->add_option("--n", gen.n, "Columns of A")->required();
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--sparsity", gen.sparsity, "Fraction of entries of b receiving noise")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--noise-var", gen.noise_var, "Variance of the noise")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out-prefix", gen.out_prefix,
                      "Prefix prepended to the output file names (e.g. dir/ or run1_)");

  SolveArgs solve;
  l1rev_params_default(&solve.params);
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve min ||A x - b||_1 for one instance");
  solve_cmd->add_option("--method", solve.method, "One of: " + method_list())->capture_default_str();
  solve_cmd->add_option("--matrix", solve.matrix, "Matrix file (header \"m n\")")->required();
  solve_cmd->add_option("--rhs", solve.rhs, "Vector file (header \"m\")")->required();
  solve_cmd->add_option("--eps", solve.params.epsilon, "Stopping tolerance")->capture_default_str();
  solve_cmd->add_option("--lambda", solve.params.lambda, "Penalty weight")->capture_default_str();
  solve_cmd->add_option("--maxiter", solve.params.maxiter,
                        "Iteration cap (default 10000, 15 for l1-ptb)");
  solve_cmd->add_option("--tau", solve.params.tau, "Proximity step of l1-pob")->capture_default_str();
  solve_cmd->add_option("--mu", solve.params.mu, "Penalty of l1-pob and l1-adm (<= 0: default)")
      ->capture_default_str();
  solve_cmd->add_option("--ptb-c", solve.params.ptb_c, "Correction length of l1-ptb")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Write x here instead of standard output");

  BenchArgs bench;
  l1rev_bench_options_default(&bench.options);
  bench.options.threads = 1;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a synthetic experiment and write CSV");
  bench_cmd->add_option("--experiment", bench.experiment, "noise-free, sparse-noise or drl")
      ->required()
      ->check(CLI::IsMember({"noise-free", "sparse-noise", "drl"}));
  bench_cmd->add_option("--m", bench.options.m, "Rows of A (ignored by drl)")->capture_default_str();
  bench_cmd->add_option("--n", bench.options.n, "Columns of A")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.options.repeats, "Instances per cell")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.options.seed, "Base PRNG seed")->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods, "Comma-separated methods (default: all but oracle)");
  bench_cmd->add_option("--sparsity", bench.sparsity, "Noise ratios for sparse-noise")->delimiter(',');
  bench_cmd->add_option("--drl", bench.drl, "m/n ratios for drl")->delimiter(',');
  bench_cmd->add_option("--noise-var", bench.options.noise_variance, "Noise variance")
      ->capture_default_str();
  bench_cmd->add_option("--threads", bench.options.threads,
                        "Worker threads, 0 for all cores (L1REV_THREADS overrides)")
      ->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Output path, - for standard output")
      ->capture_default_str();
  bench_cmd->add_option("--eps", bench.options.params.epsilon, "Stopping tolerance")
      ->capture_default_str();
  bench_cmd->add_option("--lambda", bench.options.params.lambda, "Penalty weight")
      ->capture_default_str();
  bench_cmd->add_option("--maxiter", bench.options.params.maxiter, "Iteration cap")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  solve.maxiter_given = solve_cmd->count("--maxiter") > 0;
  if (*gen_cmd) return run_gen(gen);
  if (*solve_cmd) return run_solve(solve);
  return run_bench(bench);
}
