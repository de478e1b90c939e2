// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic experiments: Gaussian instances b = A p, optional sparse noise,
// repeated solves and the averaged relative error ||x - p|| / ||p||.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "core/methods.hpp"

namespace l1rev {

struct Instance {
  MlmProblem problem;
  Vector p;  // ground-truth parameters, b = A p before noise
};

/// A (m x n) and p with standard-normal entries from the instance stream of
/// `seed` (A row-major first, then p); b = A p.
Instance gen_instance(std::size_t m, std::size_t n, std::uint64_t seed);

/// Adds N(0, variance) noise at exactly round(ratio * m) positions drawn
/// without replacement (partial Fisher-Yates on the noise stream of `seed`).
Vector add_sparse_noise(std::span<const double> b, double ratio, double variance,
                        std::uint64_t seed);

/// ||x - p||_2 / ||p||_2.
double relative_error(std::span<const double> x, std::span<const double> p);

enum class ExperimentKind { noise_free, sparse_noise, drl_sweep };

const char* to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment_kind(std::string_view name);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::noise_free;
  std::size_t m = 256;
  std::size_t n = 128;
  std::size_t repeats = 30;
  std::uint64_t seed = 1;
  std::vector<double> sparsity_ratios{0.25};
  double noise_variance = 0.25;
  bool noise_is_std = false;  // treat noise_variance as a standard deviation
  std::vector<double> drl_values{1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  std::vector<Method> methods;
  SolverParams params;
  std::size_t threads = 1;  // L1REV_THREADS overrides when set

  void validate() const;
};

struct BenchRecord {
  std::string method;
  std::size_t m = 0;
  std::size_t n = 0;
  double sparsity = 0.0;
  double drl = 0.0;
  double mean_relative_error = 0.0;
  double mean_runtime_seconds = 0.0;
  std::size_t repeats = 0;
  std::size_t errors = 0;
  // Not written to CSV.
  std::size_t not_converged = 0;
  /// Largest ||D r - w|| / max(eps, 1e-6 (1 + ||w||)) over the runs.
  double worst_feasibility_ratio = 0.0;
  std::string first_error;
};

std::vector<BenchRecord> run_experiment(const ExperimentSpec& spec);

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);

/// Worker count: L1REV_THREADS when set to a positive integer, else `requested`
/// (0 meaning hardware concurrency).
std::size_t resolve_threads(std::size_t requested);

}  // namespace l1rev
