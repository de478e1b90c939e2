// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded generator used for synthetic instances. The algorithm is fixed so
// other implementations can regenerate identical data from a seed:
//
//   mix(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//            z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//            return z ^ (z >> 31)
//   i-th 64-bit draw (i = 0, 1, ...) of stream with key k:
//            mix(k + (i + 1) * 0x9E3779B97F4A7C15)          (SplitMix64)
//   uniform: ((draw >> 11) + 0.5) * 2^-53, always in (0, 1)
//   normal:  two uniforms u1, u2 -> sqrt(-2 ln u1) * cos(2 pi u2)

#pragma once

#include <cstddef>
#include <cstdint>

namespace l1rev {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double normal() noexcept;
  /// Integer in [0, n) as floor(uniform() * n).
  std::size_t index(std::size_t n) noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stream keys: the instance stream uses the seed itself, the noise stream
/// mix(seed ^ 0xD1B54A32D192ED03).
std::uint64_t instance_stream_key(std::uint64_t seed) noexcept;
std::uint64_t noise_stream_key(std::uint64_t seed) noexcept;

}  // namespace l1rev
