// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values below were produced by an independent script following the
// documented SplitMix64 / Box-Muller recipe, so ports can check against them.

#include <cmath>
#include <set>

#include "core/random.hpp"
#include "doctest.h"

using namespace l1rev;

TEST_CASE("SplitMix64 stream matches reference draws") {
  CounterRng rng(42);
  CHECK(rng.next_u64() == 0xbdd732262feb6e95ULL);
  CHECK(rng.next_u64() == 0x28efe333b266f103ULL);
  CHECK(rng.next_u64() == 0x47526757130f9f52ULL);
  CHECK(rng.next_u64() == 0x581ce1ff0e4ae394ULL);
  CHECK(rng.counter() == 4);
}

TEST_CASE("uniform and normal transforms match reference values") {
  CounterRng u(42);
  CHECK(u.uniform() == 0.7415648787718234);
  CHECK(u.uniform() == 0.15991039287692016);
  CounterRng n(42);
  CHECK(n.normal() == doctest::Approx(0.41471975043153037).epsilon(1e-15));
  CHECK(n.counter() == 2);
}

TEST_CASE("stream keys") {
  CHECK(instance_stream_key(42) == 42);
  CHECK(noise_stream_key(42) == 0x6bb150a2df30d29bULL);
}

TEST_CASE("uniform stays inside the open unit interval") {
  CounterRng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double v = rng.uniform();
    CHECK_FALSE((v <= 0.0 || v >= 1.0));
  }
}

TEST_CASE("index covers its range") {
  CounterRng rng(8);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = rng.index(10);
    CHECK(k < 10);
    seen.insert(k);
  }
  CHECK(seen.size() == 10);
}

TEST_CASE("normal draws have unit moments") {
  CounterRng rng(9);
  const int count = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < count; ++i) {
    const double v = rng.normal();
    s += v;
    s2 += v * v;
  }
  const double mean = s / count;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(count)));
  CHECK(std::abs(s2 / count - 1.0) <= 0.02);
}
