// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/methods.hpp"
#include "core/oracle.hpp"
#include "core/rev_solvers.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace l1rev;
using l1rev::testing::noisy_problem;
using l1rev::testing::rel_diff;

namespace {

constexpr RevMethod kAllRev[] = {RevMethod::linprog, RevMethod::gpsr, RevMethod::tnipm,
                                 RevMethod::homotopy, RevMethod::ist,  RevMethod::adm,
                                 RevMethod::pob};
constexpr RevMethod kIterative[] = {RevMethod::gpsr, RevMethod::tnipm, RevMethod::homotopy,
                                    RevMethod::ist,  RevMethod::adm,   RevMethod::pob};

double feasibility_bound(const SolverParams& p, std::span<const double> w) {
  return std::max(p.epsilon, 1e-6 * (1.0 + norm2(w)));
}

}  // namespace

TEST_CASE("parameter validation") {
  SolverParams p;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = SolverParams{};
  p.lambda = -1.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = SolverParams{};
  p.maxiter = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = SolverParams{};
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("shape mismatch is rejected") {
  for (RevMethod m : kAllRev) {
    const std::string solver = solver_name(m);
    CAPTURE(solver);
    CHECK_THROWS_AS(solve_rev(m, Matrix{{1, 0.5}}, Vector{1, 2}, SolverParams{}), Error);
  }
}

TEST_CASE("w = 0 gives r = 0") {
  const Matrix d{{1, 2, -1, 0}, {0, 1, 3, 1}};
  const Vector w{0, 0};
  for (RevMethod m : kAllRev) {
    const std::string solver = solver_name(m);
    CAPTURE(solver);
    const RevResult r = solve_rev(m, d, w, SolverParams{});
    CHECK(norm_inf(r.r) <= 1e-6);
  }
  CHECK(rev_homotopy(d, w, SolverParams{}).iterations == 0);
}

TEST_CASE("two-column instance picks the cheaper vertex") {
  // Vertices (1, 0) and (0, 2); the l1 minimum is (1, 0).
  const Matrix d{{1, 0.5}};
  const Vector w{1};
  for (RevMethod m : kAllRev) {
    const std::string solver = solver_name(m);
    CAPTURE(solver);
    const RevResult r = solve_rev(m, d, w, SolverParams{});
    REQUIRE(r.r.size() == 2);
    CHECK(std::abs(r.r[0] - 1.0) <= 1e-4);
    CHECK(std::abs(r.r[1]) <= 1e-4);
  }
  const RevResult lp = rev_linprog(d, w, SolverParams{});
  CHECK(lp.objective == doctest::Approx(1.0).epsilon(1e-12));
  const RevResult adm = rev_adm(d, w, SolverParams{});
  CHECK(adm.feasibility <= SolverParams{}.epsilon * norm2(w));
}

TEST_CASE("identity block carries w") {
  const Matrix d{{0, 0, 1, 0}, {0, 0, 0, 1}};
  const Vector w{2.5, -1.5};
  const RevResult r = rev_linprog(d, w, SolverParams{});
  CHECK(r.r == Vector{0, 0, 2.5, -1.5});
  CHECK(r.objective == 4.0);
}

TEST_CASE("GPSR agrees with linprog on small instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(8, 3, seed));
    const double ref = rev_linprog(rs, SolverParams{}).objective;
    CHECK(rel_diff(rev_gpsr(rs, SolverParams{}).objective, ref) <= 1e-4);
  }
}

TEST_CASE("TNIPM agrees with linprog on 8x4 reductions") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(8, 4, seed));
    const double ref = rev_linprog(rs, SolverParams{}).objective;
    CHECK(rel_diff(rev_tnipm(rs, SolverParams{}).objective, ref) <= 1e-4);
  }
}

TEST_CASE("ADM agrees with linprog on 10x5 reductions") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(10, 5, seed));
    const double ref = rev_linprog(rs, SolverParams{}).objective;
    const RevResult r = rev_adm(rs, SolverParams{});
    CHECK(rel_diff(r.objective, ref) <= 1e-3);
  }
}

TEST_CASE("POB exit feasibility") {
  // With tau = 0.02 some of these instances need more than the default 10000
  // iterations; the acceptance run reports how the defaults fare. Here the
  // exit rule itself is checked, at the default budget and at one large
  // enough for every seed.
  SolverParams generous;
  generous.maxiter = 1000000;
  for (const SolverParams& params : {SolverParams{}, generous}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ReducedSystem rs = reduce(noisy_problem(10, 4, seed));
      const RevResult r = rev_pob(rs, params);
      CAPTURE(seed);
      CAPTURE(params.maxiter);
      if (params.maxiter == generous.maxiter) CHECK(r.converged);
      if (r.converged) CHECK(r.feasibility <= params.epsilon + 1e-6);
      else CHECK(r.iterations == params.maxiter);
    }
  }
}

TEST_CASE("POB rejects tau <= mu ||D||^2") {
  SolverParams p;
  p.mu = 1.0;
  p.tau = 0.02;
  CHECK_THROWS_AS(rev_pob(Matrix{{1, 0.5}}, Vector{1}, p), Error);
}

TEST_CASE("homotopy support stays within the row count") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(14, 5, seed));
    const RevResult r = rev_homotopy(rs, SolverParams{});
    CHECK(r.max_support <= rs.d.rows());
  }
}

TEST_CASE("IST objective trace ends below its start") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(12, 4, seed));
    const RevResult r = rev_ist(rs, SolverParams{});
    REQUIRE(r.objective_trace.size() >= 2);
    CHECK(r.objective_trace.back() <= r.objective_trace.front());
  }
}

TEST_CASE("cross-solver agreement and feasibility") {
  const SolverParams params;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const std::size_t m = std::min<std::size_t>(24, 2 * n + 2 + seed % 5);
    const MlmProblem p = noisy_problem(m, n, seed);
    const ReducedSystem rs = reduce(p);
    const RevResult lp = rev_linprog(rs, params);
    CHECK(lp.feasibility <= feasibility_bound(params, rs.w));
    if (m <= 14 && n <= 4) {
      CHECK(rel_diff(lp.objective, oracle_solve(p).report.cost) <= 1e-9);
    }
    for (RevMethod method : kIterative) {
      CAPTURE(seed);
      const std::string solver = solver_name(method);
      CAPTURE(solver);
      // POB gets the budget it needs; see "POB exit feasibility".
      SolverParams budget = params;
      if (method == RevMethod::pob) budget.maxiter = 1000000;
      const RevResult r = solve_rev(method, rs.d, rs.w, budget);
      if (method == RevMethod::pob) CHECK(r.converged);
      CHECK(rel_diff(r.objective, lp.objective) <= 1e-3);
      CHECK(r.feasibility <= feasibility_bound(params, rs.w));
    }
  }
}

TEST_CASE("linprog residual has at least n zeros") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const MlmProblem p = noisy_problem(3 * n, n, seed, 0.5);
    const SolveReport rep = l1_approx_via_min_rev(p, RevMethod::linprog, SolverParams{});
    const double thresh = kDefaultZeroTol * (1.0 + norm_inf(rep.residual));
    const auto zeros = std::count_if(rep.residual.begin(), rep.residual.end(),
                                     [&](double v) { return std::abs(v) <= thresh; });
    CHECK(static_cast<std::size_t>(zeros) >= n);
  }
}

TEST_CASE("linprog is scale equivariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ReducedSystem rs = reduce(noisy_problem(10, 3, seed));
    const RevResult r1 = rev_linprog(rs.d, rs.w, SolverParams{});
    const RevResult r2 = rev_linprog(rs.d, scaled(rs.w, 2.0), SolverParams{});
    CHECK(norm_inf(sub(r2.r, scaled(r1.r, 2.0))) <= 1e-9 * (1.0 + norm_inf(r1.r)));
  }
}

TEST_CASE("solvers are deterministic") {
  const ReducedSystem rs = reduce(noisy_problem(12, 4, 77));
  for (RevMethod m : kAllRev) {
    const std::string solver = solver_name(m);
    CAPTURE(solver);
    CHECK(solve_rev(m, rs.d, rs.w, SolverParams{}).r == solve_rev(m, rs.d, rs.w, SolverParams{}).r);
  }
}

TEST_CASE("method names") {
  CHECK(parse_method("l1-res") == Method::res);
  CHECK(parse_method("L1-HP") == Method::hp);
  CHECK(parse_rev_method("homotopy") == RevMethod::homotopy);
  try {
    parse_method("simplex");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_method);
    CHECK(std::string(e.what()).find("l1-gpsr") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_rev_method("l1-lp"), Error);
}

TEST_CASE("solving through the reduction") {
  const MlmProblem p = noisy_problem(4, 2, 9, 0.5);
  const double best = oracle_solve(p).report.cost;
  for (RevMethod m : kAllRev) {
    const std::string solver = solver_name(m);
    CAPTURE(solver);
    const SolveReport rep = l1_approx_via_min_rev(p, m, SolverParams{});
    if (m == RevMethod::linprog) CHECK(rel_diff(rep.cost, best) <= 1e-6);
    CHECK(rep.has_rev);
    CHECK(rep.x.size() == 2);
  }
  const Instance in = gen_instance(30, 10, 4);
  const SolveReport clean = l1_approx_via_min_rev(in.problem, RevMethod::linprog, SolverParams{});
  CHECK(relative_error(clean.x, in.p) <= 1e-10);
}
