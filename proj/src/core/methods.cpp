// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/methods.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>

#include "core/direct.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"

namespace l1rev {

namespace {

constexpr std::array<Method, 10> kMethods = {Method::ptb, Method::lp,    Method::res, Method::gpsr,
                                             Method::tnipm, Method::hp, Method::ist, Method::adm,
                                             Method::pob, Method::oracle};

struct Alias {
  const char* name;
  Method method;
};

constexpr Alias kAliases[] = {
    {"l1-ptb", Method::ptb},     {"l1-lp", Method::lp},         {"l1-res", Method::res},
    {"l1-gpsr", Method::gpsr},   {"l1-tnipm", Method::tnipm},   {"l1-hp", Method::hp},
    {"l1-ist", Method::ist},     {"l1-adm", Method::adm},       {"l1-pob", Method::pob},
    {"oracle", Method::oracle},  {"linprog", Method::res},      {"gpsr", Method::gpsr},
    {"tnipm", Method::tnipm},    {"homotopy", Method::hp},      {"ist", Method::ist},
    {"adm", Method::adm},        {"pob", Method::pob},          {"l1-sparsa", Method::ist},
    {"sparsa", Method::ist},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string valid_names() {
  std::string out;
  for (Method m : kMethods) {
    if (!out.empty()) out += ", ";
    out += cli_name(m);
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what());
  }
}

}  // namespace

const char* label(Method m) noexcept {
  switch (m) {
    case Method::ptb: return "L1-PTB";
    case Method::lp: return "L1-LP";
    case Method::res: return "L1-RES";
    case Method::gpsr: return "L1-GPSR";
    case Method::tnipm: return "L1-TNIPM";
    case Method::hp: return "L1-HP";
    case Method::ist: return "L1-IST";
    case Method::adm: return "L1-ADM";
    case Method::pob: return "L1-POB";
    case Method::oracle: return "oracle";
  }
  return "?";
}

const char* cli_name(Method m) noexcept {
  switch (m) {
    case Method::ptb: return "l1-ptb";
    case Method::lp: return "l1-lp";
    case Method::res: return "l1-res";
    case Method::gpsr: return "l1-gpsr";
    case Method::tnipm: return "l1-tnipm";
    case Method::hp: return "l1-hp";
    case Method::ist: return "l1-ist";
    case Method::adm: return "l1-adm";
    case Method::pob: return "l1-pob";
    case Method::oracle: return "oracle";
  }
  return "?";
}

const char* solver_name(RevMethod m) noexcept {
  switch (m) {
    case RevMethod::linprog: return "linprog";
    case RevMethod::gpsr: return "gpsr";
    case RevMethod::tnipm: return "tnipm";
    case RevMethod::homotopy: return "homotopy";
    case RevMethod::ist: return "ist";
    case RevMethod::adm: return "adm";
    case RevMethod::pob: return "pob";
  }
  return "?";
}

std::span<const Method> all_methods() noexcept { return kMethods; }

Method parse_method(std::string_view name) {
  const std::string key = lower(name);
  for (const Alias& a : kAliases)
    if (key == a.name) return a.method;
  fail(ErrorCode::unknown_method,
       "unknown method '" + std::string(name) + "'; valid methods: " + valid_names());
}

RevMethod parse_rev_method(std::string_view name) {
  RevMethod out{};
  if (!rev_method_of(parse_method(name), out)) {
    fail(ErrorCode::unknown_method,
         "'" + std::string(name) +
             "' is not a REV solver; valid: linprog, gpsr, tnipm, homotopy, ist, adm, pob");
  }
  return out;
}

bool rev_method_of(Method m, RevMethod& out) noexcept {
  switch (m) {
    case Method::res: out = RevMethod::linprog; return true;
    case Method::gpsr: out = RevMethod::gpsr; return true;
    case Method::tnipm: out = RevMethod::tnipm; return true;
    case Method::hp: out = RevMethod::homotopy; return true;
    case Method::ist: out = RevMethod::ist; return true;
    case Method::adm: out = RevMethod::adm; return true;
    case Method::pob: out = RevMethod::pob; return true;
    default: return false;
  }
}

Method method_of(RevMethod m) noexcept {
  switch (m) {
    case RevMethod::linprog: return Method::res;
    case RevMethod::gpsr: return Method::gpsr;
    case RevMethod::tnipm: return Method::tnipm;
    case RevMethod::homotopy: return Method::hp;
    case RevMethod::ist: return Method::ist;
    case RevMethod::adm: return Method::adm;
    case RevMethod::pob: return Method::pob;
  }
  return Method::res;
}

RevResult solve_rev(RevMethod method, const Matrix& d, std::span<const double> w,
                    const SolverParams& params) {
  switch (method) {
    case RevMethod::linprog: return rev_linprog(d, w, params);
    case RevMethod::gpsr: return rev_gpsr(d, w, params);
    case RevMethod::tnipm: return rev_tnipm(d, w, params);
    case RevMethod::homotopy: {
      // The homotopy path ends at the driver's tolerance.
      SolverParams hp = params;
      hp.lambda = params.epsilon;
      return rev_homotopy(d, w, hp);
    }
    case RevMethod::ist: return rev_ist(d, w, params);
    case RevMethod::adm: return rev_adm(d, w, params);
    case RevMethod::pob: return rev_pob(d, w, params);
  }
  fail(ErrorCode::internal, "solve_rev: bad method");
}

SolveReport l1_approx_via_min_rev(const MlmProblem& p, RevMethod method,
                                  const SolverParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const ReducedSystem rs = stage("reduce", [&] { return reduce(p); });
  const RevResult rr = stage(solver_name(method), [&] { return solve_rev(method, rs.d, rs.w, params); });
  Vector x = stage("recover", [&] { return recover(p, rs, rr.r); });

  SolveReport rep;
  rep.runtime_seconds = seconds_since(start);
  rep.label = label(method_of(method));
  rep.x = std::move(x);
  rep.residual = residual(p, rep.x);
  rep.cost = norm1(rep.residual);
  rep.iterations = rr.iterations;
  rep.converged = rr.converged;
  rep.rev = rr.r;
  rep.rev_feasibility = rr.feasibility;
  rep.w_norm = norm2(rs.w);
  rep.has_rev = true;
  rep.warnings = rs.warnings;
  return rep;
}

SolveReport solve(const MlmProblem& p, Method method, const SolverParams& params) {
  RevMethod rm{};
  if (rev_method_of(method, rm)) return l1_approx_via_min_rev(p, rm, params);
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  switch (method) {
    case Method::lp: rep = l1_approx_linprog(p, params.lp_feas_tol); break;
    case Method::ptb:
      rep = l1_approx_pert_cbs(p, params.ptb_c, params.ptb_maxiter, params.zero_tol);
      break;
    case Method::oracle: rep = oracle_solve(p).report; break;
    default: fail(ErrorCode::internal, "solve: unhandled method");
  }
  rep.runtime_seconds = seconds_since(start);
  return rep;
}

}  // namespace l1rev
