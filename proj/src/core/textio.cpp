// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/textio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "core/error.hpp"

namespace l1rev {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  // Next non-blank, non-comment line split into tokens; false at EOF.
  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++lineno_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      tokens.clear();
      std::size_t i = 0;
      while (i < line_.size()) {
        while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
        if (i >= line_.size()) break;
        const std::size_t start = i;
        while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t') ++i;
        tokens.emplace_back(line_.data() + start, i - start);
      }
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void error(const std::string& what) const {
    std::ostringstream os;
    os << source_ << ":" << lineno_ << ": " << what;
    fail(ErrorCode::parse, os.str());
  }

  double number(std::string_view tok) const {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      error("'" + std::string(tok) + "' is not a finite number");
    }
    return v;
  }

  std::size_t count(std::string_view tok) const {
    std::size_t v = 0;
    const char* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end || v == 0) {
      error("'" + std::string(tok) + "' is not a positive integer");
    }
    return v;
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::size_t lineno_ = 0;
};

std::string render(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

}  // namespace

Matrix parse_matrix(std::istream& in, const std::string& source) {
  LineReader rd(in, source);
  std::vector<std::string_view> tok;
  if (!rd.next(tok)) rd.error("missing 'm n' header");
  if (tok.size() != 2) rd.error("header must be 'm n'");
  const std::size_t m = rd.count(tok[0]);
  const std::size_t n = rd.count(tok[1]);
  Matrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rd.next(tok)) rd.error("expected " + std::to_string(m) + " rows, found " + std::to_string(i));
    if (tok.size() != n) {
      rd.error("expected " + std::to_string(n) + " values, found " + std::to_string(tok.size()));
    }
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rd.number(tok[j]);
  }
  if (rd.next(tok)) rd.error("unexpected data after " + std::to_string(m) + " rows");
  return a;
}

Vector parse_vector(std::istream& in, const std::string& source) {
  LineReader rd(in, source);
  std::vector<std::string_view> tok;
  if (!rd.next(tok)) rd.error("missing length header");
  if (tok.size() != 1) rd.error("header must be a single length");
  const std::size_t m = rd.count(tok[0]);
  Vector v(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!rd.next(tok)) rd.error("expected " + std::to_string(m) + " values, found " + std::to_string(i));
    if (tok.size() != 1) rd.error("expected one value per line");
    v[i] = rd.number(tok[0]);
  }
  if (rd.next(tok)) rd.error("unexpected data after " + std::to_string(m) + " values");
  return v;
}

Matrix read_matrix(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_matrix(in, path);
}

Vector read_vector(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_vector(in, path);
}

void format_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << render(a(i, j));
    out << '\n';
  }
}

void format_vector(std::ostream& out, std::span<const double> v) {
  out << v.size() << '\n';
  for (double x : v) out << render(x) << '\n';
}

void write_matrix(const std::string& path, const Matrix& a) {
  std::ofstream out = open_out(path);
  format_matrix(out, a);
  check_written(out, path);
}

void write_vector(const std::string& path, std::span<const double> v) {
  std::ofstream out = open_out(path);
  format_vector(out, v);
  check_written(out, path);
}

}  // namespace l1rev
