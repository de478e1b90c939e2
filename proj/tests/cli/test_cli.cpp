// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the l1rev executable as a subprocess and checks files, streams and
// exit codes.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Workdir {
 public:
  Workdir() {
    dir_ = fs::temp_directory_path() / ("l1rev_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  fs::path operator/(const std::string& name) const { return dir_ / name; }
  std::string str() const { return dir_.string(); }

  Run run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + L1REV_CLI_PATH + "' " +
                            args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

 private:
  fs::path dir_;
  static inline int counter_ = 0;
};

std::vector<double> numbers(const std::string& text) {
  std::istringstream in(text);
  std::vector<double> v;
  for (double x; in >> x;) v.push_back(x);
  return v;
}

double c1_from(const std::string& err) {
  const auto pos = err.find("C1: ");
  REQUIRE(pos != std::string::npos);
  return std::stod(err.substr(pos + 4));
}

std::string without_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() > 6) cells.erase(cells.begin() + 6);
    for (const auto& c : cells) out += c + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("gen is deterministic") {
  Workdir w;
  REQUIRE(w.run("gen --m 8 --n 3 --seed 7 --out-prefix one_").code == 0);
  REQUIRE(w.run("gen --m 8 --n 3 --seed 7 --out-prefix two_").code == 0);
  for (const char* f : {"A.txt", "b.txt", "p.txt"}) {
    CAPTURE(f);
    CHECK(slurp(w / (std::string("one_") + f)) == slurp(w / (std::string("two_") + f)));
  }
  CHECK(slurp(w / "one_A.txt").rfind("8 3\n", 0) == 0);
  CHECK(slurp(w / "one_b.txt").rfind("8\n", 0) == 0);
  CHECK(slurp(w / "one_p.txt").rfind("3\n", 0) == 0);
}

TEST_CASE("gen without noise writes b = A p") {
  Workdir w;
  REQUIRE(w.run("gen --m 8 --n 3 --seed 2 --sparsity 0").code == 0);
  const std::vector<double> a = numbers(slurp(w / "A.txt"));
  const std::vector<double> b = numbers(slurp(w / "b.txt"));
  const std::vector<double> p = numbers(slurp(w / "p.txt"));
  REQUIRE(a.size() == 2 + 24);
  REQUIRE(b.size() == 1 + 8);
  REQUIRE(p.size() == 1 + 3);
  for (int i = 0; i < 8; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) s += a[2 + 3 * i + j] * p[1 + j];
    CHECK(std::abs(s - b[1 + i]) <= 1e-12);
  }
}

TEST_CASE("gen usage errors") {
  Workdir w;
  const Run r = w.run("gen --m 3 --n 3");
  CHECK(r.code == 1);
  CHECK(r.err.find("m > n") != std::string::npos);
  CHECK(w.run("gen --n 3").code == 1);
  CHECK(w.run("gen --m 8 --n 3 --out-prefix /nonexistent/dir/").code != 0);
  CHECK(w.run("").code == 1);
}

TEST_CASE("solve a consistent instance with every method") {
  Workdir w;
  REQUIRE(w.run("gen --m 10 --n 3 --seed 4 --sparsity 0").code == 0);
  for (const char* m : {"l1-lp", "l1-ptb", "l1-res", "l1-gpsr", "l1-tnipm", "l1-hp", "l1-ist",
                        "l1-adm", "l1-pob", "oracle"}) {
    CAPTURE(m);
    const Run r = w.run(std::string("solve --method ") + m + " --matrix A.txt --rhs b.txt");
    CHECK(r.code == 0);
    CHECK(numbers(r.out).size() == 3);
    CHECK(c1_from(r.err) <= 1e-8);
    CHECK(r.err.find("iterations: ") != std::string::npos);
    CHECK(r.err.find("runtime_s: ") != std::string::npos);
  }
}

TEST_CASE("oracle and l1-res agree on a 6x2 instance") {
  Workdir w;
  REQUIRE(w.run("gen --m 6 --n 2 --seed 11 --sparsity 0.5").code == 0);
  const Run o = w.run("solve --method oracle --matrix A.txt --rhs b.txt");
  const Run r = w.run("solve --method l1-res --matrix A.txt --rhs b.txt --out x.txt");
  REQUIRE(o.code == 0);
  REQUIRE(r.code == 0);
  CHECK(std::abs(c1_from(o.err) - c1_from(r.err)) <= 1e-6);
  CHECK(r.out.empty());
  CHECK(numbers(slurp(w / "x.txt")).size() == 2);
}

TEST_CASE("solve errors and exit codes") {
  Workdir w;
  REQUIRE(w.run("gen --m 40 --n 10 --seed 3 --sparsity 0.25").code == 0);

  const Run missing = w.run("solve --method l1-res --matrix A.txt");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("--rhs") != std::string::npos);

  const Run unknown = w.run("solve --method l1-magic --matrix A.txt --rhs b.txt");
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("l1-tnipm") != std::string::npos);

  {
    std::ofstream bad(w / "bad.txt");
    bad << "# header next\n3 2\n1 2\n3 4\n5 x\n";
  }
  const Run parse = w.run("solve --matrix bad.txt --rhs b.txt");
  CHECK(parse.code == 1);
  CHECK(parse.err.find("bad.txt:5") != std::string::npos);

  const Run capped = w.run("solve --method l1-ist --maxiter 2 --matrix A.txt --rhs b.txt");
  CHECK(capped.code == 2);
  CHECK(numbers(capped.out).size() == 10);
  CHECK(capped.err.find("converged: no") != std::string::npos);
}

TEST_CASE("bench noise-free run") {
  Workdir w;
  const Run r = w.run("bench --experiment noise-free --m 64 --n 32 --repeats 3 --csv out.csv");
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(w / "out.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "method,m,n,sparsity,drl,mean_rel_err,mean_runtime_s,repeats,errors");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 9);
    CAPTURE(cells[0]);
    CHECK(std::stod(cells[5]) <= 1e-8);
    CHECK(cells[7] == "3");
    CHECK(cells[8] == "0");
  }
  CHECK(rows == 9);
}

TEST_CASE("bench is reproducible and honours L1REV_THREADS") {
  Workdir w;
  const std::string args =
      "bench --experiment sparse-noise --m 24 --n 6 --repeats 4 --methods l1-res,l1-hp,l1-ist";
  const Run a = w.run(args);
  const Run b = w.run(args);
  const Run c = w.run(args, "L1REV_THREADS=3");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  REQUIRE(c.code == 0);
  CHECK(without_runtime(a.out) == without_runtime(b.out));
  CHECK(without_runtime(a.out) == without_runtime(c.out));
}

TEST_CASE("bench usage errors") {
  Workdir w;
  CHECK(w.run("bench --experiment noise-free --repeats 0").code == 1);
  CHECK(w.run("bench --experiment bogus").code == 1);
  CHECK(w.run("bench --experiment noise-free --m 8 --n 3 --methods nope").code == 1);
  // The oracle's size guard rejects every run: all runs failing is an error.
  const Run all_fail = w.run("bench --experiment noise-free --m 20 --n 3 --repeats 2 --methods oracle");
  CHECK(all_fail.code == 1);
  CHECK(all_fail.out.find("oracle,20,3") != std::string::npos);
}
