#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "hyperbasis/text.hpp"

namespace fs = std::filesystem;
using namespace hyperbasis;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

const fs::path& scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "hyperbasis-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome run(const std::string& args, const std::string& env = {}) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = env + " '" + std::string(HYPERBASIS_CLI) + "' " + args + " >'" + out.string() +
                          "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

// 0-based (i, j) -> similarity from the basis CSV.
std::vector<std::vector<double>> read_similarity(const fs::path& csv, std::size_t m) {
  std::vector<std::vector<double>> s(m, std::vector<double>(m, -1.0));
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    const auto c = text::split(line, ',');
    s[static_cast<std::size_t>(*text::parse_int(c[0]) - 1)][static_cast<std::size_t>(*text::parse_int(c[1]) - 1)] =
        *text::parse_double(c[2]);
  }
  return s;
}

std::string value_of(const std::string& out, const std::string& key) {
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  }
  return {};
}

}  // namespace

TEST_CASE("basis command") {
  const auto dir = scratch() / "basis";
  auto circ = run("basis --kind circular --levels 12 --dim 10000 --seed 3 --out '" + (dir / "c").string() + "'");
  REQUIRE(circ.code == 0);
  const auto c = read_similarity(dir / "c" / "similarity.csv", 12);
  CHECK(std::fabs(c[0][6] - 0.5) <= 0.02);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(c[i][i] == 1.0);
    for (std::size_t j = 0; j < 12; ++j) {
      const std::size_t gap = (j + 12 - i) % 12;
      CHECK(std::fabs(c[i][j] - c[0][gap]) <= 0.02);
    }
  }

  REQUIRE(run("basis --kind level --levels 12 --seed 3 --out '" + (dir / "l").string() + "'").code == 0);
  const auto l = read_similarity(dir / "l" / "similarity.csv", 12);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j + 1 < 12; ++j) CHECK(l[i][j + 1] <= l[i][j] + 0.02);
  }

  REQUIRE(run("basis --kind random --levels 12 --seed 3 --out '" + (dir / "r").string() + "'").code == 0);
  const auto r = read_similarity(dir / "r" / "similarity.csv", 12);
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) {
      if (i != j) CHECK(std::fabs(r[i][j] - 0.5) <= 0.02);
    }
  }
  CHECK(fs::file_size(dir / "r" / "basis.bin") > 12 * 10000 / 8);
}

TEST_CASE("seed flag and environment") {
  const auto dir = scratch() / "seed";
  REQUIRE(run("basis --levels 4 --dim 256 --seed 9 --out '" + (dir / "flag").string() + "'").code == 0);
  REQUIRE(run("basis --levels 4 --dim 256 --out '" + (dir / "env").string() + "'", "HYPERBASIS_SEED=9").code == 0);
  REQUIRE(run("basis --levels 4 --dim 256 --out '" + (dir / "default").string() + "'").code == 0);
  CHECK(slurp(dir / "flag" / "basis.bin") == slurp(dir / "env" / "basis.bin"));
  CHECK(slurp(dir / "flag" / "basis.bin") != slurp(dir / "default" / "basis.bin"));
  REQUIRE(run("basis --levels 4 --dim 256 --seed 9 --out '" + (dir / "both").string() + "'", "HYPERBASIS_SEED=1").code == 0);
  CHECK(slurp(dir / "flag" / "basis.bin") == slurp(dir / "both" / "basis.bin"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("basis --dim notanumber").code == 2);
  CHECK(run("basis --kind spiral --out '" + (scratch() / "x").string() + "'").code == 2);
  CHECK(run("basis --kind circular --levels 2 --out '" + (scratch() / "x").string() + "'").code == 2);
  CHECK(run("basis --r 1.5").code == 2);
  CHECK(run("run").code == 2);
  CHECK(run("oracle-flips --dim 10 --delta 0.25").code == 2);
  CHECK(run("oracle-flips --dim 10 --delta 0").code == 2);
  CHECK(run("basis --levels 4", "HYPERBASIS_SEED=abc").code == 2);
}

TEST_CASE("config errors") {
  const auto dir = scratch() / "config";
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "missing-schema.cfg");
    cfg << "data = rows.csv\nschema = nowhere.schema\n";
  }
  const auto missing = run("run --config '" + (dir / "missing-schema.cfg").string() + "'");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nowhere.schema") != std::string::npos);

  const auto no_config = run("run --config '" + (dir / "absent.cfg").string() + "'");
  CHECK(no_config.code == 2);
  CHECK(no_config.err.find("absent.cfg") != std::string::npos);

  {
    std::ofstream schema(dir / "rows.schema");
    schema << "x: scalar\ny: scalar label\n";
    std::ofstream csv(dir / "rows.csv");
    csv << "x,y\n1,2\noops,3\n";
    std::ofstream cfg(dir / "bad-data.cfg");
    cfg << "data = rows.csv\nschema = rows.schema\n";
  }
  const auto bad = run("run --config '" + (dir / "bad-data.cfg").string() + "'");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 3") != std::string::npos);
}

TEST_CASE("run and sweep") {
  const auto dir = scratch() / "run";
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "exp.cfg");
    cfg << "synthetic = regression\nn = 300\ndim = 2000\nlevels = 24\nlabel_levels = 30\n";
  }
  const std::string base = "--config '" + (dir / "exp.cfg").string() + "'";
  const auto a = run("run " + base + " --out '" + (dir / "a").string() + "'");
  const auto b = run("run " + base + " --out '" + (dir / "b").string() + "'");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(dir / "a" / "metrics.csv") == slurp(dir / "b" / "metrics.csv"));
  CHECK(slurp(dir / "a" / "model.bin") == slurp(dir / "b" / "model.bin"));
  CHECK(a.out.find("[label]") != std::string::npos);
  CHECK(slurp(dir / "a" / "config.resolved").find("kind = circular") != std::string::npos);

  // Flags win over config values.
  REQUIRE(run("run " + base + " --kind random --dim 1000 --out '" + (dir / "c").string() + "'").code == 0);
  const auto resolved = slurp(dir / "c" / "config.resolved");
  CHECK(resolved.find("dim = 1000") != std::string::npos);
  CHECK(resolved.find("kind = random") != std::string::npos);

  const auto sweep = run("sweep-r " + base + " --r 0,0.5,0.5 --trials 2 --out '" + (dir / "s").string() + "'");
  REQUIRE(sweep.code == 0);
  std::istringstream rows(slurp(dir / "s" / "sweep.csv"));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "r,seed,error,normalized_error");
  std::size_t n = 0;
  while (std::getline(rows, line)) ++n;
  CHECK(n == 6);
}

TEST_CASE("classification run reports the bayes accuracy") {
  const auto dir = scratch() / "cls";
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "exp.cfg");
    cfg << "synthetic = classification\nn = 400\nclasses = 4\nnoise_sd = 0.3\ndim = 1000\nlevels = 16\n";
  }
  const auto res = run("run --config '" + (dir / "exp.cfg").string() + "' --out '" + (dir / "o").string() + "'");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("bayes_accuracy,") != std::string::npos);
  CHECK(slurp(dir / "o" / "metrics.csv").find("accuracy,") != std::string::npos);
}

TEST_CASE("oracle command") {
  const auto one = run("oracle-flips --dim 10 --delta 0.1");
  REQUIRE(one.code == 0);
  CHECK(*text::parse_double(value_of(one.out, "expected_flips")) == 1.0);

  const auto two = run("oracle-flips --dim 10 --delta 0.2");
  CHECK(std::fabs(*text::parse_double(value_of(two.out, "expected_flips")) - 20.0 / 9.0) < 1e-12);

  const auto mc = run("oracle-flips --dim 100 --delta 0.5 --mc");
  REQUIRE(mc.code == 0);
  CHECK(*text::parse_double(value_of(mc.out, "relative_difference")) < 0.01);
}
