#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const std::string kFixtures = ARCLP_FIXTURE_DIR;
const std::string kNetlib = std::string(ARCLP_DATA_DIR) + "/netlib";

struct Run {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "arclp_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string("\"") + ARCLP_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("solve prints an optimal report") {
  const Run r = run("solve " + kFixtures + "/tiny.mps");
  CHECK(r.code == 0);
  CHECK(r.out.find("Optimal") != std::string::npos);
  CHECK(r.out.find("iterations") != std::string::npos);
}

TEST_CASE("solve AFIRO with each algorithm") {
  for (const char* alg : {"alg1", "alg2", "arc", "line"}) {
    CAPTURE(alg);
    CHECK(run("solve " + kNetlib + "/AFIRO.mps --algorithm " + alg).code == 0);
  }
}

TEST_CASE("json output is a single record object") {
  const Run r = run("solve " + kNetlib + "/AFIRO.mps --json --beta 0.5 --beta-formula full");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_object());
  for (const char* key : {"problem", "n", "m", "algorithm", "beta", "beta_formula", "status", "iterations",
                          "time_seconds", "mu", "rb_norm", "rc_norm", "objective"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["problem"] == "AFIRO");
  CHECK(j["n"] == 51);
  CHECK(j["m"] == 27);
  CHECK(j["status"] == "Optimal");
  CHECK(j["beta"] == 0.5);
  CHECK(j["beta_formula"] == "full");
  CHECK(std::abs(j["objective"].get<double>() + 464.753142857) < 1e-4);
}

TEST_CASE("exit codes") {
  CHECK(run("solve " + kFixtures + "/missing.mps").code == 1);
  CHECK(run("solve " + kFixtures + "/tiny.mps --algorithm simplex").code == 1);
  CHECK(run("solve " + kFixtures + "/tiny.mps --theta 0.9 --algorithm alg1").code == 1);
  CHECK(run("").code == 1);
  CHECK(run("solve " + kNetlib + "/KB2.mps --max-iter 2").code == 2);

  const fs::path infeasible = scratch() / "infeasible.mps";
  std::ofstream(infeasible) << "NAME INF\nROWS\n N obj\n E r\nCOLUMNS\n x obj 1 r 1\nRHS\n rhs r -1\nENDATA\n";
  CHECK(run("solve " + infeasible.string()).code == 4);
  const fs::path broken = scratch() / "broken.mps";
  std::ofstream(broken) << "NAME X\nROWS\n N obj\nCOLUMNS\nENDATA\n";
  CHECK(run("solve " + broken.string()).code == 4);
}

TEST_CASE("trace file") {
  const fs::path trace = scratch() / "trace.csv";
  const Run r = run("solve " + kNetlib + "/AFIRO.mps --json --trace " + trace.string());
  REQUIRE(r.code == 0);
  const std::string text = slurp(trace);
  CHECK(text.rfind("iteration,mu,", 0) == 0);
  const int iterations = nlohmann::json::parse(r.out)["iterations"];
  CHECK(count_lines(text) == iterations + 1);
}

TEST_CASE("bench writes one row per problem and algorithm") {
  const Run r = run("bench " + kFixtures + "/bench --jobs 2");
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 1 + 9);
  CHECK(r.out.rfind("problem,n,m,algorithm,", 0) == 0);

  const fs::path csv = scratch() / "bench.csv";
  REQUIRE(run("bench " + kFixtures + "/bench --algorithm alg2 line --out " + csv.string()).code == 0);
  CHECK(count_lines(slurp(csv)) == 1 + 6);

  const fs::path empty = scratch() / "empty";
  fs::create_directories(empty);
  CHECK(run("bench " + empty.string()).code == 1);
  CHECK(run("bench " + (scratch() / "nope").string()).code == 1);
}

TEST_CASE("profile from a bench CSV") {
  const fs::path csv = scratch() / "for_profile.csv";
  REQUIRE(run("bench " + kFixtures + "/bench --out " + csv.string()).code == 0);
  const Run iters = run("profile " + csv.string());
  REQUIRE(iters.code == 0);
  CHECK(iters.out.rfind("solver,tau,fraction\n", 0) == 0);
  CHECK(iters.out.find("alg2,") != std::string::npos);
  CHECK(run("profile " + csv.string() + " --metric time").code == 0);
  CHECK(run("profile " + csv.string() + " --metric flops").code == 1);
  CHECK(run("profile " + (scratch() / "none.csv").string()).code == 1);
}
