#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

// Drives the installed binary end to end through popen: exit codes, report
// round-trips, and byte-for-byte reproducibility under a fixed seed.

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SYMPL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) result.out += buf;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

nlohmann::json report_of(const std::string& out) {
  const std::size_t brace = out.find('{');
  REQUIRE(brace != std::string::npos);
  return nlohmann::json::parse(out.substr(brace));
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "sympl_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << content;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string diag_1_4() { return write_file("a2.mat", "2\n1 0\n0 4\n"); }
std::string diag_2_4() { return write_file("b2.mat", "2\n2 0\n0 4\n"); }
std::string identity2() { return write_file("i2.mat", "2\n1 0\n0 1\n"); }
std::string identity4() {
  return write_file("i4.mat", "4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
}
std::string kink4() {
  return write_file("k4.mat", "4\n1 0 0 0\n0 2 0 0\n0 0 1 0\n0 0 0 2\n");
}

}  // namespace

TEST_CASE("exit codes form the documented contract") {
  const std::string a2 = diag_1_4();
  const std::string b2 = diag_2_4();
  const std::string i2 = identity2();

  CHECK(run_cli("spectrum " + a2).exit_code == 0);

  const std::string odd = write_file("odd.mat", "3\n1 0 0\n0 1 0\n0 0 1\n");
  CHECK(run_cli("spectrum " + odd).exit_code == 2);

  const std::string garbage = write_file("garbage.mat", "2\n1 0\n0 zzz\n");
  CHECK(run_cli("spectrum " + garbage).exit_code == 2);

  CHECK(run_cli("spectrum " + (work_dir() / "missing.mat").string()).exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("verify --suite bogus").exit_code == 2);
  CHECK(run_cli("dderiv " + i2 + " " + b2 + " --m 7").exit_code == 2);

  const std::string npd = write_file("npd.mat", "2\n-1 0\n0 4\n");
  const auto not_pd = run_cli("spectrum " + npd);
  CHECK(not_pd.exit_code == 3);
  CHECK(not_pd.out.find("smallest eigenvalue") != std::string::npos);

  CHECK(run_cli("decompose " + a2 + " --tol 1e-17").exit_code == 4);

  // Steps near t = 0.5 give a secant of roughly 2.9 against the exact
  // derivative 3, far beyond the 1e-4 gate.
  const auto coarse = run_cli("dderiv " + i2 + " " + b2 +
                              " --m 1 --which d --fd-check --fd-tmin 0.4"
                              " --fd-tmax 0.5");
  CHECK(coarse.exit_code == 5);

  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("spectrum reports the symplectic eigenvalues of a diagonal matrix") {
  const std::string file =
      write_file("d4.mat", "4\n1 0 0 0\n0 9 0 0\n0 0 4 0\n0 0 0 16\n");
  const auto result = run_cli("spectrum " + file);
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("d: 2 12") != std::string::npos);

  const auto rep = report_of(result.out);
  CHECK(rep.at("command") == "spectrum");
  const auto d = rep.at("payload").at("d");
  REQUIRE(d.size() == 2);
  CHECK(d[0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d[1].get<double>() == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(rep.at("inputs").at("a").at("format") == "plain");
}

TEST_CASE("structured matrix files parse and report their format") {
  const std::string file = write_file(
      "s2.json", "{\"dim\": 2, \"rows\": [[1.0, 0.0], [0.0, 4.0]]}");
  const auto result = run_cli("spectrum " + file);
  CHECK(result.exit_code == 0);
  const auto rep = report_of(result.out);
  CHECK(rep.at("inputs").at("a").at("format") == "structured");
  CHECK(rep.at("payload").at("d")[0].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-12));

  const std::string broken = write_file("s_broken.json", "{\"dim\": 2}");
  CHECK(run_cli("spectrum " + broken).exit_code == 2);
}

TEST_CASE("asymmetric input is symmetrized and the deviation reported") {
  const std::string file = write_file("asym.mat", "2\n1 1e-3\n0 4\n");
  const auto result = run_cli("spectrum " + file);
  CHECK(result.exit_code == 0);
  const auto rep = report_of(result.out);
  CHECK(rep.at("inputs").at("a").at("max_asymmetry").get<double>() ==
        doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("decompose meets tight residuals on clean input") {
  const auto result = run_cli("decompose " + diag_1_4() + " --tol 1e-12");
  CHECK(result.exit_code == 0);
  const auto rep = report_of(result.out);
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("residuals").at("symplectic").get<double>() <= 1e-12);
  CHECK(rep.at("residuals").at("congruence_relative").get<double>() <= 1e-12);
  const auto d = rep.at("payload").at("d");
  REQUIRE(d.size() == 1);
  CHECK(d[0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("dderiv reproduces the pinned directional derivatives") {
  const std::string i2 = identity2();
  const std::string b2 = diag_2_4();
  const std::string i4 = identity4();
  const std::string k4 = kink4();

  auto value_of = [](const CommandResult& r) {
    return report_of(r.out).at("payload").at("value").get<double>();
  };

  const auto first = run_cli("dderiv " + i2 + " " + b2 + " --m 1 --which d");
  CHECK(first.exit_code == 0);
  CHECK(value_of(first) == doctest::Approx(3.0).epsilon(1e-12));

  const auto second = run_cli("dderiv " + i4 + " " + k4 + " --m 2 --which d");
  CHECK(second.exit_code == 0);
  CHECK(value_of(second) == doctest::Approx(2.0).epsilon(1e-12));

  const auto sigma = run_cli("dderiv " + i4 + " " + k4 + " --m 1 --which sigma");
  CHECK(sigma.exit_code == 0);
  CHECK(value_of(sigma) == doctest::Approx(-2.0).epsilon(1e-12));

  const auto sigma_utf8 = run_cli("dderiv " + i4 + " " + k4 + " --m 1 --which σ");
  CHECK(sigma_utf8.exit_code == 0);
  CHECK(value_of(sigma_utf8) == doctest::Approx(-2.0).epsilon(1e-12));

  const auto checked =
      run_cli("dderiv " + i2 + " " + b2 + " --m 1 --which d --fd-check");
  CHECK(checked.exit_code == 0);
  const auto rep = report_of(checked.out);
  CHECK(rep.at("payload").at("fd").at("discrepancy").get<double>() <= 1e-6);
}

TEST_CASE("subdiff prints support values and extreme points") {
  const std::string i2 = identity2();
  const std::string b2 = diag_2_4();
  const std::string a2 = diag_1_4();

  const auto support = run_cli("subdiff " + i2 + " --m 1 --direction " + b2 +
                               " --count 4 --seed 3");
  CHECK(support.exit_code == 0);
  auto rep = report_of(support.out);
  CHECK(rep.at("payload").at("support").at("exact").get<double>() ==
        doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(std::fabs(rep.at("payload").at("support").at("gap").get<double>()) <= 1e-9);

  const auto exact_only =
      run_cli("subdiff " + i2 + " --m 1 --direction " + b2 + " --count 0");
  CHECK(exact_only.exit_code == 0);
  rep = report_of(exact_only.out);
  CHECK(rep.at("payload").at("support").contains("exact"));
  CHECK(!rep.at("payload").at("support").contains("sampled_max"));

  const auto points = run_cli("subdiff " + a2 + " --m 1 --count 3 --seed 5");
  CHECK(points.exit_code == 0);
  rep = report_of(points.out);
  const auto& pts = rep.at("payload").at("extreme_points");
  REQUIRE(pts.size() == 3);
  const double expect[2][2] = {{-1.0, 0.0}, {0.0, -0.25}};
  for (const auto& p : pts) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::fabs(p[i][j].get<double>() - expect[i][j]) <= 1e-10);
  }
}

TEST_CASE("gen writes deterministic files whose spectrum round-trips") {
  const std::string out1 = (work_dir() / "g1.mat").string();
  const std::string out2 = (work_dir() / "g2.mat").string();

  CHECK(run_cli("gen --spectrum 2 --seed 7 -o " + out1).exit_code == 0);
  CHECK(run_cli("gen --spectrum 2 --seed 7 -o " + out2).exit_code == 0);
  CHECK(read_file(out1) == read_file(out2));

  const auto spec = run_cli("spectrum " + out1);
  CHECK(spec.exit_code == 0);
  const auto d = report_of(spec.out).at("payload").at("d");
  REQUIRE(d.size() == 1);
  CHECK(d[0].get<double>() == doctest::Approx(2.0).epsilon(1e-8));

  const std::string degenerate = (work_dir() / "g11.mat").string();
  CHECK(run_cli("gen --spectrum 1,1 --seed 3 --spread 0.5 -o " + degenerate)
            .exit_code == 0);
  const auto dd = report_of(run_cli("spectrum " + degenerate).out)
                      .at("payload")
                      .at("d");
  REQUIRE(dd.size() == 2);
  CHECK(dd[0].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(dd[1].get<double>() == doctest::Approx(1.0).epsilon(1e-8));

  CHECK(run_cli("gen --spectrum -2 --seed 1 -o " +
                (work_dir() / "bad.mat").string())
            .exit_code == 2);
}

TEST_CASE("verify subcommand exits zero exactly when every suite passes") {
  CHECK(run_cli("verify --suite monotonicity --trials 100").exit_code == 0);
  const auto example = run_cli("verify --suite example1");
  CHECK(example.exit_code == 0);
  CHECK(example.out.find("verdict: indefinite") != std::string::npos);
  CHECK(example.out.find("1.58113883008") != std::string::npos);
  CHECK(run_cli("verify --suite all --n 3 --trials 12 --seed 4").exit_code == 0);
}

TEST_CASE("reports reproduce byte for byte under a fixed seed") {
  const std::string planted = (work_dir() / "planted.mat").string();
  const std::string gen_cmd = "gen --spectrum 1.5,1.5,3 --seed 42 --spread 0.4 -o " +
                              planted;
  const auto gen_first = run_cli(gen_cmd);
  CHECK(gen_first.exit_code == 0);
  const std::string planted_bytes = read_file(planted);
  const auto gen_second = run_cli(gen_cmd);
  CHECK(gen_second.out == gen_first.out);
  CHECK(read_file(planted) == planted_bytes);

  const std::string direction = (work_dir() / "direction.mat").string();
  CHECK(run_cli("gen --spectrum 1,2,2.5 --seed 43 --spread 0.2 -o " + direction)
            .exit_code == 0);

  const std::vector<std::string> commands = {
      "spectrum " + planted,
      "decompose " + planted + " --tol 1e-8",
      "dderiv " + planted + " " + direction + " --m 2 --which d --fd-check",
      "dderiv " + planted + " " + direction + " --m 3 --which sigma",
      "subdiff " + planted + " --m 2 --count 6 --seed 11",
      "subdiff " + planted + " --m 1 --count 5 --seed 11 --direction " + direction,
      "verify --suite subdiff --trials 6 --seed 9 --n 3",
      "verify --suite williamson --trials 10 --seed 2",
  };
  for (const std::string& cmd : commands) {
    const auto first = run_cli(cmd);
    CHECK(first.exit_code == 0);
    const auto second = run_cli(cmd);
    CHECK(second.exit_code == first.exit_code);
    CHECK(second.out == first.out);
    const auto rep = report_of(first.out);
    CHECK(rep.contains("command"));
    CHECK(rep.contains("seed"));
    CHECK(rep.contains("payload"));
    CHECK(rep.contains("pass"));
  }
}
