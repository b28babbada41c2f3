#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "mft/fpt.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out_dir;
};

RunResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("mft_cli_" + tag);
  fs::remove_all(dir);
  const std::string cmd = std::string(MFT_CLI_PATH) + " " + args + " --out " +
                          dir.string() + " > " + (dir.string() + ".log") +
                          " 2>&1";
  fs::create_directories(dir);
  const int rc = std::system(cmd.c_str());
  return {WEXITSTATUS(rc), dir.string()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("flat reward gives the uncontrolled completion rate") {
  auto r = run_cli("solve-hom --reward constant:0 --T 1", "flat");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(r.out_dir + "/equilibrium.json"));
  const double F = mft::fpt_cdf(mft::FptLaw(4.0), 1.0);
  CHECK(std::abs(j["beta"].get<double>() - F) < 1e-10);
}

TEST_CASE("table reproduction succeeds") {
  auto r = run_cli("reproduce table1", "t1");
  CHECK(r.exit_code == 0);
  const std::string diff = slurp(r.out_dir + "/table1_diff.txt");
  CHECK(diff.find("RESULT: match") != std::string::npos);
  CHECK(!slurp(r.out_dir + "/table1.csv").empty());
}

TEST_CASE("identical configs give byte-identical outputs") {
  const std::string args = "simulate --N 64 --reps 2 --seed 42 --dt 0.002";
  auto a = run_cli(args, "det_a");
  auto b = run_cli(args, "det_b");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(slurp(a.out_dir + "/sim.json") == slurp(b.out_dir + "/sim.json"));
  CHECK(!slurp(a.out_dir + "/sim.json").empty());
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run_cli("solve-hom --reward nonsense:1", "bad_reward").exit_code == 2);
  CHECK(run_cli("reproduce nosuchtable", "bad_target").exit_code == 2);
  CHECK(run_cli("design nosuchproblem", "bad_design").exit_code == 2);
}

TEST_CASE("design subcommand emits a solution") {
  auto r = run_cli("design budget --T 1 --alpha 0.5", "budget");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(r.out_dir + "/design.json"));
  CHECK(j["objective"].get<double>() > 0.0);
}
