#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

constexpr const char* kHeatsimPath = HEATSIM_PATH;
constexpr const char* kScenarioDir = SCENARIO_DIR;

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Result run(const std::string& args) {
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / "heatctl_cli_stdout.txt";
  const fs::path err = dir / "heatctl_cli_stderr.txt";
  const std::string cmd =
      "\"" + std::string(kHeatsimPath) + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  Result r{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

}  // namespace

TEST_CASE("design prints the reference design values") {
  const Result r = run("design");
  CHECK(r.status == 0);
  for (const char* v : {"16.97", "1.1879", "1683.5", "2200", "718.75", "0.0952", "0.26978", "0.3652", "2.738"})
    CHECK_MESSAGE(r.out.find(v) != std::string::npos, v);
}

TEST_CASE("design accepts SI-suffixed overrides") {
  const Result r = run("design --r3 10k --c3 10u");
  CHECK(r.status == 0);
  CHECK(r.out.find("0.07 ") != std::string::npos);
  CHECK(run("design --r3 10q").status != 0);
}

TEST_CASE("simulate writes a trace with the documented header") {
  const fs::path out = fs::temp_directory_path() / "heatctl_cli_trace.csv";
  const Result r = run("simulate \"" + std::string(kScenarioDir) + "/default.scn\" --out \"" + out.string() + "\"");
  CHECK(r.status == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "time_s,rail_v,reg_v,sensor1_v,sensor2_v,sub1_v,sub2_v,cmp1,cmp2,timer_vcap,timer_out,alarm,load_enable");
  fs::remove(out);
}

TEST_CASE("simulate reports scenario errors with a line number") {
  const fs::path bad = fs::temp_directory_path() / "heatctl_cli_bad.scn";
  {
    std::ofstream s(bad);
    s << "[run]\nformat = 1\n[profile.1]\n0 25\n5 30\n4 31\n[profile.2]\n0 25\n";
  }
  const Result r = run("simulate \"" + bad.string() + "\" --out /dev/null");
  CHECK(r.status != 0);
  CHECK(r.err.find("line 6") != std::string::npos);
  fs::remove(bad);
}

TEST_CASE("sweep prints one row per preset") {
  const Result r = run("sweep \"" + std::string(kScenarioDir) + "/ramp.scn\" --presets 25,35,60");
  CHECK(r.status == 0);
  CHECK(r.out.find("60") != std::string::npos);
  CHECK(r.out.find("none") != std::string::npos);
}

TEST_CASE("unknown subcommands and missing arguments fail") {
  CHECK(run("frobnicate").status != 0);
  CHECK(run("").status != 0);
  CHECK(run("simulate").status != 0);
}

TEST_CASE("selftest passes") {
  const Result r = run("selftest");
  CHECK(r.status == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
