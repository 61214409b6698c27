#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = SOLITON_CLI_PATH;
const std::string kConfigs = SOLITON_CONFIG_DIR;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  fs::path out = fs::temp_directory_path() / "soliton_cli_out.txt";
  std::string cmd = kCli + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {code, ss.str()};
}

std::string config(const std::string& name) { return kConfigs + "/" + name; }

fs::path write_temp(const std::string& name, const std::string& body) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << body;
  return p;
}

}  // namespace

TEST_CASE("residual pass/fail exit codes") {
  RunResult ok = run("residual --config " + config("grim.json") + " --grid 200");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS") != std::string::npos);

  // the minimal graph is not a vertical translator
  RunResult fail =
      run("residual --config " + config("scherk.json") + " --grid 40 --velocity 0,0,1");
  CHECK(fail.exit_code == 1);
  CHECK(fail.output.find("FAIL") != std::string::npos);

  // but it does solve its own equation at velocity zero
  RunResult minimal = run("residual --config " + config("scherk.json") + " --grid 40");
  CHECK(minimal.exit_code == 0);

  RunResult missing = run("residual --config /nonexistent/cfg.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("lorentz cylinder configs verify") {
  CHECK(run("residual --config " + config("lorentz_cosh.json") + " --grid 500").exit_code == 0);
  CHECK(run("residual --config " + config("lorentz_timelike.json") + " --grid 500").exit_code ==
        0);
  CHECK(run("residual --config " + config("lightlike.json") + " --grid 100").exit_code == 0);
  // lightlike rulings with a non-parallel velocity violate the condition
  RunResult off = run("residual --config " + config("lightlike.json") +
                      " --grid 100 --velocity 0,1,0");
  CHECK(off.exit_code == 1);
}

TEST_CASE("domain violations exit 1 with a diagnostic") {
  fs::path bad = write_temp("soliton_bad_domain.json", R"json({
    "v": 1, "kind": "translation", "velocity": [0,0,1],
    "functions": {"f": "log(x)", "g": "0"},
    "domain": {"x": [-1, 1], "y": [-1, 1]}
  })json");
  RunResult r = run("residual --config " + bad.string() + " --grid 10");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("domain violation") != std::string::npos);
  fs::remove(bad);
}

TEST_CASE("config schema violations exit 2") {
  fs::path noversion = write_temp("soliton_nover.json", R"json({"kind": "translation"})json");
  CHECK(run("residual --config " + noversion.string()).exit_code == 2);
  fs::remove(noversion);

  fs::path badkind = write_temp("soliton_badkind.json",
                                R"json({"v":1, "kind": "moebius", "functions": {}})json");
  CHECK(run("residual --config " + badkind.string()).exit_code == 2);
  fs::remove(badkind);

  fs::path badexpr = write_temp("soliton_badexpr.json", R"json({
    "v": 1, "kind": "translation", "velocity": [0,0,1],
    "functions": {"f": "2x", "g": "0"},
    "domain": {"x": [-1, 1], "y": [-1, 1]}
  })json");
  CHECK(run("residual --config " + badexpr.string()).exit_code == 2);
  fs::remove(badexpr);
}

TEST_CASE("verify transcripts and exit codes") {
  RunResult d2 = run("verify --theorem 2 --subcase 2d");
  CHECK(d2.exit_code == 0);
  CHECK(d2.output.find("1769472") != std::string::npos);
  CHECK(d2.output.find("A12") != std::string::npos);

  fs::path transcript = fs::temp_directory_path() / "soliton_t1.txt";
  RunResult t1 = run("verify --theorem 1 --transcript " + transcript.string());
  CHECK(t1.exit_code == 0);
  std::ifstream in(transcript);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  CHECK(text.find("P4") != std::string::npos);
  CHECK(text.find("P2") != std::string::npos);
  CHECK(text.find("P1") != std::string::npos);
  CHECK(text.find("| OK") != std::string::npos);
  fs::remove(transcript);

  CHECK(run("verify --theorem 2 --subcase bogus").exit_code == 2);
  CHECK(run("verify").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("verify --all emits machine-readable reports") {
  fs::path json = fs::temp_directory_path() / "soliton_all.json";
  RunResult all = run("verify --all --json " + json.string());
  CHECK(all.exit_code == 0);
  std::ifstream in(json);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"pass\": true") != std::string::npos);
  fs::remove(json);
}

TEST_CASE("export writes profile CSV") {
  fs::path csv = fs::temp_directory_path() / "soliton_profile.csv";
  RunResult r = run("export --config " + config("lorentz_cosh.json") + " --grid 50 --csv " +
                    csv.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,u,du,residual");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 50);
  fs::remove(csv);
}

TEST_CASE("export samples one generating curve of a translation chart") {
  fs::path csv = fs::temp_directory_path() / "soliton_reaper_profile.csv";
  RunResult r = run("export --config " + config("grim.json") +
                    " --profile-of x --grid 1000 --csv " + csv.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,u,du,residual");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1000);
  fs::remove(csv);

  CHECK(run("export --config " + config("scherk.json") + " --profile-of x").exit_code == 2);
}

TEST_CASE("integrate subcommands") {
  CHECK(run("integrate grim-reaper --k 2 --to 0.5 --step 1e-4").exit_code == 0);
  CHECK(run("integrate grim-reaper --k 2 --to 0.5 --adaptive --tol 1e-10").exit_code == 0);
  CHECK(run("integrate lorentz --case spacelike-cosh --from 0 --to 1").exit_code == 0);
  CHECK(run("integrate lorentz --case timelike-cos --from 0 --to 0.6").exit_code == 0);

  fs::path csv = fs::temp_directory_path() / "soliton_bowl.csv";
  RunResult bowl = run("integrate bowl --u0 0 --v3 1 --rmax 2 --csv " + csv.string());
  CHECK(bowl.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "r,u,du");
  fs::remove(csv);
}

TEST_CASE("probe runs and honors SOLITON_SEED") {
  fs::path json = fs::temp_directory_path() / "soliton_probe.json";
  std::string base = "probe --structure translation --degree 2 --velocity 1,0,0 --restarts 1 "
                     "--max-evals 150 --grid 8 --json " +
                     json.string();
  setenv("SOLITON_SEED", "777", 1);
  RunResult r = run(base);
  unsetenv("SOLITON_SEED");
  CHECK(r.exit_code == 0);
  std::ifstream in(json);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("\"seed\": 777") != std::string::npos);
  fs::remove(json);
}
