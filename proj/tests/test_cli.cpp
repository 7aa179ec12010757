#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tas/records.hpp"

#ifdef _WIN32
#error "the cli suite drives the tool through /bin/sh"
#endif
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tas_cli_suite";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string cli_path() {
  const char* env = std::getenv("TAS_CLI");
  return env && *env ? env : "./tas";
}

RunResult run(const std::string& args) {
  static int counter = 0;
  fs::path capture = work_dir() / ("out" + std::to_string(counter++) + ".txt");
  std::string cmd =
      cli_path() + " " + args + " > " + capture.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult result;
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version") {
  CHECK(run("--help").exit_code == 0);
  RunResult v = run("--version");
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("tas") != std::string::npos);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run("").exit_code == 2);            // a subcommand is required
  CHECK(run("frobnicate").exit_code == 2);  // unknown subcommand
  CHECK(run("bench --case test9 --n0 4 --levels 1").exit_code == 2);
  CHECK(run("bench --kind hex --family dg --n0 4 --levels 1").exit_code == 2);
  CHECK(run("analyze --out-dir x").exit_code == 2);  // --in is required
}

TEST_CASE("model prints a table and writes diagrams") {
  RunResult r = run("model --alpha 2 --alpha 3 --dim 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("model-a2-2D") != std::string::npos);
  CHECK(r.output.find("model-a3-2D") != std::string::npos);

  fs::path dir = work_dir() / "model_out";
  CHECK(run("model --out-dir " + dir.string()).exit_code == 0);
  CHECK(fs::exists(dir / "model_table.txt"));
  CHECK(fs::exists(dir / "doe.svg"));
  CHECK(fs::exists(dir / "true_static_scaling.svg"));
}

TEST_CASE("bench then analyze round trip") {
  fs::path out = work_dir() / "bench.jsonl";
  RunResult b = run(
      "bench --case test1 --kind quad --family cg --degree 1 "
      "--n0 4 --levels 2 --repeats 1 --out " +
      out.string());
  CHECK(b.exit_code == 0);
  REQUIRE(fs::exists(out));

  tas::records::ReadResult recs = tas::records::read_records(out);
  CHECK(recs.diagnostics.empty());
  REQUIRE(recs.file.records.size() == 2);
  CHECK(recs.file.records[0].label == "CG1-quad-test1");
  CHECK(recs.file.records[0].n_dofs == 25);
  CHECK(recs.file.records[1].n_dofs == 81);

  fs::path dir = work_dir() / "analyze_out";
  RunResult a = run("analyze --in " + out.string() +
                    " --kind mesh_convergence --kind doe --out-dir " +
                    dir.string());
  CHECK(a.exit_code == 0);
  REQUIRE(fs::exists(dir / "table.txt"));
  CHECK(fs::exists(dir / "mesh_convergence.svg"));
  CHECK(fs::exists(dir / "doe.svg"));

  std::ifstream table(dir / "table.txt");
  std::ostringstream buf;
  buf << table.rdbuf();
  CHECK(buf.str().find("CG1-quad-test1") != std::string::npos);
}

TEST_CASE("runtime failures exit with 1") {
  CHECK(run("analyze --in " + (work_dir() / "nope.jsonl").string()).exit_code ==
        1);
}

}  // TEST_SUITE
