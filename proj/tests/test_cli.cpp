#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tool() {
  const char* t = std::getenv("GQTOOL");
  REQUIRE_MESSAGE(t != nullptr, "GQTOOL must point at the CLI binary");
  return std::string("'") + t + "'";
}

std::filesystem::path scratch() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("gqtool_cli_" + std::to_string(getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build piped into check certifies the order") {
  RunResult r = run(tool() + " build --geometry symplectic --q 2 2>/dev/null | " +
                    tool() + " check gq 2>/dev/null");
  CHECK(r.exit == 0);
  CHECK(r.out.find("order (2,2)") != std::string::npos);
}

TEST_CASE("file based round trip, completion and plane check") {
  auto w2 = scratch() / "w2.gq";
  auto fano = scratch() / "fano.gq";
  RunResult b = run(tool() + " build --geometry symplectic --q 2 --out " +
                    w2.string() + " 2>/dev/null");
  REQUIRE(b.exit == 0);

  RunResult c = run(tool() + " dualnet --at 0 complete --in " + w2.string() +
                    " --out " + fano.string() + " 2>/dev/null");
  REQUIRE(c.exit == 0);

  RunResult plane = run(tool() + " check plane --in " + fano.string() + " 2>/dev/null");
  CHECK(plane.exit == 0);
  CHECK(plane.out.find("order 2") != std::string::npos);

  // the completion is a plane, so as a quadrangle it must fail
  RunResult gq = run(tool() + " check gq --in " + fano.string() + " 2>/dev/null");
  CHECK(gq.exit == 1);
  CHECK(gq.out.find("fail:") != std::string::npos);

  RunResult reg = run(tool() + " check regularity --in " + w2.string() + " 2>/dev/null");
  CHECK(reg.exit == 0);
  CHECK(reg.out.find("pass") != std::string::npos);
}

TEST_CASE("missing objects exit with 3") {
  CHECK(run(tool() + " polarity --find --q 4 2>/dev/null").exit == 3);
  RunResult ok = run(tool() + " polarity --find --q 2 2>/dev/null");
  CHECK(ok.exit == 0);
  CHECK(ok.out.find("RHO v1") != std::string::npos);
}

TEST_CASE("a zero budget starves the sampler and exits 4") {
  auto w2 = scratch() / "w2b.gq";
  REQUIRE(run(tool() + " build --geometry symplectic --q 2 --out " + w2.string() +
              " 2>/dev/null")
              .exit == 0);
  RunResult r = run(tool() + " dualnet --at 0 check vy --in " + w2.string() +
                    " --budget 0 2>/dev/null");
  CHECK(r.exit == 4);
}

TEST_CASE("garbage input exits with a usage error") {
  auto junk = scratch() / "junk.gq";
  std::ofstream(junk) << "this is not a geometry\n";
  CHECK(run(tool() + " check gq --in " + junk.string() + " 2>/dev/null").exit == 2);
  CHECK(run(tool() + " frobnicate 2>/dev/null").exit == 2);
}

TEST_CASE("symmetry queries answer on stdout") {
  auto w2 = scratch() / "w2c.gq";
  REQUIRE(run(tool() + " build --geometry symplectic --q 2 --out " + w2.string() +
              " 2>/dev/null")
              .exit == 0);
  RunResult ax = run(tool() + " symmetry --line 0 --in " + w2.string() + " 2>/dev/null");
  CHECK(ax.exit == 0);
  CHECK(ax.out.find("axis") != std::string::npos);
  RunResult ct = run(tool() + " symmetry --center 0 --in " + w2.string() + " 2>/dev/null");
  CHECK(ct.exit == 0);
}

TEST_CASE("the witness narrative states the membership verdict") {
  RunResult miss = run(tool() + " mixed vy-witness --Lprime 1,s,t 2>/dev/null");
  CHECK(miss.exit == 0);
  CHECK(miss.out.find("outside L'") != std::string::npos);

  RunResult hit = run(tool() + " mixed vy-witness --Lprime full 2>/dev/null");
  CHECK(hit.exit == 0);
  CHECK(hit.out.find("no counterexample") != std::string::npos);
}

TEST_CASE("manifests are deterministic once the clock is stripped") {
  auto w2 = scratch() / "w2d.gq";
  auto mf = scratch() / "manifest.json";
  REQUIRE(run(tool() + " build --geometry symplectic --q 2 --out " + w2.string() +
              " 2>/dev/null")
              .exit == 0);
  std::string cmd = tool() + " --manifest " + mf.string() + " check gq --in " +
                    w2.string() + " >/dev/null 2>/dev/null";
  REQUIRE(run(cmd).exit == 0);
  std::string first = slurp(mf);
  REQUIRE(run(cmd).exit == 0);
  std::string second = slurp(mf);

  std::regex wall("\"wall_s\": [^,\\n}]+");
  std::string a = std::regex_replace(first, wall, "\"wall_s\": X");
  std::string b = std::regex_replace(second, wall, "\"wall_s\": X");
  CHECK(a == b);
  CHECK(a.find("\"pass\": true") != std::string::npos);
  CHECK_FALSE(a.empty());
}
