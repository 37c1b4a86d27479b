#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout and stderr.
Run cli(const std::string& args) {
  const std::string command = std::string(SLMC_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fx(const char* name) { return std::string(SLMC_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli("check-algebra " + fx("a2.slmc")).status == 0);
  const Run bad = cli("check-algebra " + fx("mutant.slmc") + " --max-arity 5");
  CHECK(bad.status == 1);
  CHECK(bad.out.find("FAIL eq:relations algebra=mutant arity=3 word=x.x.y witness=2 w") != std::string::npos);
  CHECK(cli("check-algebra /nonexistent.slmc").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("check-algebra " + fx("a2.slmc") + " --max-arity 20").status == 3);
  CHECK(cli("twist " + fx("a2.slmc") + " --mc '1 x + 1 y'").status == 1);
}

TEST_CASE("curvature output") {
  const Run r = cli("curv " + fx("a2.slmc") + " --element '1 x + 1 y'");
  CHECK(r.status == 0);
  CHECK(r.out.find("1 z\n") != std::string::npos);
}

TEST_CASE("groupoid commands") {
  const Run sys = cli("mc-system " + fx("a2.slmc") + " --dim 0 --poly-degree 0");
  CHECK(sys.status == 0);
  CHECK(sys.out.find("equation z[1]: 1 x[1]*y[1] = 0") != std::string::npos);
  const Run pi = cli("pi0 " + fx("a2.slmc") + " --points " + fx("a2_points.slmc") + " --poly-degree 2");
  CHECK(pi.status == 0);
  CHECK(pi.out.find("classes 3") != std::string::npos);
  const Run horn = cli("fill-horn " + fx("contractible.slmc") + " --dim 2 --index 1 --faces " +
                       fx("contractible_face0.slmc") + " " + fx("contractible_face2.slmc"));
  CHECK(horn.status == 0);
  CHECK(horn.out.find("FAIL") == std::string::npos);
}

TEST_CASE("properties are deterministic") {
  const Run a = cli("properties --seed 3 --trials 2");
  const Run b = cli("properties --seed 3 --trials 2");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}
