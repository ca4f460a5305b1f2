#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
  int status;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string command = std::string(QDISCORD_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string tmp(const std::string& name) { return std::string(QDISCORD_TEST_TMPDIR) + "/" + name; }

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("bogus").status, 1);
  EXPECT_EQ(run("point").status, 1);
  EXPECT_EQ(run("point --theta abc").status, 1);
  EXPECT_EQ(run("point --theta 2").status, 1);
  EXPECT_EQ(run("sweep --theta-min 0 --theta-max 0.25 --steps 1 --in-pi --out " + tmp("x.csv")).status,
            1);
  EXPECT_EQ(run("sweep --theta-min 0 --theta-max 0.25 --steps 3 --in-pi --out /nonexistent/dir/x.csv")
                .status,
            1);
  EXPECT_EQ(run("verify --samples 0").status, 1);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").status, 0); }

TEST(Cli, PointPrintsJson) {
  const CliResult r = run("point --theta 0.125 --in-pi");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"Ic\": 0.3991239633"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"Ic_kw\""), std::string::npos);
  EXPECT_NE(r.out.find("\"I_clone\": 0.4176453411"), std::string::npos) << r.out;
}

TEST(Cli, SweepIsByteIdenticalAcrossRuns) {
  const std::string args = "sweep --theta-min 0 --theta-max 0.25 --steps 11 --in-pi --out ";
  ASSERT_EQ(run(args + tmp("a.csv")).status, 0);
  ASSERT_EQ(run(args + tmp("b.csv")).status, 0);
  const std::string a = slurp(tmp("a.csv"));
  EXPECT_EQ(a, slurp(tmp("b.csv")));
  EXPECT_EQ(a.rfind("theta,I,Ic,discord,I_clone,diff\n0,1,1,0,1,0\n", 0), 0u) << a;
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 12);
}

TEST(Cli, CrossoverIsBitIdenticalAcrossRuns) {
  const CliResult a = run("crossover");
  const CliResult b = run("crossover");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"theta_over_pi\": 0.0931"), std::string::npos) << a.out;
}

TEST(Cli, VerifyPassesAndDetectsFailure) {
  const CliResult ok = run("verify --samples 3");
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_NE(ok.out.find("\"passed\": true"), std::string::npos);
  EXPECT_EQ(ok.out, run("verify --samples 3").out);
  const CliResult bad = run("verify --samples 2 --tolerance-scale -1");
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.out.find("\"passed\": false"), std::string::npos);
}

}  // namespace
