// Copyright 2026 The poisson-maxima Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the poisson-maxima binary end to end.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(PM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

TEST(Cli, DistCsv) {
  const auto r = run("dist --lambda 1 --log10-n 0 --k-max 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("lambda,log10_n,k,pmf,log_pmf\n1,0,0,0.36787944117144233,-1\n", 0), 0u)
      << r.out;
  EXPECT_EQ(count_lines(r.out), 5);
}

TEST(Cli, DecadeGridAcrossLambdas) {
  const auto r = run("dist --lambda 0.5,1,2,5 --log10-n-range 0:24:2 --k-max 30");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(count_lines(r.out), 1 + 4 * 13 * 31);
}

TEST(Cli, JsonFormat) {
  const auto r = run("prob --lambda 1 --log10-n 0 --format json");
  EXPECT_EQ(r.status, 0);
  const std::string head = "[\n {\"lambda\": 1, \"log10_n\": 0, \"i_best\": 0, \"p_two_point\": ";
  ASSERT_EQ(r.out.rfind(head, 0), 0u) << r.out;
  EXPECT_EQ(r.out.substr(r.out.size() - 4), "}\n]\n");
  EXPECT_NEAR(std::stod(r.out.substr(head.size())), 2.0 * std::exp(-1.0), 1e-14);
}

TEST(Cli, IntegerNMatchesLog10N) {
  EXPECT_EQ(run("modes --lambda 2 --n 100").out, run("modes --lambda 2 --log10-n 2").out);
}

TEST(Cli, ModesNullCellsAtNEqualsOne) {
  const auto r = run("modes --lambda 1 --log10-n 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("1,0,0,null,null,null,null,null,null,null"), std::string::npos) << r.out;
}

TEST(Cli, PointIsDeterministic) {
  const auto a = run("point --lambda 5 --log10-n 40");
  const auto b = run("point --lambda 5 --log10-n 40");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(count_lines(a.out), 2);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const std::string args = "modes --lambda 0.5,5 --log10-n-range 0:40:1";
  const auto serial = run(args, "POISSON_MAXIMA_THREADS=1");
  const auto wide = run(args, "POISSON_MAXIMA_THREADS=8");
  EXPECT_EQ(serial.status, 0);
  EXPECT_EQ(serial.out, wide.out);
  EXPECT_EQ(serial.out, run(args).out);
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "pm_cli_test_out.csv";
  std::filesystem::remove(path);
  const auto r = run("prob --lambda 2 --log10-n 3 --out " + path.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("lambda,log10_n,i_best,p_two_point\n2,3,", 0), 0u);
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("bogus --lambda 1 --log10-n 1").status, 2);
  EXPECT_EQ(run("dist --log10-n 1").status, 2);
  EXPECT_EQ(run("dist --lambda 0 --log10-n 1").status, 2);
  EXPECT_EQ(run("dist --lambda 1 --log10-n -1").status, 2);
  EXPECT_EQ(run("dist --lambda 1").status, 2);
  EXPECT_EQ(run("dist --lambda 1 --log10-n 1 --n 10").status, 2);
  EXPECT_EQ(run("prob --lambda 1 --log10-n-range 0:50:1").status, 2);
  EXPECT_EQ(run("prob --lambda 1 --log10-n-range 3:1:1").status, 2);
  EXPECT_EQ(run("prob --lambda 1 --log10-n-range 0:1").status, 2);
  EXPECT_EQ(run("modes --lambda 1 --n 0").status, 2);
  EXPECT_EQ(run("point --lambda 1,2 --log10-n 1").status, 2);
  EXPECT_EQ(run("point --lambda 1 --log10-n 1 --format xml").status, 2);
  EXPECT_EQ(run("dist --lambda 1 --log10-n 1 --k-max -3").status, 2);
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("modes --help").status, 0);
}

}  // namespace
