// Copyright 2026 The dkcsp Authors
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

#include "dkcsp/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace dkcsp::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"dkcsp"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("dkcsp_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = path_ / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, Predict) {
  const Outcome o = run_cli({"predict", "--d", "3", "--k", "3"});
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_NE(o.out.find("schoening 2.000000"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("det-complete 2.250000"), std::string::npos);
  EXPECT_NE(o.out.find("det-cycle 2.076923 27/13"), std::string::npos);
  const Outcome g = run_cli({"predict", "--d", "4", "--k", "3", "--graph", "hypercube"});
  EXPECT_NE(g.out.find("graph hypercube 2.938776 144/49"), std::string::npos) << g.out;
}

TEST(Cli, Volume) {
  const Outcome o = run_cli({"volume", "--graph", "cycle", "--d", "3", "--n", "2", "--r", "2"});
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_NE(o.out.find("shells 1 2 3\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("volume 6\n"), std::string::npos);
  const Outcome all = run_cli({"volume", "--graph", "complete", "--d", "3", "--n", "2"});
  EXPECT_NE(all.out.find("shells 1 4 4\nvolume 9\n"), std::string::npos) << all.out;
}

TEST(Cli, GenSolveRoundTrip) {
  TempDir tmp;
  const std::string inst = tmp.file("planted.csp");
  ASSERT_EQ(run_cli({"gen", "--n", "8", "--d", "3", "--k", "3", "--m", "30", "--seed", "7", "--planted", "-o", inst})
                .status,
            kExitOk);
  const Formula f = parse_instance(slurp(inst));
  EXPECT_EQ(f.num_vars(), 8);
  for (const std::string method : {"det", "schoening", "brute"}) {
    const std::string witness = tmp.file("w_" + method);
    const Outcome o = run_cli({"solve", "--method", method, "--graph", "cycle", "--seed", "3", "--verify-oracle",
                               "-o", witness, inst});
    ASSERT_EQ(o.status, kExitSat) << method << ": " << o.err;
    std::istringstream w(slurp(witness));
    std::string s, sat, v;
    w >> s >> sat >> v;
    EXPECT_EQ(sat, "SATISFIABLE");
    Assignment a;
    for (int c; w >> c;) a.colors.push_back(c);
    EXPECT_TRUE(satisfies(f, a)) << method;
  }
}

TEST(Cli, Unsatisfiable) {
  TempDir tmp;
  const std::string inst = tmp.file("unsat.csp", "p csp 2 2 2\n1 1 0\n1 2 0\n");
  const Outcome det = run_cli({"solve", "--method", "det", "--graph", "complete", inst});
  EXPECT_EQ(det.status, kExitUnsat);
  EXPECT_NE(det.out.find("s UNSATISFIABLE"), std::string::npos);
  const Outcome walk = run_cli({"solve", "--method", "schoening", "--seed", "1", "--reps", "50", inst});
  EXPECT_EQ(walk.status, kExitOk);
  EXPECT_NE(walk.out.find("s UNKNOWN"), std::string::npos);
}

TEST(Cli, CustomGraphFile) {
  TempDir tmp;
  const std::string graph = tmp.file("c3.graph", "g 3\n1 2\n2 3\n3 1\n");
  const std::string inst = tmp.file("i.csp", "p csp 2 3 1\n1 1 2 2 0\n");
  const Outcome o = run_cli({"solve", "--graph", "file:" + graph, inst});
  EXPECT_EQ(o.status, kExitSat) << o.err;
  const std::string path = tmp.file("path.graph", "g 3\n1 2\n2 1\n2 3\n3 2\n");
  EXPECT_EQ(run_cli({"solve", "--graph", "file:" + path, inst}).status, kExitError);
}

TEST(Cli, CodeOutputParsesAndCovers) {
  TempDir tmp;
  const std::string out = tmp.file("code.txt");
  const Outcome o = run_cli({"code", "--graph", "cycle", "--d", "3", "--n", "5", "--k", "3", "--verify", "-o", out});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  std::ifstream in(out);
  const CoveringCode code = read_code(in, ColorGraph::directed_cycle(3));
  EXPECT_EQ(code.n, 5);
  EXPECT_TRUE(verify_cover(code).covered);
}

TEST(Cli, Markov) {
  const Outcome o = run_cli({"markov", "--d", "3", "--k", "3", "--j", "2", "--n", "4", "--trials", "2000", "--seed", "1"});
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_NE(o.out.find("lambda 0.366025403784"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("simulate trials 2000"), std::string::npos);
}

TEST(Cli, BenchCsv) {
  const Outcome o = run_cli({"bench", "--n", "5", "--d", "3", "--k", "3", "--m", "12", "--count", "2", "--seed", "4",
                             "--reps", "50"});
  EXPECT_EQ(o.status, kExitOk);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "instance,method,graph,result,nodes,balls,reps,millis");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  EXPECT_EQ(rows, 2 * 2 * 2);
}

TEST(Cli, MissingSeedIsDrawnAndPrinted) {
  const Outcome o = run_cli({"gen", "--n", "3", "--d", "2", "--k", "2", "--m", "2"});
  EXPECT_EQ(o.status, kExitOk);
  EXPECT_EQ(o.out.rfind("c seed ", 0), 0u);
  EXPECT_NO_THROW(parse_instance(o.out));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).status, kExitError);
  EXPECT_EQ(run_cli({"solve"}).status, kExitError);
  EXPECT_EQ(run_cli({"solve", "--method", "magic", "x.csp"}).status, kExitError);
  EXPECT_EQ(run_cli({"predict", "--d", "3", "--k", "3", "--graph", "moebius"}).status, kExitError);
  EXPECT_EQ(run_cli({"volume", "--graph", "hypercube", "--d", "3", "--n", "2"}).status, kExitError);
  EXPECT_EQ(run_cli({"solve", "/nonexistent/file.csp"}).status, kExitError);
  EXPECT_EQ(run_cli({"--help"}).status, kExitOk);
}

TEST(Cli, BinaryExitCodes) {
  TempDir tmp;
  const std::string sat = tmp.file("sat.csp", "p csp 2 3 1\n1 1 2 2 0\n");
  const std::string unsat = tmp.file("unsat.csp", "p csp 1 2 2\n1 1 0\n1 2 0\n");
  auto status_of = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  const std::string bin = DKCSP_CLI_PATH;
  EXPECT_EQ(status_of(bin + " solve --method det --graph cycle " + sat), kExitSat);
  EXPECT_EQ(status_of(bin + " solve --method det --graph complete " + unsat), kExitUnsat);
  EXPECT_EQ(status_of(bin + " predict --d 3 --k 3"), kExitOk);
  EXPECT_EQ(status_of(bin + " frobnicate"), kExitError);
}

}  // namespace
}  // namespace dkcsp::cli
