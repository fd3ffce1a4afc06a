// Copyright 2026 The hop Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hop/cli.hpp"

namespace hop {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun hop(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "hop");
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(HOP_TEST_DATA_DIR) + "/" + rel; }

TEST(Cli, CheckStdlib) {
  CliRun r = hop({"check", HOP_STDLIB_DIR});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("hState : forall"), std::string::npos);
}

TEST(Cli, CheckEmptyFile) {
  CliRun r = hop({"check", data("data/empty.hop")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("ok: no definitions"), std::string::npos);
}

TEST(Cli, CheckRejects) {
  CliRun r = hop({"check", data("reject/inline_handler.hop")});
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.err.find("error[LatentOperationCall]"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("inline_handler.hop:"), std::string::npos);
}

TEST(Cli, RunCorpusEntries) {
  std::string corpus = std::string(HOP_STDLIB_DIR) + "/corpus.hop";
  CliRun a = hop({"run", corpus, "--entry", "transact_cs"});
  EXPECT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("Just (2, 2)"), std::string::npos) << a.out;
  CliRun b = hop({"run", corpus, "--entry", "flippy_nd_catch"});
  EXPECT_NE(b.out.find("[Nothing, Just 1]"), std::string::npos) << b.out;
}

TEST(Cli, RunUnknownEntry) {
  CliRun r = hop({"run", std::string(HOP_STDLIB_DIR) + "/corpus.hop", "--entry", "nope"});
  EXPECT_EQ(r.code, kExitFailed);
  EXPECT_NE(r.err.find("UnknownEntry"), std::string::npos) << r.err;
}

TEST(Cli, RunStuck) {
  CliRun r = hop({"run", data("data/stuck.hop")});
  EXPECT_EQ(r.code, kExitStuck);
  EXPECT_NE((r.out + r.err).find("unhandled operation"), std::string::npos);
}

TEST(Cli, RunOutOfFuel) {
  CliRun r = hop({"run", data("data/ordered.hop"), "--fuel", "2"});
  EXPECT_EQ(r.code, kExitFuel);
  EXPECT_NE((r.out + r.err).find("fuel exhausted after 2 steps"), std::string::npos);
}

TEST(Cli, MissingFile) {
  CliRun r = hop({"check", data("data/does_not_exist.hop")});
  EXPECT_EQ(r.code, kExitIo);
}

TEST(Cli, TraceHandlersOnly) {
  CliRun r = hop({"trace", std::string(HOP_STDLIB_DIR) + "/corpus.hop", "--entry", "incr_st", "--trace=handlers"});
  EXPECT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t traced = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) != 0) continue;
    ++traced;
    EXPECT_TRUE(line.find("[Handle]") != std::string::npos || line.find("[Return]") != std::string::npos) << line;
    EXPECT_LE(line.size(), 200u + 32u);
  }
  EXPECT_GT(traced, 0u);
}

TEST(Cli, JsonOutputIsDeterministic) {
  std::vector<std::string> args{"run", std::string(HOP_STDLIB_DIR) + "/corpus.hop", "--entry", "transact_cs",
                                "--json"};
  CliRun a = hop(args);
  CliRun b = hop(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.front(), '{');
}

TEST(Cli, SocPair) {
  std::string report = (std::filesystem::temp_directory_path() / "hop-cli-test-soc.json").string();
  CliRun r = hop({"soc", "--pairs", "hRead:hAbort", "--program", "const42", "--out", report, "--json"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Equivalent"), std::string::npos) << r.out;
  CliRun v = hop({"soc", "--pairs", "hCatch2:hState", "--program", "transact", "--no-context", "--out", report});
  EXPECT_NE(v.out.find("Violation"), std::string::npos) << v.out;
  std::filesystem::remove(report);
}

TEST(Cli, Repl) {
  CliRun r = hop({"repl"}, ":t throw\n(hState 0 incr)!\n1 +\n:q\n");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("forall a r r'. susp[<Ca|r+r'> * <>] a"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("((), 1) : ((), Int)"), std::string::npos) << r.out;
  EXPECT_NE((r.out + r.err).find("error[SyntaxError]"), std::string::npos);
}

TEST(Cli, BadArguments) {
  EXPECT_EQ(hop({"run", "--fuel", "0", data("data/empty.hop")}).code, kExitIo);
  EXPECT_EQ(hop({"frobnicate"}).code, kExitIo);
}

}  // namespace
}  // namespace hop
