// Copyright 2026 The anonpal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Drives the installed command-line tool as a subprocess.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "anonpal/corpus.h"
#include "anonpal/taxonomy.h"
#include "anonpal/tradeoff.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"

namespace anonpal {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using ::testing::HasSubstr;
using ::testing::Not;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string Quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           absl::StrCat("anonpal_cli_", getpid(), "_",
                        ::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

  RunResult Run(const std::vector<std::string>& args) {
    std::vector<std::string> quoted = {Quote(ANONPAL_CLI_PATH)};
    for (const std::string& arg : args) quoted.push_back(Quote(arg));
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string command =
        absl::StrCat(absl::StrJoin(quoted, " "), " </dev/null >",
                     Quote(out.string()), " 2>", Quote(err.string()));
    const int raw = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = Slurp(out);
    result.err = Slurp(err);
    return result;
  }

  fs::path dir_;
};

TEST_F(CliTest, FullPrivacyReplacesEverySeededSurface) {
  const SeededCorpus corpus = GenerateCorpus(6, 12);
  for (const SeededDocument& doc : corpus.documents) {
    const fs::path in = Write("in.txt", doc.text);
    RunResult r = Run({"anonymize", "--in", in.string(), "--mode", "full",
                       "--privacy", "1", "--utility", "0", "--backend",
                       "rules", "--seed", "3"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out.size() > 0, true);
    for (const EntitySpan& span : doc.manifest) {
      EXPECT_THAT(r.out, Not(HasSubstr(span.surface))) << doc.id;
    }
  }
}

TEST_F(CliTest, ZeroPrivacyEchoesTheInput) {
  const std::string text = "Send it to ana@example.org today.";
  const fs::path in = Write("in.txt", text);
  const fs::path out = dir_ / "out.txt";
  RunResult r = Run({"anonymize", "--in", in.string(), "--out", out.string(),
                     "--privacy", "0", "--utility", "1"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(Slurp(out), text);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, SeedMakesOutputReproducible) {
  const fs::path in = Write("in.txt", "Maria Garcia wrote from maria@contoso.example.");
  const std::vector<std::string> args = {"anonymize", "--in", in.string(),
                                         "--mode", "automatic", "--seed", "9"};
  RunResult a = Run(args);
  RunResult b = Run(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, JsonAndLabelsOutputs) {
  const fs::path in = Write("in.txt", "Write to maria@contoso.example now.");
  RunResult json_run = Run({"anonymize", "--in", in.string(), "--privacy", "1",
                            "--utility", "0", "--json", "--seed", "1"});
  ASSERT_EQ(json_run.exit_code, 0) << json_run.err;
  json parsed = json::parse(json_run.out);
  ASSERT_EQ(parsed["changes"].size(), 1u);
  EXPECT_EQ(parsed["changes"][0]["type"], "Email Address");
  EXPECT_FALSE(parsed["changes"][0].contains("original"));
  EXPECT_THAT(json_run.out, Not(HasSubstr("maria@contoso.example")));

  RunResult labels = Run({"anonymize", "--in", in.string(), "--privacy", "1",
                          "--utility", "0", "--labels", "--seed", "1"});
  ASSERT_EQ(labels.exit_code, 0) << labels.err;
  EXPECT_THAT(labels.out, HasSubstr(")[Email Address]"));
  EXPECT_TRUE(absl::StartsWith(labels.out, "Write to ("));
}

TEST_F(CliTest, DpModeRuns) {
  const fs::path in = Write("in.txt", "The team meeting will be in the office.");
  RunResult r = Run({"anonymize", "--in", in.string(), "--mode", "dp",
                     "--epsilon", "0.5", "--seed", "4", "--json"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  json parsed = json::parse(r.out);
  EXPECT_TRUE(parsed["snapped_point"].is_null());
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  const fs::path in = Write("in.txt", "hello");
  const std::vector<std::vector<std::string>> cases = {
      {"anonymize", "--in", in.string(), "--privacy", "2", "--utility", "0"},
      {"anonymize", "--in", in.string(), "--mode", "dp", "--epsilon", "0"},
      {"anonymize", "--in", in.string(), "--mode", "dp", "--epsilon", "-1"},
      {"anonymize", "--in", in.string(), "--mode", "full", "--privacy", "1"},
      {"anonymize", "--in", in.string(), "--mode", "privacy_only"},
      {"anonymize", "--in", in.string(), "--mode", "sideways"},
      {"anonymize", "--in", in.string(), "--backend", "regex"},
      {"anonymize", "--bogus"},
      {"anonymize", "--config", (dir_ / "missing.toml").string()},
      {"bench", "--epsilon", "0"},
      {"bench", "--docs", "0"},
      {"serve", "--port", "70000"},
      {"frobnicate"},
      {},
  };
  for (const auto& args : cases) {
    RunResult r = Run(args);
    EXPECT_EQ(r.exit_code, 2) << absl::StrJoin(args, " ") << "\n" << r.err;
  }
  RunResult dp_zero = Run(cases[1]);
  EXPECT_THAT(dp_zero.err, HasSubstr("epsilon"));
}

TEST_F(CliTest, HelpExitsWithZero) {
  RunResult r = Run({"--help"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_THAT(r.out, HasSubstr("anonymize"));
}

TEST_F(CliTest, RuntimeErrorsExitWithOne) {
  RunResult missing = Run({"anonymize", "--in", (dir_ / "nope.txt").string(),
                           "--privacy", "1", "--utility", "0"});
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_THAT(missing.err, HasSubstr("cannot open"));

  const fs::path empty = Write("empty.txt", "");
  RunResult empty_run = Run({"anonymize", "--in", empty.string(), "--privacy",
                             "1", "--utility", "0"});
  EXPECT_EQ(empty_run.exit_code, 1);

  const fs::path bad_config = Write("bad.toml", "epsilon = -1\n");
  RunResult config = Run({"curve", "--config", bad_config.string()});
  EXPECT_EQ(config.exit_code, 1);
  EXPECT_THAT(config.err, HasSubstr("line 1"));

  const fs::path in = Write("in.txt", "hello");
  RunResult llm = Run({"anonymize", "--in", in.string(), "--backend", "llm",
                       "--endpoint", "http://127.0.0.1:1/v1/", "--privacy",
                       "1", "--utility", "0"});
  EXPECT_EQ(llm.exit_code, 1);

  const fs::path corpus = Write("corpus.json", "{\"documents\": []}");
  RunResult bench = Run({"bench", "--corpus", corpus.string()});
  EXPECT_EQ(bench.exit_code, 1);
}

TEST_F(CliTest, CurvePrintsTheFrontier) {
  RunResult r = Run({"curve"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const Frontier frontier = *BuildFrontier(*Normalize(BuiltinScoreTable()));
  EXPECT_EQ(json::parse(r.out), json::parse(FrontierToJson(frontier)));
}

TEST_F(CliTest, BenchIsReproducible) {
  const fs::path csv = dir_ / "report.csv";
  const fs::path corpus = dir_ / "corpus.json";
  RunResult a = Run({"bench", "--docs", "20", "--seed", "5", "--no-latency",
                     "--csv-out", csv.string(), "--write-corpus",
                     corpus.string()});
  ASSERT_EQ(a.exit_code, 0) << a.err;
  RunResult b = Run({"bench", "--corpus", corpus.string(), "--seed", "5",
                     "--no-latency"});
  ASSERT_EQ(b.exit_code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  json report = json::parse(a.out);
  EXPECT_EQ(report["modes"].size(), 5u);
  EXPECT_EQ(report["modes"][0]["doc_count"], 20);
  EXPECT_TRUE(absl::StartsWith(Slurp(csv),
                               "mode,residual_recall,preservation,doc_count\n"));
}

TEST_F(CliTest, ServeAnswersAndShutsDownOnSigterm) {
  // Find a free port, release it, and hand it to the child.
  int port = 0;
  {
    const int sock = socket(AF_INET, SOCK_STREAM, 0);
    ASSERT_GE(sock, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    ASSERT_EQ(bind(sock, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)), 0);
    socklen_t len = sizeof(addr);
    ASSERT_EQ(getsockname(sock, reinterpret_cast<sockaddr*>(&addr), &len), 0);
    port = ntohs(addr.sin_port);
    close(sock);
  }
  const pid_t child = fork();
  ASSERT_GE(child, 0);
  if (child == 0) {
    const std::string port_arg = std::to_string(port);
    execl(ANONPAL_CLI_PATH, ANONPAL_CLI_PATH, "serve", "--port",
          port_arg.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(1);
  bool up = false;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(10);
  while (!up && std::chrono::steady_clock::now() < deadline) {
    auto res = client.Get("/v1/curve");
    up = res && res->status == 200;
    if (!up) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  EXPECT_TRUE(up);
  if (up) {
    auto res = client.Post(
        "/v1/anonymize",
        R"({"text": "mail bo@example.net", "mode": "full", "point": {"x": 0, "y": 1}})",
        "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(json::parse(res->body)["output_text"], "mail bo@example.net");
  }
  kill(child, SIGTERM);
  int status = 0;
  ASSERT_EQ(waitpid(child, &status, 0), child);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
}

}  // namespace
}  // namespace anonpal
