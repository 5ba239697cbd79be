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

// Command-line front end: anonymize, curve, bench, serve.
//
// Exit status: 0 on success, 2 on usage errors, 1 on runtime errors.

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "anonpal/annotation.h"
#include "anonpal/bench.h"
#include "anonpal/config.h"
#include "anonpal/corpus.h"
#include "anonpal/engine.h"
#include "anonpal/errors.h"
#include "anonpal/service.h"
#include "anonpal/session_store.h"
#include "anonpal/tradeoff.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config;
  std::string endpoint;
};

struct AnonymizeFlags {
  std::string in = "-";
  std::string out = "-";
  std::string mode = "full";
  std::optional<double> privacy;
  std::optional<double> utility;
  std::optional<double> epsilon;
  std::string backend = "rules";
  std::optional<std::uint64_t> seed;
  bool json = false;
  bool labels = false;
  std::string session;
};

struct BenchFlags {
  std::size_t docs = 100;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::string corpus;
  std::string write_corpus;
  std::string json_out;
  std::string csv_out;
  bool no_latency = false;
};

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string token;
};

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return kExitRuntime;
}

int Usage(const std::string& message) {
  std::cerr << "usage error: " << message << "\n";
  return kExitUsage;
}

absl::StatusOr<anonpal::AppConfig> ReadConfig(const CommonFlags& flags) {
  anonpal::AppConfig config;
  if (!flags.config.empty()) {
    absl::StatusOr<anonpal::AppConfig> loaded = anonpal::LoadConfig(flags.config);
    if (!loaded.ok()) return loaded.status();
    config = *std::move(loaded);
  }
  if (!flags.endpoint.empty()) config.llm_endpoint = flags.endpoint;
  return config;
}

absl::StatusOr<std::unique_ptr<anonpal::Engine>> MakeEngine(
    const anonpal::AppConfig& config) {
  absl::StatusOr<anonpal::Engine::Dependencies> deps =
      anonpal::DependenciesFromConfig(config);
  if (!deps.ok()) return deps.status();
  return anonpal::Engine::Create(*std::move(deps));
}

absl::StatusOr<std::string> ReadInput(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      return anonpal::MakeError(anonpal::ErrorKind::kIoError,
                                absl::StrCat("cannot open ", path));
    }
    buffer << in.rdbuf();
  }
  return buffer.str();
}

absl::Status WriteOutput(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return absl::OkStatus();
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    return anonpal::MakeError(anonpal::ErrorKind::kIoError,
                              absl::StrCat("cannot write ", path));
  }
  return absl::OkStatus();
}

// Output text with every change rendered as "(replacement)[Type]".
std::string WithLabels(const anonpal::AnonymizeResult& result) {
  const std::string& output = result.doc.output_text;
  std::vector<std::string> plain;
  std::vector<anonpal::AnnotatedEntity> entities;
  std::size_t cursor = 0;
  for (const anonpal::ChangeRegion& change : result.doc.changes) {
    plain.push_back(output.substr(cursor, change.start - cursor));
    entities.push_back(
        anonpal::AnnotatedEntity{change.replacement, change.type_name, 0});
    cursor = change.end;
  }
  plain.push_back(output.substr(cursor));
  return anonpal::RenderAnnotations(plain, entities);
}

int RunAnonymize(const CommonFlags& common, const AnonymizeFlags& flags) {
  anonpal::Mode mode;
  absl::StatusOr<anonpal::AppConfig> config = ReadConfig(common);
  if (!config.ok()) return Fail(config.status());
  if (flags.mode == "automatic") {
    mode = anonpal::AutomaticMode{};
  } else if (flags.mode == "privacy_only") {
    if (!flags.privacy) return Usage("--mode privacy_only needs --privacy");
    mode = anonpal::PrivacyOnlyMode{*flags.privacy};
  } else if (flags.mode == "full") {
    if (!flags.privacy || !flags.utility) {
      return Usage("--mode full needs --privacy and --utility");
    }
    mode = anonpal::FullMode{*flags.privacy, *flags.utility};
  } else {
    mode = anonpal::DpMode{flags.epsilon.value_or(config->epsilon),
                           flags.seed.value_or(0)};
  }
  if (absl::Status status = anonpal::ValidateMode(mode); !status.ok()) {
    return Usage(std::string(status.message()));
  }
  const anonpal::Backend backend = *anonpal::ParseBackend(flags.backend);

  absl::StatusOr<std::unique_ptr<anonpal::Engine>> engine = MakeEngine(*config);
  if (!engine.ok()) return Fail(engine.status());
  absl::StatusOr<std::string> text = ReadInput(flags.in);
  if (!text.ok()) return Fail(text.status());

  std::optional<anonpal::AnonymizeResult> result;
  const std::string session_id = flags.session.empty() ? "cli" : flags.session;
  auto run = [&](anonpal::PseudonymSession& session) -> absl::Status {
    absl::StatusOr<anonpal::AnonymizeResult> r =
        (*engine)->Run(*text, mode, backend, session);
    if (!r.ok()) return r.status();
    result = *std::move(r);
    return absl::OkStatus();
  };
  absl::Status status;
  if (!flags.session.empty() && config->session_dir.has_value()) {
    anonpal::SessionStore store(*config->session_dir);
    status = store.Update(session_id, run);
  } else if (flags.seed.has_value()) {
    anonpal::PseudonymSession session =
        anonpal::PseudonymSession::FromSeed(session_id, *flags.seed);
    status = run(session);
  } else {
    anonpal::PseudonymSession session =
        anonpal::PseudonymSession::Fresh(session_id);
    status = run(session);
  }
  if (!status.ok()) return Fail(status);

  std::string rendered;
  if (flags.json) {
    rendered = anonpal::AnonymizeResultToJson(*result, session_id,
                                              /*include_originals=*/false) +
               "\n";
  } else if (flags.labels) {
    rendered = WithLabels(*result);
  } else {
    rendered = anonpal::ReplaceText(*result);
  }
  for (const std::string& warning : result->doc.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (status = WriteOutput(flags.out, rendered); !status.ok()) {
    return Fail(status);
  }
  return 0;
}

int RunCurve(const CommonFlags& common) {
  absl::StatusOr<anonpal::AppConfig> config = ReadConfig(common);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<std::unique_ptr<anonpal::Engine>> engine = MakeEngine(*config);
  if (!engine.ok()) return Fail(engine.status());
  std::cout << anonpal::FrontierToJson((*engine)->frontier()) << "\n";
  return 0;
}

int RunBenchCommand(const CommonFlags& common, const BenchFlags& flags) {
  absl::StatusOr<anonpal::AppConfig> config = ReadConfig(common);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<std::unique_ptr<anonpal::Engine>> engine = MakeEngine(*config);
  if (!engine.ok()) return Fail(engine.status());
  anonpal::SeededCorpus corpus;
  if (!flags.corpus.empty()) {
    absl::StatusOr<anonpal::SeededCorpus> loaded =
        anonpal::LoadCorpus(flags.corpus);
    if (!loaded.ok()) return Fail(loaded.status());
    corpus = *std::move(loaded);
  } else {
    corpus = anonpal::GenerateCorpus(flags.docs, flags.seed);
  }
  if (!flags.write_corpus.empty()) {
    if (absl::Status s = WriteOutput(flags.write_corpus,
                                     anonpal::CorpusToJson(corpus));
        !s.ok()) {
      return Fail(s);
    }
  }
  absl::StatusOr<anonpal::BenchReport> report = anonpal::RunBench(
      **engine, corpus,
      anonpal::DefaultBenchModes(flags.epsilon.value_or(config->epsilon)),
      flags.seed);
  if (!report.ok()) return Fail(report.status());
  const bool latency = !flags.no_latency;
  if (!flags.csv_out.empty()) {
    if (absl::Status s = WriteOutput(
            flags.csv_out, anonpal::BenchReportToCsv(*report, latency));
        !s.ok()) {
      return Fail(s);
    }
  }
  const std::string json = anonpal::BenchReportToJson(*report, latency);
  if (absl::Status s = WriteOutput(flags.json_out.empty() ? "-" : flags.json_out,
                                   json);
      !s.ok()) {
    return Fail(s);
  }
  return 0;
}

int RunServe(const CommonFlags& common, const ServeFlags& flags) {
  absl::StatusOr<anonpal::AppConfig> config = ReadConfig(common);
  if (!config.ok()) return Fail(config.status());
  absl::StatusOr<std::unique_ptr<anonpal::Engine>> engine = MakeEngine(*config);
  if (!engine.ok()) return Fail(engine.status());

  std::unique_ptr<anonpal::SessionStore> store =
      config->session_dir.has_value()
          ? std::make_unique<anonpal::SessionStore>(*config->session_dir)
          : std::make_unique<anonpal::SessionStore>();
  anonpal::ServiceOptions options;
  options.host = flags.host;
  options.port = flags.port;
  options.bearer_token =
      flags.token.empty() ? config->bearer_token : flags.token;
  options.default_epsilon = config->epsilon;

  // Block termination signals here so the waiter thread receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  anonpal::Service service(**engine, *store, options);
  if (absl::Status status = service.Bind(); !status.ok()) return Fail(status);
  std::cerr << "listening on " << flags.host << ":" << service.port() << "\n";

  std::thread waiter([&service, signals] {
    int received = 0;
    sigwait(&signals, &received);
    service.Stop();
  });
  absl::Status status = service.Serve();
  // Serve only returns after Stop; wake the waiter if Serve failed early.
  if (!status.ok()) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  if (!status.ok()) return Fail(status);
  std::cerr << "shut down\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective text anonymization on a privacy-utility plane"};
  app.require_subcommand(1);
  CommonFlags common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--config", common.config, "Key/value config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--endpoint", common.endpoint,
                    "Chat-completions base URL for the llm backend");
  };

  AnonymizeFlags anonymize;
  CLI::App* anonymize_cmd =
      app.add_subcommand("anonymize", "Anonymize a text file or stdin");
  add_common(anonymize_cmd);
  anonymize_cmd->add_option("--in", anonymize.in, "Input file, - for stdin");
  anonymize_cmd->add_option("--out", anonymize.out, "Output file, - for stdout");
  anonymize_cmd->add_option("--mode", anonymize.mode, "Anonymization mode")
      ->check(CLI::IsMember({"automatic", "privacy_only", "full", "dp"}));
  anonymize_cmd->add_option("--privacy", anonymize.privacy, "Privacy target x")
      ->check(CLI::Range(0.0, 1.0));
  anonymize_cmd->add_option("--utility", anonymize.utility, "Utility target y")
      ->check(CLI::Range(0.0, 1.0));
  anonymize_cmd->add_option("--epsilon", anonymize.epsilon, "DP epsilon (> 0)");
  anonymize_cmd->add_option("--backend", anonymize.backend, "rules or llm")
      ->check(CLI::IsMember({"rules", "llm"}));
  anonymize_cmd->add_option("--seed", anonymize.seed,
                            "Seed for pseudonyms and DP sampling");
  anonymize_cmd->add_option("--session", anonymize.session,
                            "Persistent session id (needs session_dir)");
  anonymize_cmd->add_flag("--json", anonymize.json, "Print the JSON result");
  anonymize_cmd->add_flag("--labels", anonymize.labels,
                          "Show the type of every replacement");

  CLI::App* curve_cmd =
      app.add_subcommand("curve", "Print the frontier vertices as JSON");
  add_common(curve_cmd);

  BenchFlags bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Compare modes on a seeded corpus");
  add_common(bench_cmd);
  bench_cmd->add_option("--docs", bench.docs, "Documents to generate")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Corpus and sampling seed");
  bench_cmd->add_option("--epsilon", bench.epsilon, "DP epsilon (> 0)");
  bench_cmd->add_option("--corpus", bench.corpus, "Load a corpus JSON file");
  bench_cmd->add_option("--write-corpus", bench.write_corpus,
                        "Save the corpus used");
  bench_cmd->add_option("--json-out", bench.json_out, "Report JSON path");
  bench_cmd->add_option("--csv-out", bench.csv_out, "Report CSV path");
  bench_cmd->add_flag("--no-latency", bench.no_latency,
                      "Omit timing so reports compare byte for byte");

  ServeFlags serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  add_common(serve_cmd);
  serve_cmd->add_option("--host", serve.host, "Listen address");
  serve_cmd->add_option("--port", serve.port, "Listen port, 0 for any")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--token", serve.token, "Required bearer token");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*anonymize_cmd) return RunAnonymize(common, anonymize);
  if (*curve_cmd) return RunCurve(common);
  if (*bench_cmd) {
    if (bench.epsilon && !(*bench.epsilon > 0.0)) {
      return Usage("--epsilon must be > 0");
    }
    return RunBenchCommand(common, bench);
  }
  return RunServe(common, serve);
}
