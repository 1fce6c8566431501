// Copyright 2026 The gdsre Authors.
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

// Command line front end: build, stats, sample-gold, evaluate, serve and
// export-gold. Results go to stdout, structured errors to stderr. Exit code 0
// on success, 1 for invalid data or arguments, 2 for missing or unreadable
// inputs.

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "gdsre/annotation-server.h"
#include "gdsre/annotation.h"
#include "gdsre/corpus.h"
#include "gdsre/metrics.h"
#include "gdsre/pipeline.h"

namespace {

using gdsre::Error;
using gdsre::ErrorCode;
using nlohmann::json;
using nlohmann::ordered_json;

int Fail(const Error &e) {
  std::cerr << gdsre::ErrorToJson(e).dump() << std::endl;
  return e.code() == ErrorCode::kIo ? 2 : 1;
}

void RequireFile(const std::string &path) {
  if (!std::ifstream(path)) throw Error(ErrorCode::kIo, "cannot read " + path, {path});
}

struct BuildArgs {
  std::string config;
  int workers = 0;
  std::optional<uint64_t> seed;
  std::optional<int> other_cap;
  std::string output_dir;
  std::vector<std::string> methods;
  std::string timestamp;
  bool print_report = false;
};

int CmdBuild(const BuildArgs &args) {
  RequireFile(args.config);
  gdsre::PipelineConfig config = gdsre::LoadPipelineConfig(args.config);
  // Flags given on the command line win over the config file.
  if (args.workers > 0) config.workers = args.workers;
  if (args.seed) config.seed = *args.seed;
  if (args.other_cap) config.other_cap = *args.other_cap;
  if (!args.output_dir.empty()) config.paths.output_dir = args.output_dir;
  if (!args.timestamp.empty()) config.build_timestamp = args.timestamp;
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const auto &m : args.methods) {
      auto method = gdsre::ParseMethod(m);
      if (!method) throw Error(ErrorCode::kInvalidArgument, "unknown method " + m, {m});
      config.methods.push_back(*method);
    }
  }
  gdsre::BuildResult result = gdsre::RunBuild(config);
  std::vector<std::pair<std::string, gdsre::StatsTable>> columns;
  for (const auto &c : result.corpora) {
    columns.emplace_back(config.language + " " + std::string(gdsre::MethodName(c.meta.method)),
                         gdsre::ComputeStats(c));
  }
  std::cout << gdsre::RenderStats(columns);
  if (args.print_report) std::cout << result.report.dump(2) << '\n';
  return 0;
}

int CmdStats(const std::vector<std::string> &paths, bool as_json) {
  std::vector<std::pair<std::string, gdsre::StatsTable>> columns;
  for (const auto &p : paths) {
    RequireFile(p);
    gdsre::Corpus c = gdsre::ReadCorpus(p);
    std::string name = c.meta.language.empty()
                           ? std::string(gdsre::MethodName(c.meta.method))
                           : c.meta.language + " " + std::string(gdsre::MethodName(c.meta.method));
    columns.emplace_back(name, gdsre::ComputeStats(c));
  }
  if (as_json) {
    std::cout << gdsre::StatsToJson(columns).dump(2) << '\n';
  } else {
    std::cout << gdsre::RenderStats(columns);
  }
  return 0;
}

int CmdSampleGold(const std::string &normal_path, const std::string &skip_path, int n,
                  uint64_t seed, const std::string &out) {
  RequireFile(normal_path);
  RequireFile(skip_path);
  gdsre::Corpus normal = gdsre::ReadCorpus(normal_path);
  gdsre::Corpus skip = gdsre::ReadCorpus(skip_path);
  gdsre::GoldSample sample = gdsre::SampleGold(normal, skip, n, seed);
  if (out.empty() || out == "-") {
    gdsre::WriteGoldSample(sample, std::cout);
  } else {
    gdsre::WriteGoldSample(sample, out);
    std::cout << sample.items.size() << " items written to " << out << '\n';
  }
  for (const auto &s : sample.shortfalls) {
    std::cerr << ordered_json{{"shortfall", gdsre::RelationName(s.relation)},
                              {"method", gdsre::MethodName(s.method)},
                              {"requested", s.requested},
                              {"available", s.available}}
                     .dump()
              << '\n';
  }
  return 0;
}

// Gold labels come from an export (instance_id, label lines) or from a corpus
// or sample file, whose labels are then taken as truth.
std::map<std::string, gdsre::Relation> ReadLabels(const std::string &path) {
  RequireFile(path);
  return gdsre::ReadPredictions(path);
}

int CmdEvaluate(const std::string &gold_path, const std::string &pred_path,
                const std::string &sample_path, bool as_json) {
  auto gold = ReadLabels(gold_path);
  gdsre::EvalReport report;
  if (!pred_path.empty()) {
    report = gdsre::EvaluatePredictions(ReadLabels(pred_path), gold);
  } else if (!sample_path.empty()) {
    RequireFile(sample_path);
    report = gdsre::EvaluateAutomaticLabels(gold, gdsre::ReadGoldSample(sample_path).items);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "evaluate needs --predictions or --sample");
  }
  if (as_json) {
    std::cout << gdsre::ReportToJson(report).dump(2) << '\n';
  } else {
    std::cout << gdsre::RenderReport(report);
  }
  return 0;
}

gdsre::AnnotationOptions ServiceOptions(const std::string &tokens_path, int snapshot_interval) {
  gdsre::AnnotationOptions options;
  options.snapshot_interval = snapshot_interval;
  if (!tokens_path.empty()) {
    RequireFile(tokens_path);
    std::ifstream in(tokens_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kDataError, "token file must be a JSON object");
    }
    for (const auto &[k, v] : j.items()) options.tokens[k] = v.get<std::string>();
  }
  return options;
}

int CmdServe(const std::string &state_dir, const std::string &host, int port,
             const std::string &tokens_path, int snapshot_interval) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  gdsre::AnnotationService service(state_dir, ServiceOptions(tokens_path, snapshot_interval));
  gdsre::AnnotationServer server(service);
  int bound = server.Bind(host, port);
  std::cout << ordered_json{{"listening", host}, {"port", bound}}.dump() << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.Stop();
  });
  server.Listen();
  service.WriteSnapshot();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

int CmdExportGold(const std::string &state_dir, const std::string &task,
                  const std::string &out_path) {
  gdsre::AnnotationService service(state_dir, {});
  auto gold = service.ExportGold(task);
  std::ofstream file;
  std::ostream *out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::kIo, "cannot write " + out_path);
    out = &file;
  }
  *out << ordered_json{{"meta", {{"kind", "gold"}, {"task_id", task}, {"items", gold.size()}}}}
              .dump()
       << '\n';
  for (const auto &g : gold) {
    *out << ordered_json{{"instance_id", g.instance_id},
                         {"label", gdsre::RelationName(g.label)},
                         {"automatic_label", gdsre::RelationName(g.automatic_label)},
                         {"source", g.source}}
                .dump()
         << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Guided distant supervision corpus toolkit"};
  app.require_subcommand(1);

  BuildArgs build;
  auto *build_cmd = app.add_subcommand("build", "Build normal/skip corpora from a config file");
  build_cmd->add_option("--config", build.config, "Pipeline config (JSON)")->required();
  build_cmd->add_option("--workers", build.workers, "Worker threads");
  build_cmd->add_option("--seed", build.seed, "Seed for sampling");
  build_cmd->add_option("--other-cap", build.other_cap, "Max other instances per article");
  build_cmd->add_option("--output-dir", build.output_dir, "Output directory");
  build_cmd->add_option("--methods", build.methods, "normal and/or skip");
  build_cmd->add_option("--timestamp", build.timestamp, "Build timestamp recorded in meta");
  build_cmd->add_flag("--report", build.print_report, "Print the stage counters");

  std::vector<std::string> stats_paths;
  bool stats_json = false;
  auto *stats_cmd = app.add_subcommand("stats", "Per-relation counts of corpus files");
  stats_cmd->add_option("corpus", stats_paths, "Corpus files")->required();
  stats_cmd->add_flag("--json", stats_json, "Machine-readable output");

  std::string normal_path, skip_path, sample_out;
  int n_per_relation = 100;
  uint64_t sample_seed = 0;
  auto *sample_cmd = app.add_subcommand("sample-gold", "Draw the gold annotation sample");
  sample_cmd->add_option("--normal", normal_path, "Normal corpus")->required();
  sample_cmd->add_option("--skip", skip_path, "Skip corpus")->required();
  sample_cmd->add_option("-n,--per-relation", n_per_relation, "Items per (relation, method)");
  sample_cmd->add_option("--seed", sample_seed, "Sampling seed");
  sample_cmd->add_option("--out", sample_out, "Output file (default stdout)");

  std::string gold_path, pred_path, eval_sample;
  bool eval_json = false;
  auto *eval_cmd = app.add_subcommand("evaluate", "Score predictions or automatic labels");
  eval_cmd->add_option("--gold", gold_path, "Gold labels (instance_id, label lines)")->required();
  eval_cmd->add_option("--predictions", pred_path, "Prediction file");
  eval_cmd->add_option("--sample", eval_sample, "Gold sample carrying automatic labels");
  eval_cmd->add_flag("--json", eval_json, "Machine-readable output");

  std::string state_dir = "annotation-state", host = "127.0.0.1", tokens_path;
  int port = 8731, snapshot_interval = 100;
  auto *serve_cmd = app.add_subcommand("serve", "Run the annotation service");
  serve_cmd->add_option("--state-dir", state_dir, "Log and snapshot directory");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port (0 picks a free one)");
  serve_cmd->add_option("--tokens", tokens_path, "JSON object of principal -> token");
  serve_cmd->add_option("--snapshot-interval", snapshot_interval, "Operations per snapshot");

  std::string export_dir = "annotation-state", export_task, export_out;
  auto *export_cmd = app.add_subcommand("export-gold", "Write adjudicated gold labels");
  export_cmd->add_option("--state-dir", export_dir, "Service state directory");
  export_cmd->add_option("--task", export_task, "Task id")->required();
  export_cmd->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build_cmd) return CmdBuild(build);
    if (*stats_cmd) return CmdStats(stats_paths, stats_json);
    if (*sample_cmd) {
      return CmdSampleGold(normal_path, skip_path, n_per_relation, sample_seed, sample_out);
    }
    if (*eval_cmd) return CmdEvaluate(gold_path, pred_path, eval_sample, eval_json);
    if (*serve_cmd) return CmdServe(state_dir, host, port, tokens_path, snapshot_interval);
    if (*export_cmd) return CmdExportGold(export_dir, export_task, export_out);
  } catch (const Error &e) {
    return Fail(e);
  } catch (const std::exception &e) {
    return Fail(Error(ErrorCode::kDataError, e.what()));
  }
  return 1;
}
