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

#ifndef GDSRE_PIPELINE_H_
#define GDSRE_PIPELINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdsre/corpus.h"
#include "gdsre/labeller.h"
#include "json.hpp"

namespace gdsre {

struct PipelinePaths {
  std::string dump;
  std::string langlinks;         // optional when every record has a target page id
  std::string page_titles;       // optional: TSV (page_id, title) for title targets
  std::string person_list;
  std::string kb_snapshot;       // optional
  std::string alternates;        // optional
  std::string occupation_table;  // optional when no record lists an occupation
  std::string abbreviations;     // optional; German default for "de"
  std::string language_config;   // optional; built-in for "de" and "en"
  std::string output_dir;
};

struct PipelineConfig {
  PipelinePaths paths;
  std::string language = "de";
  std::string source_language = "en";
  std::vector<Method> methods{Method::kNormal, Method::kSkip};
  int other_cap = 2;
  uint64_t seed = 0;
  int workers = 1;
  std::optional<std::array<double, 3>> split;
  std::string build_timestamp;
  std::string corpus_format = "lines";  // or "tsv"
};

// Parses the JSON config. Relative paths resolve against `base_dir`.
PipelineConfig ParsePipelineConfig(const nlohmann::json &j, const std::string &base_dir = "");
PipelineConfig LoadPipelineConfig(const std::string &path);

// Throws Error(kIo) naming every required input that does not exist.
void ValidatePipelineConfig(const PipelineConfig &config);

// Digest over the output-relevant config keys and the bytes of every input.
// The worker count and output directory do not contribute.
std::string ConfigDigest(const PipelineConfig &config);

struct BuildResult {
  std::vector<Corpus> corpora;  // one per configured method
  std::vector<std::string> written;
  nlohmann::ordered_json report;  // counters from every stage
};

// ingest -> knowledge -> matcher -> labeller -> corpus. Writes <method>.jsonl
// (or .tsv), stats.txt, stats.json, articles.jsonl, build_report.json and, if
// configured, <method>.{train,dev,test} splits into the output directory.
BuildResult RunBuild(const PipelineConfig &config);

}  // namespace gdsre

#endif  // GDSRE_PIPELINE_H_
