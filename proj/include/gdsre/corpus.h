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

#ifndef GDSRE_CORPUS_H_
#define GDSRE_CORPUS_H_

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gdsre/labeller.h"
#include "gdsre/relation.h"
#include "json.hpp"

namespace gdsre {

struct CorpusMeta {
  std::string language;
  Method method = Method::kNormal;
  std::string build_timestamp;
  std::string config_digest;
  uint64_t seed = 0;

  bool operator==(const CorpusMeta &) const = default;
};

struct Corpus {
  std::vector<RelationInstance> instances;
  CorpusMeta meta;

  bool operator==(const Corpus &) const = default;
};

// Throws if instance ids repeat or an instance's method differs from the
// corpus method.
void ValidateCorpus(const Corpus &corpus);

enum class CorpusFormat { kLines, kTsv };

// ".tsv" selects kTsv, anything else kLines.
CorpusFormat FormatForPath(const std::string &path);

// Lines: a {"meta": {...}} header then one JSON object per instance.
// TSV: a "# meta {...}" comment line, a header row, then columns
// instance_id, label, marked_text, article_id, sentence_index, method,
// matched_key. Instances are written in canonical order.
void WriteCorpus(const Corpus &corpus, std::ostream &out, CorpusFormat format);
void WriteCorpus(const Corpus &corpus, const std::string &path, CorpusFormat format);
void WriteCorpus(const Corpus &corpus, const std::string &path);

Corpus ReadCorpus(std::istream &in, CorpusFormat format);
Corpus ReadCorpus(const std::string &path);

// Instance records of any line file with a meta header (corpus, gold sample).
struct InstanceFile {
  nlohmann::ordered_json meta;
  std::vector<RelationInstance> instances;
};
InstanceFile ReadInstanceFile(std::istream &in);
InstanceFile ReadInstanceFile(const std::string &path);

nlohmann::ordered_json InstanceToJson(const RelationInstance &inst);
RelationInstance InstanceFromJson(const nlohmann::json &j);

// ---------------------------------------------------------------------------
// Statistics.

struct StatsTable {
  std::array<int64_t, kNumRelations> counts{};
  int64_t total = 0;

  int64_t count(Relation r) const { return counts[RelationIndex(r)]; }
  bool operator==(const StatsTable &) const = default;
};

StatsTable ComputeStats(const std::vector<RelationInstance> &instances);
inline StatsTable ComputeStats(const Corpus &corpus) {
  return ComputeStats(corpus.instances);
}

// Relation rows in label order, a total row, one column per named table.
// Counts use thousands separators.
std::string RenderStats(const std::vector<std::pair<std::string, StatsTable>> &columns);
nlohmann::ordered_json StatsToJson(const std::vector<std::pair<std::string, StatsTable>> &columns);

// ---------------------------------------------------------------------------
// Gold sampling.

struct Shortfall {
  Relation relation;
  Method method;
  int requested = 0;
  int available = 0;

  bool operator==(const Shortfall &) const = default;
};

struct GoldSample {
  std::vector<RelationInstance> items;  // label holds the automatic label
  std::vector<Shortfall> shortfalls;
  int n_per_relation = 0;
  uint64_t seed = 0;
};

// Draws min(n, available) instances per (relation, method) cell without
// replacement, then shuffles the union. Deterministic for a fixed seed.
GoldSample SampleGold(const Corpus &normal, const Corpus &skip, int n_per_relation,
                      uint64_t seed);

void WriteGoldSample(const GoldSample &sample, std::ostream &out);
void WriteGoldSample(const GoldSample &sample, const std::string &path);
GoldSample ReadGoldSample(const std::string &path);

// ---------------------------------------------------------------------------
// Splitting.

struct CorpusSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Partitions articles (never sentences) into train/dev/test with article
// counts fixed by largest remainder, then assigns articles greedily to the
// split whose label counts lag their target share the most.
CorpusSplit SplitCorpus(const Corpus &corpus, const std::array<double, 3> &ratios,
                        uint64_t seed);

}  // namespace gdsre

#endif  // GDSRE_CORPUS_H_
