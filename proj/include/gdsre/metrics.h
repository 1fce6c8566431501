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

#ifndef GDSRE_METRICS_H_
#define GDSRE_METRICS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdsre/corpus.h"
#include "gdsre/relation.h"
#include "json.hpp"

namespace gdsre {

struct ClassScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int64_t support = 0;      // gold count
  int64_t predicted = 0;    // predicted count
  // Set when the corresponding ratio had a zero denominator and was taken as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

struct Aggregate {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct EvalReport {
  std::vector<Relation> labels;                 // label set of the report
  std::array<ClassScores, kNumRelations> per_class{};
  Aggregate macro;
  Aggregate weighted;
  int64_t total = 0;
  // confusion[gold][predicted], indexed by RelationIndex.
  std::array<std::array<int64_t, kNumRelations>, kNumRelations> confusion{};
  std::optional<double> kappa;

  const ClassScores &at(Relation r) const { return per_class[RelationIndex(r)]; }
};

// One-vs-rest scores per label. Macro averages classes with gold support > 0;
// weighted averages by support. Throws on length mismatch or a label outside
// `labels`.
EvalReport PrfReport(const std::vector<Relation> &gold,
                     const std::vector<Relation> &predicted,
                     const std::vector<Relation> &labels);
EvalReport PrfReport(const std::vector<Relation> &gold,
                     const std::vector<Relation> &predicted);

// Cohen's kappa over two equal-length, non-empty label vectors. When chance
// agreement is 1 the result is 1.
double CohensKappa(const std::vector<Relation> &a, const std::vector<Relation> &b);

// Automatic labels of a gold sample scored against adjudicated truth.
// `gold_labels` maps instance_id to the final label; every sampled item needs
// one.
EvalReport EvaluateAutomaticLabels(const std::map<std::string, Relation> &gold_labels,
                                   const std::vector<RelationInstance> &sampled);

// Prediction file: one {"instance_id", "label"} object per line. Every gold
// instance needs exactly one prediction and no unknown ids may appear.
std::map<std::string, Relation> ReadPredictions(std::istream &in);
std::map<std::string, Relation> ReadPredictions(const std::string &path);
void WritePredictions(const std::map<std::string, Relation> &predictions, std::ostream &out);

EvalReport EvaluatePredictions(const std::map<std::string, Relation> &predictions,
                               const std::map<std::string, Relation> &gold);

// Aligned table in report order: P, R, F1 with two decimals (".98", "1.0"),
// support, then macro and weighted rows.
std::string RenderReport(const EvalReport &report);
nlohmann::ordered_json ReportToJson(const EvalReport &report);

// "1.0" for 1, otherwise two decimals without the leading zero.
std::string FormatScore(double value);

}  // namespace gdsre

#endif  // GDSRE_METRICS_H_
