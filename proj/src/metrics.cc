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

#include "gdsre/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/text.h"

namespace gdsre {

using nlohmann::json;
using nlohmann::ordered_json;

EvalReport PrfReport(const std::vector<Relation> &gold,
                     const std::vector<Relation> &predicted,
                     const std::vector<Relation> &labels) {
  if (gold.size() != predicted.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "gold and predicted lengths differ: " + std::to_string(gold.size()) +
                    " vs " + std::to_string(predicted.size()));
  }
  EvalReport report;
  report.labels = labels;
  std::array<bool, kNumRelations> in_set{};
  for (Relation r : labels) in_set[RelationIndex(r)] = true;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!in_set[RelationIndex(gold[i])] || !in_set[RelationIndex(predicted[i])]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label outside the report label set at position " + std::to_string(i));
    }
    report.confusion[RelationIndex(gold[i])][RelationIndex(predicted[i])]++;
  }
  report.total = static_cast<int64_t>(gold.size());

  int macro_classes = 0;
  for (Relation r : labels) {
    const int k = RelationIndex(r);
    ClassScores &c = report.per_class[k];
    int64_t tp = report.confusion[k][k];
    for (int j = 0; j < kNumRelations; ++j) {
      c.support += report.confusion[k][j];
      c.predicted += report.confusion[j][k];
    }
    if (c.predicted > 0) {
      c.precision = static_cast<double>(tp) / static_cast<double>(c.predicted);
    } else {
      c.precision_undefined = true;
    }
    if (c.support > 0) {
      c.recall = static_cast<double>(tp) / static_cast<double>(c.support);
    } else {
      c.recall_undefined = true;
    }
    c.f1 = c.precision + c.recall > 0
               ? 2 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
    if (c.support > 0) {
      macro_classes++;
      report.macro.precision += c.precision;
      report.macro.recall += c.recall;
      report.macro.f1 += c.f1;
      const double w = static_cast<double>(c.support);
      report.weighted.precision += w * c.precision;
      report.weighted.recall += w * c.recall;
      report.weighted.f1 += w * c.f1;
    }
  }
  if (macro_classes > 0) {
    report.macro.precision /= macro_classes;
    report.macro.recall /= macro_classes;
    report.macro.f1 /= macro_classes;
  }
  if (report.total > 0) {
    const double n = static_cast<double>(report.total);
    report.weighted.precision /= n;
    report.weighted.recall /= n;
    report.weighted.f1 /= n;
  }
  return report;
}

EvalReport PrfReport(const std::vector<Relation> &gold,
                     const std::vector<Relation> &predicted) {
  return PrfReport(gold, predicted,
                   std::vector<Relation>(kAllRelations.begin(), kAllRelations.end()));
}

double CohensKappa(const std::vector<Relation> &a, const std::vector<Relation> &b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "kappa needs non-empty label vectors");
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "kappa needs equal-length label vectors");
  }
  const double n = static_cast<double>(a.size());
  std::array<int64_t, kNumRelations> ca{}, cb{};
  int64_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[RelationIndex(a[i])]++;
    cb[RelationIndex(b[i])]++;
    if (a[i] == b[i]) agree++;
  }
  const double po = static_cast<double>(agree) / n;
  // Integer accumulation keeps p_e exact for the symmetric cases.
  int64_t cross = 0;
  for (int k = 0; k < kNumRelations; ++k) cross += ca[k] * cb[k];
  const double pe = static_cast<double>(cross) / (n * n);
  if (cross == static_cast<int64_t>(a.size()) * static_cast<int64_t>(a.size())) return 1.0;
  return (po - pe) / (1.0 - pe);
}

EvalReport EvaluateAutomaticLabels(const std::map<std::string, Relation> &gold_labels,
                                   const std::vector<RelationInstance> &sampled) {
  std::vector<Relation> gold, pred;
  std::vector<std::string> missing;
  for (const RelationInstance &inst : sampled) {
    auto it = gold_labels.find(inst.instance_id);
    if (it == gold_labels.end()) {
      missing.push_back(inst.instance_id);
      continue;
    }
    gold.push_back(it->second);
    pred.push_back(inst.label);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kFailedPrecondition, "sampled items lack an adjudicated label",
                missing);
  }
  return PrfReport(gold, pred);
}

std::map<std::string, Relation> ReadPredictions(std::istream &in) {
  std::map<std::string, Relation> out;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> dups;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_object() && j.contains("meta")) continue;
    if (j.is_discarded() || !j.is_object() || !j.contains("instance_id") ||
        !j.contains("label") || !j["instance_id"].is_string() || !j["label"].is_string()) {
      throw Error(ErrorCode::kDataError,
                  "prediction line " + std::to_string(lineno) +
                      " needs string fields instance_id and label");
    }
    std::string id = j["instance_id"].get<std::string>();
    Relation label = RelationFromName(j["label"].get<std::string>());
    if (!out.emplace(id, label).second) dups.push_back(id);
  }
  if (!dups.empty()) {
    throw Error(ErrorCode::kDataError, "duplicate predictions", dups);
  }
  return out;
}

std::map<std::string, Relation> ReadPredictions(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return ReadPredictions(in);
}

void WritePredictions(const std::map<std::string, Relation> &predictions, std::ostream &out) {
  for (const auto &[id, label] : predictions) {
    ordered_json j;
    j["instance_id"] = id;
    j["label"] = RelationName(label);
    out << j.dump() << '\n';
  }
}

EvalReport EvaluatePredictions(const std::map<std::string, Relation> &predictions,
                               const std::map<std::string, Relation> &gold) {
  std::vector<std::string> missing, unknown;
  for (const auto &[id, _] : gold) {
    if (!predictions.count(id)) missing.push_back(id);
  }
  for (const auto &[id, _] : predictions) {
    if (!gold.count(id)) unknown.push_back(id);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kDataError, "predictions missing for gold instances", missing);
  }
  if (!unknown.empty()) {
    throw Error(ErrorCode::kDataError, "predictions name unknown instances", unknown);
  }
  std::vector<Relation> g, p;
  for (const auto &[id, label] : gold) {
    g.push_back(label);
    p.push_back(predictions.at(id));
  }
  return PrfReport(g, p);
}

std::string FormatScore(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s = buf;
  if (s == "1.00") return "1.0";
  if (s.rfind("0.", 0) == 0) return s.substr(1);
  if (s.rfind("-0.", 0) == 0) return "-" + s.substr(2);
  return s;
}

std::string RenderReport(const EvalReport &report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Relation", "P", "R", "F1", "Supp."});
  std::array<bool, kNumRelations> in_set{};
  for (Relation r : report.labels) in_set[RelationIndex(r)] = true;
  for (Relation r : kReportOrder) {
    if (!in_set[RelationIndex(r)]) continue;
    const ClassScores &c = report.at(r);
    if (c.support == 0) {
      rows.push_back({std::string(RelationName(r)), "-", "-", "-", "0"});
    } else {
      rows.push_back({std::string(RelationName(r)), FormatScore(c.precision),
                      FormatScore(c.recall), FormatScore(c.f1), std::to_string(c.support)});
    }
  }
  const std::size_t body_end = rows.size();
  rows.push_back({"macro", FormatScore(report.macro.precision), FormatScore(report.macro.recall),
                  FormatScore(report.macro.f1), std::to_string(report.total)});
  rows.push_back({"weighted", FormatScore(report.weighted.precision),
                  FormatScore(report.weighted.recall), FormatScore(report.weighted.f1),
                  std::to_string(report.total)});
  std::array<std::size_t, 5> width{};
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  std::string rule(width[0], '-');
  for (std::size_t c = 1; c < width.size(); ++c) rule += "  " + std::string(width[c], '-');
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto &row = rows[i];
    out << row[0] << std::string(width[0] - row[0].size(), ' ');
    for (std::size_t c = 1; c < row.size(); ++c) {
      out << "  " << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
    if (i == 0 || i + 1 == body_end) out << rule << '\n';
  }
  if (report.kappa) out << "kappa " << FormatScore(*report.kappa) << '\n';
  return out.str();
}

ordered_json ReportToJson(const EvalReport &report) {
  ordered_json j;
  ordered_json classes = ordered_json::object();
  for (Relation r : kReportOrder) {
    if (std::find(report.labels.begin(), report.labels.end(), r) == report.labels.end()) continue;
    const ClassScores &c = report.at(r);
    classes[std::string(RelationName(r))] = {{"precision", c.precision},
                                             {"recall", c.recall},
                                             {"f1", c.f1},
                                             {"support", c.support},
                                             {"precision_undefined", c.precision_undefined},
                                             {"recall_undefined", c.recall_undefined}};
  }
  j["per_class"] = classes;
  j["macro"] = {{"precision", report.macro.precision},
                {"recall", report.macro.recall},
                {"f1", report.macro.f1}};
  j["weighted"] = {{"precision", report.weighted.precision},
                   {"recall", report.weighted.recall},
                   {"f1", report.weighted.f1}};
  j["total"] = report.total;
  ordered_json labels = ordered_json::array();
  for (Relation r : kAllRelations) labels.push_back(RelationName(r));
  j["confusion_labels"] = labels;
  ordered_json conf = ordered_json::array();
  for (const auto &row : report.confusion) conf.push_back(row);
  j["confusion"] = conf;
  if (report.kappa) j["kappa"] = *report.kappa;
  return j;
}

}  // namespace gdsre
