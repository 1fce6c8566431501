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

#ifndef GDSRE_ANNOTATION_H_
#define GDSRE_ANNOTATION_H_

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gdsre/error.h"
#include "gdsre/labeller.h"
#include "gdsre/relation.h"
#include "json.hpp"

namespace gdsre {

struct AnnotationTask {
  std::string task_id;
  std::vector<RelationInstance> items;  // automatic label kept server side only
  std::vector<std::string> annotator_ids;
  std::string guideline_text;
  uint64_t seed = 0;
  // Item indices in presentation order, per annotator.
  std::map<std::string, std::vector<std::size_t>> order;
};

struct AnnotatorLabel {
  std::string task_id;
  std::string instance_id;
  std::string annotator_id;
  Relation label = Relation::kOther;
  std::string submitted_at;
};

struct AdjudicationRecord {
  std::string instance_id;
  Relation final_label = Relation::kOther;
  std::string resolved_by;
  bool forced = false;
};

// What an annotator sees. Never carries the automatic label.
struct ItemView {
  std::string task_id;
  std::string instance_id;
  std::string marked_text;
  std::size_t position = 0;  // 0-based index in the annotator's order
  std::size_t total = 0;
  std::size_t labelled = 0;
};

struct AgreementSummary {
  double kappa = 0;
  std::size_t items = 0;
  std::size_t doubly_labelled = 0;
  std::size_t agreed = 0;
  std::size_t disagreed = 0;
};

struct Disagreement {
  std::string instance_id;
  std::string marked_text;
  std::map<std::string, Relation> labels;  // annotator -> label
  std::optional<AdjudicationRecord> adjudication;
};

struct GoldLabel {
  std::string instance_id;
  Relation label = Relation::kOther;
  Relation automatic_label = Relation::kOther;
  std::string source;  // "agreement" or "adjudication"
};

struct AnnotationOptions {
  // Annotator (and resolver) id -> shared token. Empty disables checks.
  std::map<std::string, std::string> tokens;
  // Snapshot after this many logged operations; 0 disables snapshots.
  int snapshot_interval = 100;
  // Timestamp source for submitted labels.
  std::function<std::string()> clock;
};

// Gold-annotation workflow state backed by an append-only operation log in
// `state_dir` (log.jsonl) plus a periodic snapshot (snapshot.json). Opening
// an existing directory replays the log. All writes are serialized.
class AnnotationService {
 public:
  explicit AnnotationService(std::string state_dir, AnnotationOptions options = {});
  AnnotationService(const AnnotationService &) = delete;
  AnnotationService &operator=(const AnnotationService &) = delete;

  std::string CreateTask(const std::vector<RelationInstance> &items,
                         const std::vector<std::string> &annotators,
                         const std::string &guidelines, uint64_t seed);

  // nullopt once every item carries a label from this annotator.
  std::optional<ItemView> NextItem(const std::string &task_id,
                                   const std::string &annotator_id) const;

  void SubmitLabel(const std::string &task_id, const std::string &instance_id,
                   const std::string &annotator_id, const std::string &label);

  AgreementSummary Agreement(const std::string &task_id) const;
  std::vector<Disagreement> ListDisagreements(const std::string &task_id) const;

  void Adjudicate(const std::string &task_id, const std::string &instance_id,
                  const std::string &final_label, const std::string &resolver,
                  bool force = false);

  // Fails listing every item without agreement or adjudication.
  std::vector<GoldLabel> ExportGold(const std::string &task_id) const;

  // Throws kUnauthorized unless the token matches the configured one.
  void Authorize(const std::string &principal, const std::string &token) const;

  // Full state in canonical form; equal states give equal dumps.
  nlohmann::ordered_json StateJson() const;

  // Number of label submissions recorded for (instance, annotator), counting
  // replaced ones.
  std::size_t HistoryCount(const std::string &task_id, const std::string &instance_id,
                           const std::string &annotator_id) const;

  void WriteSnapshot();

  std::vector<std::string> TaskIds() const;

 private:
  struct TaskState {
    AnnotationTask task;
    std::map<std::string, std::size_t> index;  // instance_id -> item index
    // instance_id -> annotator -> history of labels (latest last).
    std::map<std::string, std::map<std::string, std::vector<AnnotatorLabel>>> labels;
    std::map<std::string, AdjudicationRecord> adjudications;
  };

  void Load();
  void Apply(const nlohmann::json &op);
  void Append(nlohmann::ordered_json op);
  const TaskState &GetTask(const std::string &task_id) const;
  std::optional<Relation> Effective(const TaskState &t, const std::string &instance_id,
                                    const std::string &annotator) const;
  std::vector<Disagreement> DisagreementsLocked(const TaskState &t) const;
  nlohmann::ordered_json StateJsonLocked() const;
  void WriteSnapshotLocked();

  std::string dir_;
  AnnotationOptions options_;
  mutable std::shared_mutex mu_;
  std::map<std::string, TaskState> tasks_;
  uint64_t seq_ = 0;
  uint64_t task_counter_ = 0;
  int since_snapshot_ = 0;
  std::ofstream log_;
};

// Transport-independent request handling. `endpoint` is one of create-task,
// next-item, submit-label, agreement, disagreements, adjudicate, export.
// Returns an HTTP-style status and a JSON body; errors have the shape
// {"code", "message", "offending_ids"}.
struct ProtocolResponse {
  int status = 200;
  nlohmann::ordered_json body;
};
ProtocolResponse HandleRequest(AnnotationService &service, const std::string &endpoint,
                               const nlohmann::json &request, const std::string &token);

nlohmann::ordered_json ItemViewToJson(const ItemView &view);
nlohmann::ordered_json ErrorToJson(const Error &error);
int HttpStatusFor(const Error &error);

}  // namespace gdsre

#endif  // GDSRE_ANNOTATION_H_
