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

#include "gdsre/annotation.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <set>
#include <sstream>

#include "gdsre/corpus.h"
#include "gdsre/metrics.h"
#include "gdsre/random.h"

namespace gdsre {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string UtcNow() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Relation LabelOrThrow(const std::string &label, const std::string &instance_id) {
  auto r = ParseRelation(label);
  if (!r) {
    throw Error(ErrorCode::kInvalidArgument, "unknown label \"" + label + "\"", {instance_id});
  }
  return *r;
}

std::map<std::string, std::vector<std::size_t>> ComputeOrder(
    std::size_t n, const std::vector<std::string> &annotators, uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> order;
  for (const std::string &a : annotators) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Rng rng = Rng::Derive(seed, "order:" + a);
    rng.Shuffle(idx);
    order[a] = std::move(idx);
  }
  return order;
}

}  // namespace

AnnotationService::AnnotationService(std::string state_dir, AnnotationOptions options)
    : dir_(std::move(state_dir)), options_(std::move(options)) {
  if (!options_.clock) options_.clock = UtcNow;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create state directory " + dir_);
  Load();
  log_.open(fs::path(dir_) / "log.jsonl", std::ios::binary | std::ios::app);
  if (!log_) throw Error(ErrorCode::kIo, "cannot open annotation log in " + dir_);
}

void AnnotationService::Load() {
  const fs::path snapshot = fs::path(dir_) / "snapshot.json";
  uint64_t snapshot_seq = 0;
  if (fs::exists(snapshot)) {
    std::ifstream in(snapshot, std::ios::binary);
    json snap = json::parse(in, nullptr, false);
    if (snap.is_discarded()) throw Error(ErrorCode::kDataError, "corrupt snapshot in " + dir_);
    snapshot_seq = snap.at("seq").get<uint64_t>();
    task_counter_ = snap.at("task_counter").get<uint64_t>();
    for (const auto &tj : snap.at("state").at("tasks")) {
      TaskState t;
      t.task.task_id = tj.at("task_id").get<std::string>();
      t.task.annotator_ids = tj.at("annotators").get<std::vector<std::string>>();
      t.task.guideline_text = tj.at("guidelines").get<std::string>();
      t.task.seed = tj.at("seed").get<uint64_t>();
      for (const auto &ij : tj.at("items")) t.task.items.push_back(InstanceFromJson(ij));
      t.task.order = ComputeOrder(t.task.items.size(), t.task.annotator_ids, t.task.seed);
      for (std::size_t i = 0; i < t.task.items.size(); ++i) {
        t.index[t.task.items[i].instance_id] = i;
      }
      for (const auto &[iid, per] : tj.at("labels").items()) {
        for (const auto &[aid, hist] : per.items()) {
          for (const auto &h : hist) {
            t.labels[iid][aid].push_back({t.task.task_id, iid, aid,
                                          RelationFromName(h.at("label").get<std::string>()),
                                          h.at("submitted_at").get<std::string>()});
          }
        }
      }
      for (const auto &[iid, aj] : tj.at("adjudications").items()) {
        t.adjudications[iid] = {iid, RelationFromName(aj.at("final_label").get<std::string>()),
                                aj.at("resolved_by").get<std::string>(),
                                aj.at("forced").get<bool>()};
      }
      tasks_[t.task.task_id] = std::move(t);
    }
    seq_ = snapshot_seq;
  }
  const fs::path log = fs::path(dir_) / "log.jsonl";
  if (!fs::exists(log)) return;
  std::string content;
  {
    std::ifstream in(log, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    content = ss.str();
  }
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    const bool last = nl == std::string::npos;
    std::string line = content.substr(pos, last ? std::string::npos : nl - pos);
    const std::size_t line_start = pos;
    pos = last ? content.size() : nl + 1;
    if (line.empty()) continue;
    json op = json::parse(line, nullptr, false);
    if (op.is_discarded()) {
      // A torn final line is an interrupted append; drop it so later appends
      // start on a fresh line. Anything else is damage.
      if (pos >= content.size()) {
        fs::resize_file(log, line_start);
        break;
      }
      throw Error(ErrorCode::kDataError, "corrupt annotation log at byte " +
                                             std::to_string(line_start));
    }
    if (last) {
      std::ofstream fix(log, std::ios::binary | std::ios::app);
      fix << '\n';
    }
    uint64_t seq = op.at("seq").get<uint64_t>();
    if (seq <= snapshot_seq) continue;
    Apply(op);
    seq_ = seq;
  }
}

void AnnotationService::Apply(const json &op) {
  const std::string kind = op.at("op").get<std::string>();
  if (kind == "create_task") {
    TaskState t;
    t.task.task_id = op.at("task_id").get<std::string>();
    t.task.annotator_ids = op.at("annotators").get<std::vector<std::string>>();
    t.task.guideline_text = op.at("guidelines").get<std::string>();
    t.task.seed = op.at("seed").get<uint64_t>();
    for (const auto &ij : op.at("items")) t.task.items.push_back(InstanceFromJson(ij));
    t.task.order = ComputeOrder(t.task.items.size(), t.task.annotator_ids, t.task.seed);
    for (std::size_t i = 0; i < t.task.items.size(); ++i) {
      t.index[t.task.items[i].instance_id] = i;
    }
    task_counter_++;
    tasks_[t.task.task_id] = std::move(t);
  } else if (kind == "submit_label") {
    TaskState &t = tasks_.at(op.at("task_id").get<std::string>());
    AnnotatorLabel l;
    l.task_id = t.task.task_id;
    l.instance_id = op.at("instance_id").get<std::string>();
    l.annotator_id = op.at("annotator_id").get<std::string>();
    l.label = RelationFromName(op.at("label").get<std::string>());
    l.submitted_at = op.at("submitted_at").get<std::string>();
    t.labels[l.instance_id][l.annotator_id].push_back(std::move(l));
  } else if (kind == "adjudicate") {
    TaskState &t = tasks_.at(op.at("task_id").get<std::string>());
    const std::string iid = op.at("instance_id").get<std::string>();
    t.adjudications[iid] = {iid, RelationFromName(op.at("final_label").get<std::string>()),
                            op.at("resolved_by").get<std::string>(),
                            op.at("forced").get<bool>()};
  } else {
    throw Error(ErrorCode::kDataError, "unknown log operation " + kind);
  }
}

void AnnotationService::Append(ordered_json op) {
  ordered_json line;
  line["seq"] = seq_ + 1;
  for (auto &[k, v] : op.items()) line[k] = v;
  Apply(json::parse(line.dump()));
  log_ << line.dump() << '\n';
  log_.flush();
  if (!log_) throw Error(ErrorCode::kIo, "annotation log write failed");
  seq_++;
  if (options_.snapshot_interval > 0 && ++since_snapshot_ >= options_.snapshot_interval) {
    WriteSnapshotLocked();
  }
}

const AnnotationService::TaskState &AnnotationService::GetTask(const std::string &task_id) const {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown task " + task_id, {task_id});
  }
  return it->second;
}

std::optional<Relation> AnnotationService::Effective(const TaskState &t,
                                                     const std::string &instance_id,
                                                     const std::string &annotator) const {
  auto it = t.labels.find(instance_id);
  if (it == t.labels.end()) return std::nullopt;
  auto jt = it->second.find(annotator);
  if (jt == it->second.end() || jt->second.empty()) return std::nullopt;
  return jt->second.back().label;
}

std::string AnnotationService::CreateTask(const std::vector<RelationInstance> &items,
                                          const std::vector<std::string> &annotators,
                                          const std::string &guidelines, uint64_t seed) {
  if (annotators.size() != 2 || annotators[0] == annotators[1] || annotators[0].empty() ||
      annotators[1].empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a task needs exactly two distinct annotators",
                annotators);
  }
  if (items.empty()) throw Error(ErrorCode::kInvalidArgument, "a task needs at least one item");
  std::set<std::string> ids;
  std::vector<std::string> dups;
  for (const auto &item : items) {
    if (!ids.insert(item.instance_id).second) dups.push_back(item.instance_id);
  }
  if (!dups.empty()) throw Error(ErrorCode::kInvalidArgument, "task items repeat ids", dups);

  std::unique_lock lock(mu_);
  std::string task_id = "task-" + std::to_string(task_counter_ + 1);
  ordered_json op;
  op["op"] = "create_task";
  op["task_id"] = task_id;
  op["annotators"] = annotators;
  op["guidelines"] = guidelines;
  op["seed"] = seed;
  ordered_json arr = ordered_json::array();
  for (const auto &item : items) arr.push_back(InstanceToJson(item));
  op["items"] = std::move(arr);
  Append(std::move(op));
  return task_id;
}

std::optional<ItemView> AnnotationService::NextItem(const std::string &task_id,
                                                    const std::string &annotator_id) const {
  std::shared_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  auto it = t.task.order.find(annotator_id);
  if (it == t.task.order.end()) {
    throw Error(ErrorCode::kNotFound, "annotator " + annotator_id + " is not on task " + task_id,
                {annotator_id});
  }
  std::size_t labelled = 0;
  for (const auto &item : t.task.items) {
    if (Effective(t, item.instance_id, annotator_id)) labelled++;
  }
  for (std::size_t pos = 0; pos < it->second.size(); ++pos) {
    const RelationInstance &item = t.task.items[it->second[pos]];
    if (Effective(t, item.instance_id, annotator_id)) continue;
    return ItemView{task_id, item.instance_id, item.marked_text, pos, it->second.size(), labelled};
  }
  return std::nullopt;
}

void AnnotationService::SubmitLabel(const std::string &task_id, const std::string &instance_id,
                                    const std::string &annotator_id, const std::string &label) {
  Relation r = LabelOrThrow(label, instance_id);
  std::unique_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  if (!t.task.order.count(annotator_id)) {
    throw Error(ErrorCode::kNotFound, "annotator " + annotator_id + " is not on task " + task_id,
                {annotator_id});
  }
  if (!t.index.count(instance_id)) {
    throw Error(ErrorCode::kNotFound, "unknown instance " + instance_id, {instance_id});
  }
  ordered_json op;
  op["op"] = "submit_label";
  op["task_id"] = task_id;
  op["instance_id"] = instance_id;
  op["annotator_id"] = annotator_id;
  op["label"] = RelationName(r);
  op["submitted_at"] = options_.clock();
  Append(std::move(op));
}

AgreementSummary AnnotationService::Agreement(const std::string &task_id) const {
  std::shared_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  const std::string &a = t.task.annotator_ids[0];
  const std::string &b = t.task.annotator_ids[1];
  std::vector<Relation> la, lb;
  AgreementSummary s;
  s.items = t.task.items.size();
  for (const auto &item : t.task.items) {
    auto x = Effective(t, item.instance_id, a);
    auto y = Effective(t, item.instance_id, b);
    if (!x || !y) continue;
    la.push_back(*x);
    lb.push_back(*y);
    (*x == *y ? s.agreed : s.disagreed)++;
  }
  s.doubly_labelled = la.size();
  if (la.empty()) {
    throw Error(ErrorCode::kFailedPrecondition, "insufficient data: no doubly labelled items",
                {task_id});
  }
  s.kappa = CohensKappa(la, lb);
  return s;
}

std::vector<Disagreement> AnnotationService::DisagreementsLocked(const TaskState &t) const {
  std::vector<Disagreement> out;
  const std::string &a = t.task.annotator_ids[0];
  const std::string &b = t.task.annotator_ids[1];
  for (const auto &item : t.task.items) {
    auto x = Effective(t, item.instance_id, a);
    auto y = Effective(t, item.instance_id, b);
    if (!x || !y || *x == *y) continue;
    Disagreement d;
    d.instance_id = item.instance_id;
    d.marked_text = item.marked_text;
    d.labels[a] = *x;
    d.labels[b] = *y;
    auto adj = t.adjudications.find(item.instance_id);
    if (adj != t.adjudications.end()) d.adjudication = adj->second;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Disagreement> AnnotationService::ListDisagreements(const std::string &task_id) const {
  std::shared_lock lock(mu_);
  return DisagreementsLocked(GetTask(task_id));
}

void AnnotationService::Adjudicate(const std::string &task_id, const std::string &instance_id,
                                   const std::string &final_label, const std::string &resolver,
                                   bool force) {
  Relation r = LabelOrThrow(final_label, instance_id);
  if (resolver.empty()) throw Error(ErrorCode::kInvalidArgument, "resolver must be named");
  std::unique_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  if (!t.index.count(instance_id)) {
    throw Error(ErrorCode::kNotFound, "unknown instance " + instance_id, {instance_id});
  }
  auto x = Effective(t, instance_id, t.task.annotator_ids[0]);
  auto y = Effective(t, instance_id, t.task.annotator_ids[1]);
  const bool disagreement = x && y && *x != *y;
  if (!disagreement && !force) {
    throw Error(ErrorCode::kConflict,
                "item is not a disagreement; pass force to confirm a label", {instance_id});
  }
  ordered_json op;
  op["op"] = "adjudicate";
  op["task_id"] = task_id;
  op["instance_id"] = instance_id;
  op["final_label"] = RelationName(r);
  op["resolved_by"] = resolver;
  op["forced"] = !disagreement;
  Append(std::move(op));
}

std::vector<GoldLabel> AnnotationService::ExportGold(const std::string &task_id) const {
  std::shared_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  std::vector<GoldLabel> out;
  std::vector<std::string> disputed, incomplete;
  for (const auto &item : t.task.items) {
    auto adj = t.adjudications.find(item.instance_id);
    if (adj != t.adjudications.end()) {
      out.push_back({item.instance_id, adj->second.final_label, item.label, "adjudication"});
      continue;
    }
    auto x = Effective(t, item.instance_id, t.task.annotator_ids[0]);
    auto y = Effective(t, item.instance_id, t.task.annotator_ids[1]);
    if (x && y && *x == *y) {
      out.push_back({item.instance_id, *x, item.label, "agreement"});
    } else if (x && y) {
      disputed.push_back(item.instance_id);
    } else {
      incomplete.push_back(item.instance_id);
    }
  }
  if (!disputed.empty()) {
    std::vector<std::string> ids = disputed;
    ids.insert(ids.end(), incomplete.begin(), incomplete.end());
    throw Error(ErrorCode::kFailedPrecondition,
                std::to_string(disputed.size()) + " unresolved disagreements", ids);
  }
  if (!incomplete.empty()) {
    throw Error(ErrorCode::kFailedPrecondition,
                std::to_string(incomplete.size()) + " items lack two labels", incomplete);
  }
  return out;
}

void AnnotationService::Authorize(const std::string &principal, const std::string &token) const {
  if (options_.tokens.empty()) return;
  auto it = options_.tokens.find(principal);
  if (it == options_.tokens.end() || it->second != token) {
    throw Error(ErrorCode::kUnauthorized, "invalid token for " + principal, {principal});
  }
}

ordered_json AnnotationService::StateJsonLocked() const {
  ordered_json tasks = ordered_json::array();
  for (const auto &[id, t] : tasks_) {
    ordered_json tj;
    tj["task_id"] = id;
    tj["annotators"] = t.task.annotator_ids;
    tj["guidelines"] = t.task.guideline_text;
    tj["seed"] = t.task.seed;
    ordered_json items = ordered_json::array();
    for (const auto &item : t.task.items) items.push_back(InstanceToJson(item));
    tj["items"] = std::move(items);
    ordered_json labels = ordered_json::object();
    for (const auto &[iid, per] : t.labels) {
      ordered_json pj = ordered_json::object();
      for (const auto &[aid, hist] : per) {
        ordered_json hj = ordered_json::array();
        for (const auto &h : hist) {
          hj.push_back({{"label", RelationName(h.label)}, {"submitted_at", h.submitted_at}});
        }
        pj[aid] = std::move(hj);
      }
      labels[iid] = std::move(pj);
    }
    tj["labels"] = std::move(labels);
    ordered_json adj = ordered_json::object();
    for (const auto &[iid, a] : t.adjudications) {
      adj[iid] = {{"final_label", RelationName(a.final_label)},
                  {"resolved_by", a.resolved_by},
                  {"forced", a.forced}};
    }
    tj["adjudications"] = std::move(adj);
    tasks.push_back(std::move(tj));
  }
  return ordered_json{{"tasks", std::move(tasks)}};
}

ordered_json AnnotationService::StateJson() const {
  std::shared_lock lock(mu_);
  return StateJsonLocked();
}

std::size_t AnnotationService::HistoryCount(const std::string &task_id,
                                            const std::string &instance_id,
                                            const std::string &annotator_id) const {
  std::shared_lock lock(mu_);
  const TaskState &t = GetTask(task_id);
  auto it = t.labels.find(instance_id);
  if (it == t.labels.end()) return 0;
  auto jt = it->second.find(annotator_id);
  return jt == it->second.end() ? 0 : jt->second.size();
}

void AnnotationService::WriteSnapshotLocked() {
  ordered_json snap;
  snap["seq"] = seq_;
  snap["task_counter"] = task_counter_;
  snap["state"] = StateJsonLocked();
  const fs::path final_path = fs::path(dir_) / "snapshot.json";
  const fs::path tmp = fs::path(dir_) / "snapshot.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << snap.dump() << '\n';
    if (!out) throw Error(ErrorCode::kIo, "snapshot write failed");
  }
  fs::rename(tmp, final_path);
  since_snapshot_ = 0;
}

void AnnotationService::WriteSnapshot() {
  std::unique_lock lock(mu_);
  WriteSnapshotLocked();
}

std::vector<std::string> AnnotationService::TaskIds() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto &[id, _] : tasks_) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------
// Protocol.

ordered_json ItemViewToJson(const ItemView &view) {
  ordered_json j;
  j["task_id"] = view.task_id;
  j["instance_id"] = view.instance_id;
  j["marked_text"] = view.marked_text;
  j["position"] = view.position;
  j["total"] = view.total;
  j["labelled"] = view.labelled;
  return j;
}

ordered_json ErrorToJson(const Error &error) {
  ordered_json j;
  j["code"] = ErrorCodeName(error.code());
  j["message"] = error.what();
  j["offending_ids"] = error.offending_ids();
  return j;
}

int HttpStatusFor(const Error &error) {
  switch (error.code()) {
    case ErrorCode::kInvalidArgument: return 400;
    case ErrorCode::kDataError: return 400;
    case ErrorCode::kUnauthorized: return 401;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kFailedPrecondition: return 412;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

namespace {

std::string Field(const json &req, const char *key) {
  if (!req.contains(key) || !req[key].is_string()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing string field \"") + key + "\"");
  }
  return req[key].get<std::string>();
}

std::string OptionalField(const json &req, const char *key) {
  return req.contains(key) && req[key].is_string() ? req[key].get<std::string>() : "";
}

}  // namespace

ProtocolResponse HandleRequest(AnnotationService &service, const std::string &endpoint,
                               const json &req, const std::string &token) {
  ProtocolResponse resp;
  try {
    if (!req.is_object()) throw Error(ErrorCode::kInvalidArgument, "request must be an object");
    if (endpoint == "create-task") {
      service.Authorize(OptionalField(req, "principal"), token);
      if (!req.contains("items") || !req["items"].is_array()) {
        throw Error(ErrorCode::kInvalidArgument, "missing array field \"items\"");
      }
      std::vector<RelationInstance> items;
      for (const auto &ij : req["items"]) items.push_back(InstanceFromJson(ij));
      std::vector<std::string> annotators;
      if (req.contains("annotators") && req["annotators"].is_array()) {
        for (const auto &a : req["annotators"]) {
          if (!a.is_string()) throw Error(ErrorCode::kInvalidArgument, "annotator ids are strings");
          annotators.push_back(a.get<std::string>());
        }
      }
      uint64_t seed = req.contains("seed") && req["seed"].is_number_unsigned()
                          ? req["seed"].get<uint64_t>()
                          : 0;
      std::string id = service.CreateTask(items, annotators, OptionalField(req, "guidelines"), seed);
      resp.body = {{"task_id", id}, {"items", items.size()}};
    } else if (endpoint == "next-item") {
      std::string task = Field(req, "task");
      std::string annotator = Field(req, "annotator");
      service.Authorize(annotator, token);
      auto item = service.NextItem(task, annotator);
      resp.body = item ? ordered_json{{"done", false}, {"item", ItemViewToJson(*item)}}
                       : ordered_json{{"done", true}};
    } else if (endpoint == "submit-label") {
      std::string annotator = Field(req, "annotator_id");
      service.Authorize(annotator, token);
      service.SubmitLabel(Field(req, "task_id"), Field(req, "instance_id"), annotator,
                          Field(req, "label"));
      resp.body = {{"ok", true}};
    } else if (endpoint == "agreement") {
      service.Authorize(OptionalField(req, "principal"), token);
      AgreementSummary s = service.Agreement(Field(req, "task"));
      resp.body = {{"kappa", s.kappa},
                   {"items", s.items},
                   {"doubly_labelled", s.doubly_labelled},
                   {"agreed", s.agreed},
                   {"disagreed", s.disagreed}};
    } else if (endpoint == "disagreements") {
      service.Authorize(OptionalField(req, "principal"), token);
      ordered_json arr = ordered_json::array();
      for (const Disagreement &d : service.ListDisagreements(Field(req, "task"))) {
        ordered_json dj;
        dj["instance_id"] = d.instance_id;
        dj["marked_text"] = d.marked_text;
        ordered_json labels = ordered_json::object();
        for (const auto &[a, l] : d.labels) labels[a] = RelationName(l);
        dj["labels"] = std::move(labels);
        if (d.adjudication) {
          dj["adjudication"] = {{"final_label", RelationName(d.adjudication->final_label)},
                                {"resolved_by", d.adjudication->resolved_by}};
        } else {
          dj["adjudication"] = nullptr;
        }
        arr.push_back(std::move(dj));
      }
      resp.body = {{"disagreements", std::move(arr)}};
    } else if (endpoint == "adjudicate") {
      std::string resolver = Field(req, "resolver");
      service.Authorize(resolver, token);
      bool force = req.contains("force") && req["force"].is_boolean() && req["force"].get<bool>();
      service.Adjudicate(Field(req, "task_id"), Field(req, "instance_id"),
                         Field(req, "final_label"), resolver, force);
      resp.body = {{"ok", true}};
    } else if (endpoint == "export") {
      service.Authorize(OptionalField(req, "principal"), token);
      ordered_json arr = ordered_json::array();
      for (const GoldLabel &g : service.ExportGold(Field(req, "task"))) {
        arr.push_back({{"instance_id", g.instance_id},
                       {"label", RelationName(g.label)},
                       {"automatic_label", RelationName(g.automatic_label)},
                       {"source", g.source}});
      }
      resp.body = {{"gold", std::move(arr)}};
    } else {
      throw Error(ErrorCode::kNotFound, "unknown endpoint " + endpoint);
    }
  } catch (const Error &e) {
    resp.status = HttpStatusFor(e);
    resp.body = ErrorToJson(e);
  } catch (const json::exception &e) {
    resp.status = 400;
    resp.body = ErrorToJson(Error(ErrorCode::kInvalidArgument, e.what()));
  }
  return resp;
}

}  // namespace gdsre
