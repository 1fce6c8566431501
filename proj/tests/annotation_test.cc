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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "gdsre/annotation-server.h"
#include "gdsre/corpus.h"
#include "gdsre/error.h"
#include "httplib.h"
#include "test-util.h"

namespace gdsre {
namespace {

using nlohmann::json;

std::vector<RelationInstance> Items(int n) {
  std::vector<RelationInstance> items;
  for (int i = 0; i < n; ++i) {
    RelationInstance r;
    r.article_id = 100 + i;
    r.e1 = {0, 3};
    r.e2 = {9, 13};
    r.label = i % 2 ? Relation::kBirthplace : Relation::kOther;
    r.marked_text = InsertMarkers("Ada lebt Wien.", r.e1, r.e2);
    r.instance_id = ComputeInstanceId(r.article_id, 0, r.e1, r.e2, r.label, Method::kNormal);
    items.push_back(r);
  }
  return items;
}

AnnotationOptions FixedClock() {
  AnnotationOptions o;
  o.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
  return o;
}

void LabelAll(AnnotationService &s, const std::string &task, const std::string &annotator,
              const std::function<std::string(std::size_t)> &label_for) {
  std::size_t n = 0;
  while (auto item = s.NextItem(task, annotator)) {
    s.SubmitLabel(task, item->instance_id, annotator, label_for(n++));
  }
}

TEST(AnnotationServiceTest, CreateTaskValidates) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  EXPECT_THROW(s.CreateTask(Items(2), {"a"}, "", 1), Error);
  EXPECT_THROW(s.CreateTask(Items(2), {"a", "a"}, "", 1), Error);
  EXPECT_THROW(s.CreateTask(Items(2), {"a", ""}, "", 1), Error);
  EXPECT_THROW(s.CreateTask({}, {"a", "b"}, "", 1), Error);
  auto dup = Items(2);
  dup[1].instance_id = dup[0].instance_id;
  EXPECT_THROW(s.CreateTask(dup, {"a", "b"}, "", 1), Error);
  EXPECT_EQ(s.CreateTask(Items(2), {"a", "b"}, "Leitfaden", 1), "task-1");
  EXPECT_EQ(s.CreateTask(Items(2), {"a", "b"}, "", 1), "task-2");
}

TEST(AnnotationServiceTest, NextItemIsBlindAndOrderedPerAnnotator) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  std::string task = s.CreateTask(Items(20), {"anna", "ben"}, "", 7);
  auto first_a = s.NextItem(task, "anna");
  ASSERT_TRUE(first_a);
  EXPECT_EQ(first_a->position, 0u);
  EXPECT_EQ(first_a->total, 20u);
  EXPECT_EQ(first_a->marked_text, "<e1>Ada</e1> lebt <e2>Wien</e2>.");
  json view = ItemViewToJson(*first_a);
  EXPECT_FALSE(view.contains("label"));
  EXPECT_FALSE(view.contains("automatic_label"));

  std::vector<std::string> order_a, order_b;
  LabelAll(s, task, "anna", [&](std::size_t) { return "other"; });
  while (auto v = s.NextItem(task, "ben")) {
    order_b.push_back(v->instance_id);
    s.SubmitLabel(task, v->instance_id, "ben", "other");
  }
  EXPECT_EQ(order_b.size(), 20u);
  EXPECT_FALSE(s.NextItem(task, "anna"));
  try {
    s.NextItem(task, "carl");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  try {
    s.NextItem("task-99", "anna");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(AnnotationServiceTest, SubmitLabelChecksLabelSetAndKeepsHistory) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  auto items = Items(3);
  std::string task = s.CreateTask(items, {"a", "b"}, "", 1);
  try {
    s.SubmitLabel(task, items[0].instance_id, "a", "spouse");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_EQ(e.offending_ids(), std::vector<std::string>{items[0].instance_id});
  }
  EXPECT_THROW(s.SubmitLabel(task, "nope", "a", "other"), Error);
  s.SubmitLabel(task, items[0].instance_id, "a", "other");
  s.SubmitLabel(task, items[0].instance_id, "a", "parent");
  EXPECT_EQ(s.HistoryCount(task, items[0].instance_id, "a"), 2u);
  s.SubmitLabel(task, items[0].instance_id, "b", "parent");
  AgreementSummary agreement = s.Agreement(task);
  EXPECT_EQ(agreement.doubly_labelled, 1u);
  EXPECT_EQ(agreement.agreed, 1u);
}

TEST(AnnotationServiceTest, AgreementNeedsDoublyLabelledItems) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  std::string task = s.CreateTask(Items(4), {"a", "b"}, "", 1);
  try {
    s.Agreement(task);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kFailedPrecondition);
    EXPECT_NE(std::string(e.what()).find("insufficient data"), std::string::npos);
  }
}

TEST(AnnotationServiceTest, AdjudicationAndExport) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  auto items = Items(4);
  std::string task = s.CreateTask(items, {"a", "b"}, "", 3);
  for (const auto &i : items) s.SubmitLabel(task, i.instance_id, "a", "birthplace");
  s.SubmitLabel(task, items[0].instance_id, "b", "birthplace");
  s.SubmitLabel(task, items[1].instance_id, "b", "deathplace");
  s.SubmitLabel(task, items[2].instance_id, "b", "other");

  try {
    s.ExportGold(task);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kFailedPrecondition);
    EXPECT_EQ(e.offending_ids().size(), 3u);
  }
  auto disagreements = s.ListDisagreements(task);
  ASSERT_EQ(disagreements.size(), 2u);
  EXPECT_EQ(disagreements[0].labels.at("b"), Relation::kDeathplace);

  try {
    s.Adjudicate(task, items[0].instance_id, "other", "chef");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kConflict);
  }
  s.Adjudicate(task, items[1].instance_id, "deathplace", "chef");
  s.Adjudicate(task, items[2].instance_id, "birthplace", "chef");
  s.SubmitLabel(task, items[3].instance_id, "b", "birthplace");
  s.Adjudicate(task, items[3].instance_id, "other", "chef", true);

  auto gold = s.ExportGold(task);
  ASSERT_EQ(gold.size(), 4u);
  EXPECT_EQ(gold[0].source, "agreement");
  EXPECT_EQ(gold[1].label, Relation::kDeathplace);
  EXPECT_EQ(gold[1].source, "adjudication");
  EXPECT_EQ(gold[1].automatic_label, items[1].label);
  EXPECT_EQ(gold[3].label, Relation::kOther);
  AgreementSummary a = s.Agreement(task);
  EXPECT_EQ(a.doubly_labelled, 4u);
  EXPECT_EQ(a.disagreed, 2u);
}

TEST(AnnotationServiceTest, ReplayRestoresStateExactly) {
  testing::TempDir dir;
  std::string state;
  auto items = Items(30);
  {
    AnnotationOptions o = FixedClock();
    o.snapshot_interval = 7;
    AnnotationService s(dir.path().string(), o);
    std::string task = s.CreateTask(items, {"a", "b"}, "g", 5);
    LabelAll(s, task, "a", [](std::size_t n) { return n % 3 ? "other" : "parent"; });
    LabelAll(s, task, "b", [](std::size_t n) { return n % 4 ? "other" : "child"; });
    for (const auto &d : s.ListDisagreements(task)) s.Adjudicate(task, d.instance_id, "other", "c");
    s.SubmitLabel(task, items[0].instance_id, "a", "sibling");
    state = s.StateJson().dump();
  }
  EXPECT_TRUE(std::filesystem::exists(dir.File("snapshot.json")));
  {
    AnnotationService replayed(dir.path().string(), FixedClock());
    EXPECT_EQ(replayed.StateJson().dump(), state);
  }
  // Replay from the log alone gives the same state.
  std::filesystem::remove(dir.File("snapshot.json"));
  AnnotationService from_log(dir.path().string(), FixedClock());
  EXPECT_EQ(from_log.StateJson().dump(), state);
  EXPECT_EQ(from_log.TaskIds(), std::vector<std::string>{"task-1"});
}

TEST(AnnotationServiceTest, TornFinalLogLineIsDiscarded) {
  testing::TempDir dir;
  auto items = Items(3);
  std::string state;
  {
    AnnotationService s(dir.path().string(), FixedClock());
    std::string task = s.CreateTask(items, {"a", "b"}, "", 1);
    s.SubmitLabel(task, items[0].instance_id, "a", "other");
    state = s.StateJson().dump();
  }
  {
    std::ofstream log(dir.File("log.jsonl"), std::ios::app | std::ios::binary);
    log << R"({"seq":3,"op":"submit_la)";
  }
  {
    AnnotationService s(dir.path().string(), FixedClock());
    EXPECT_EQ(s.StateJson().dump(), state);
    s.SubmitLabel("task-1", items[1].instance_id, "a", "parent");
    state = s.StateJson().dump();
  }
  AnnotationService again(dir.path().string(), FixedClock());
  EXPECT_EQ(again.StateJson().dump(), state);

  // Damage before the final line is an error.
  std::string log = testing::ReadFile(dir.File("log.jsonl"));
  testing::WriteFile(dir.File("log.jsonl"), "garbage\n" + log);
  EXPECT_THROW(AnnotationService(dir.path().string(), FixedClock()), Error);
}

TEST(AnnotationServiceTest, ConcurrentSubmissionsAreAllRecorded) {
  testing::TempDir dir;
  auto items = Items(200);
  {
    AnnotationService s(dir.path().string(), FixedClock());
    std::string task = s.CreateTask(items, {"a", "b"}, "", 1);
    std::vector<std::thread> threads;
    for (const std::string annotator : {"a", "b"}) {
      threads.emplace_back([&, annotator] {
        for (const auto &i : items) s.SubmitLabel(task, i.instance_id, annotator, "other");
      });
    }
    for (auto &t : threads) t.join();
    EXPECT_EQ(s.Agreement(task).doubly_labelled, 200u);
  }
  AnnotationService replayed(dir.path().string(), FixedClock());
  EXPECT_EQ(replayed.Agreement("task-1").agreed, 200u);
}

TEST(ProtocolTest, EndpointsAndErrors) {
  testing::TempDir dir;
  AnnotationOptions o = FixedClock();
  o.tokens = {{"a", "ta"}, {"b", "tb"}, {"lead", "tl"}};
  AnnotationService s(dir.path().string(), o);
  json items = json::array();
  for (const auto &i : Items(2)) items.push_back(json::parse(InstanceToJson(i).dump()));

  auto r = HandleRequest(s, "create-task",
                         {{"items", items}, {"annotators", {"a", "b"}}, {"principal", "lead"}}, "bad");
  EXPECT_EQ(r.status, 401);
  EXPECT_EQ(r.body["code"], "unauthorized");
  r = HandleRequest(s, "create-task",
                    {{"items", items}, {"annotators", {"a", "b"}}, {"principal", "lead"}, {"seed", 3}},
                    "tl");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  std::string task = r.body["task_id"];

  r = HandleRequest(s, "next-item", {{"task", task}, {"annotator", "a"}}, "ta");
  ASSERT_EQ(r.status, 200);
  EXPECT_FALSE(r.body["done"].get<bool>());
  std::string iid = r.body["item"]["instance_id"];

  r = HandleRequest(s, "submit-label",
                    {{"task_id", task}, {"instance_id", iid}, {"annotator_id", "a"}, {"label", "nope"}},
                    "ta");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["offending_ids"][0], iid);
  r = HandleRequest(s, "submit-label",
                    {{"task_id", task}, {"instance_id", iid}, {"annotator_id", "a"}, {"label", "other"}},
                    "tb");
  EXPECT_EQ(r.status, 401);

  r = HandleRequest(s, "agreement", {{"task", task}, {"principal", "lead"}}, "tl");
  EXPECT_EQ(r.status, 412);
  r = HandleRequest(s, "export", {{"task", task}, {"principal", "lead"}}, "tl");
  EXPECT_EQ(r.status, 412);
  EXPECT_EQ(r.body["offending_ids"].size(), 2u);
  r = HandleRequest(s, "adjudicate",
                    {{"task_id", task}, {"instance_id", iid}, {"final_label", "other"}, {"resolver", "lead"}},
                    "tl");
  EXPECT_EQ(r.status, 409);
  r = HandleRequest(s, "next-item", {{"task", "task-9"}, {"annotator", "a"}}, "ta");
  EXPECT_EQ(r.status, 404);
  r = HandleRequest(s, "next-item", {{"annotator", "a"}}, "ta");
  EXPECT_EQ(r.status, 400);
  r = HandleRequest(s, "teleport", json::object(), "");
  EXPECT_EQ(r.status, 404);
}

TEST(ServerTest, HttpRoundTrip) {
  testing::TempDir dir;
  AnnotationService s(dir.path().string(), FixedClock());
  AnnotationServer server(s);
  int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.Listen(); });

  httplib::Client client("127.0.0.1", port);
  json items = json::array();
  for (const auto &i : Items(2)) items.push_back(json::parse(InstanceToJson(i).dump()));
  auto res = client.Post("/create-task", json{{"items", items}, {"annotators", {"a", "b"}}}.dump(),
                         "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  std::string task = json::parse(res->body)["task_id"];

  for (const char *annotator : {"a", "b"}) {
    while (true) {
      auto next = client.Get("/next-item?task=" + task + "&annotator=" + annotator);
      ASSERT_TRUE(next);
      json body = json::parse(next->body);
      if (body["done"].get<bool>()) break;
      auto sub = client.Post("/submit-label",
                             json{{"task_id", task},
                                  {"instance_id", body["item"]["instance_id"]},
                                  {"annotator_id", annotator},
                                  {"label", "other"}}
                                 .dump(),
                             "application/json");
      ASSERT_EQ(sub->status, 200);
    }
  }
  auto agreement = client.Get("/agreement?task=" + task);
  ASSERT_TRUE(agreement);
  EXPECT_EQ(json::parse(agreement->body)["kappa"], 1.0);
  auto exported = client.Post("/export", json{{"task", task}}.dump(), "application/json");
  EXPECT_EQ(json::parse(exported->body)["gold"].size(), 2u);
  auto bad = client.Post("/submit-label", "{not json", "application/json");
  EXPECT_EQ(bad->status, 400);
  auto options = client.Options("/next-item");
  ASSERT_TRUE(options);
  EXPECT_EQ(options->status, 204);
  EXPECT_EQ(options->get_header_value("Access-Control-Allow-Origin"), "*");

  server.Stop();
  listener.join();
}

}  // namespace
}  // namespace gdsre
