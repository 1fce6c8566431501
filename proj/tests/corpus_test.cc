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

#include "gdsre/corpus.h"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/random.h"
#include "test-util.h"

namespace gdsre {
namespace {

RelationInstance MakeInstance(PageId article, int sentence, Relation label, Method method,
                              const std::string &text = "Anna lebte in Wien.") {
  RelationInstance i;
  i.article_id = article;
  i.sentence_index = sentence;
  i.e1 = {0, 4};
  i.e2 = {14, 18};
  i.label = label;
  i.method = method;
  i.marked_text = InsertMarkers(text, i.e1, i.e2);
  if (label != Relation::kOther) i.matched_key = "Wien";
  i.instance_id = ComputeInstanceId(article, sentence, i.e1, i.e2, label, method);
  return i;
}

Corpus MakeCorpus(Method method, int articles, uint64_t seed) {
  Corpus c;
  c.meta = {"de", method, "", "abc", seed};
  Rng rng(seed);
  for (int a = 0; a < articles; ++a) {
    int sentences = 1 + static_cast<int>(rng.Below(6));
    for (int s = 0; s < sentences; ++s) {
      c.instances.push_back(MakeInstance(a + 1, s, kAllRelations[rng.Below(kNumRelations)], method));
    }
  }
  return c;
}

TEST(CorpusIoTest, LinesRoundTrip) {
  Corpus c = MakeCorpus(Method::kSkip, 20, 1);
  c.meta.build_timestamp = "2026-01-01T00:00:00Z";
  c.instances[0].marked_text = InsertMarkers("Anna \"zitiert\"\tin\nWien.", {0, 4}, {19, 23});
  c.instances[0].e2 = {19, 23};
  std::stringstream ss;
  WriteCorpus(c, ss, CorpusFormat::kLines);
  std::string first_line = ss.str().substr(0, ss.str().find('\n'));
  EXPECT_EQ(first_line,
            R"({"meta":{"kind":"corpus","language":"de","method":"skip",)"
            R"("build_timestamp":"2026-01-01T00:00:00Z","config_digest":"abc","seed":1}})");
  EXPECT_EQ(ReadCorpus(ss, CorpusFormat::kLines), c);
}

TEST(CorpusIoTest, TsvRoundTripWithEscapes) {
  Corpus c = MakeCorpus(Method::kNormal, 10, 2);
  c.instances[1].marked_text = InsertMarkers("Anna\\ lebte\tin\r\nWien.", {0, 4}, {16, 20});
  c.instances[1].e2 = {16, 20};
  std::stringstream ss;
  WriteCorpus(c, ss, CorpusFormat::kTsv);
  std::string text = ss.str();
  EXPECT_EQ(text.rfind("# meta {", 0), 0u);
  EXPECT_NE(text.find("\ninstance_id\tlabel\tmarked_text\tarticle_id\tsentence_index\tmethod\tmatched_key\n"),
            std::string::npos);
  EXPECT_NE(text.find("Anna</e1>\\\\ lebte\\tin\\r\\n<e2>Wien</e2>"), std::string::npos);
  EXPECT_EQ(ReadCorpus(ss, CorpusFormat::kTsv), c);
}

TEST(CorpusIoTest, FormatFromPath) {
  EXPECT_EQ(FormatForPath("x/normal.tsv"), CorpusFormat::kTsv);
  EXPECT_EQ(FormatForPath("x/normal.jsonl"), CorpusFormat::kLines);
  testing::TempDir dir;
  Corpus c = MakeCorpus(Method::kNormal, 3, 3);
  WriteCorpus(c, dir.File("c.tsv"));
  WriteCorpus(c, dir.File("c.jsonl"));
  EXPECT_EQ(ReadCorpus(dir.File("c.tsv")), c);
  EXPECT_EQ(ReadCorpus(dir.File("c.jsonl")), c);
}

TEST(CorpusIoTest, RejectsMalformedInput) {
  auto read = [](const std::string &s) {
    std::istringstream in(s);
    return ReadCorpus(in, CorpusFormat::kLines);
  };
  EXPECT_THROW(read(""), Error);
  EXPECT_THROW(read("{\"instance_id\":\"x\"}\n"), Error);
  std::string meta = R"({"meta":{"kind":"corpus","language":"de","method":"normal"}})" "\n";
  EXPECT_THROW(read(meta + "[1,2]\n"), Error);
  EXPECT_THROW(read(meta + R"({"instance_id":"a","article_id":1,"sentence_index":0,"label":"spouse",)"
                           R"("method":"normal","marked_text":"<e1>a</e1> <e2>b</e2>"})" "\n"),
               Error);
  // Spans are recovered from the marked text when absent.
  Corpus c = read(meta + R"({"instance_id":"a","article_id":1,"sentence_index":0,"label":"other",)"
                         R"("method":"normal","marked_text":"<e1>a</e1> <e2>b</e2>"})" "\n");
  EXPECT_EQ(c.instances[0].e2, (Span{2, 3}));
}

TEST(CorpusIoTest, ValidationCatchesDuplicatesAndMethodMismatch) {
  Corpus c = MakeCorpus(Method::kNormal, 3, 4);
  c.instances.push_back(c.instances[0]);
  try {
    ValidateCorpus(c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.offending_ids(), std::vector<std::string>{c.instances[0].instance_id});
  }
  Corpus d = MakeCorpus(Method::kNormal, 3, 4);
  d.instances[0].method = Method::kSkip;
  EXPECT_THROW(ValidateCorpus(d), Error);
}

TEST(StatsTest, CountsAndRenders) {
  Corpus normal, skip;
  for (int i = 0; i < 1234; ++i) normal.instances.push_back(MakeInstance(i, 0, Relation::kBirthdate, Method::kNormal));
  normal.instances.push_back(MakeInstance(1, 1, Relation::kChild, Method::kNormal));
  skip.instances.push_back(MakeInstance(1, 1, Relation::kOther, Method::kSkip));
  StatsTable t = ComputeStats(normal);
  EXPECT_EQ(t.count(Relation::kBirthdate), 1234);
  EXPECT_EQ(t.total, 1235);
  std::string rendered = RenderStats({{"de normal", t}, {"de skip", ComputeStats(skip)}});
  EXPECT_EQ(rendered,
            "Relation    de normal  de skip\n"
            "----------  ---------  -------\n"
            "birthdate       1,234        0\n"
            "birthplace          0        0\n"
            "child               1        0\n"
            "deathdate           0        0\n"
            "deathplace          0        0\n"
            "educated            0        0\n"
            "occupation          0        0\n"
            "other               0        1\n"
            "parent              0        0\n"
            "sibling             0        0\n"
            "----------  ---------  -------\n"
            "Total           1,235        1\n");
  auto j = StatsToJson({{"de normal", t}});
  EXPECT_EQ(j["de normal"]["birthdate"], 1234);
  EXPECT_EQ(j["de normal"]["total"], 1235);
}

TEST(GoldSampleTest, DrawsExactCellsWithoutDuplicates) {
  Corpus normal = MakeCorpus(Method::kNormal, 600, 5);
  Corpus skip = MakeCorpus(Method::kSkip, 600, 6);
  GoldSample sample = SampleGold(normal, skip, 100, 42);
  EXPECT_EQ(sample.items.size(), 2000u);
  EXPECT_TRUE(sample.shortfalls.empty());
  std::map<std::pair<Relation, Method>, int> cells;
  std::set<std::string> ids;
  for (const auto &i : sample.items) {
    cells[{i.label, i.method}]++;
    EXPECT_TRUE(ids.insert(i.instance_id).second);
  }
  for (const auto &[cell, count] : cells) EXPECT_EQ(count, 100);
  EXPECT_EQ(cells.size(), 20u);

  GoldSample again = SampleGold(normal, skip, 100, 42);
  EXPECT_EQ(again.items, sample.items);
  GoldSample other_seed = SampleGold(normal, skip, 100, 43);
  EXPECT_NE(other_seed.items, sample.items);

  // Input order does not matter.
  Corpus shuffled = normal;
  Rng rng(1);
  rng.Shuffle(shuffled.instances);
  EXPECT_EQ(SampleGold(shuffled, skip, 100, 42).items, sample.items);
}

TEST(GoldSampleTest, ReportsShortfalls) {
  Corpus normal, skip;
  normal.meta.method = Method::kNormal;
  skip.meta.method = Method::kSkip;
  for (int i = 0; i < 3; ++i) normal.instances.push_back(MakeInstance(i, 0, Relation::kParent, Method::kNormal));
  GoldSample sample = SampleGold(normal, skip, 5, 1);
  EXPECT_EQ(sample.items.size(), 3u);
  ASSERT_EQ(sample.shortfalls.size(), 20u);
  EXPECT_EQ(sample.shortfalls[8], (Shortfall{Relation::kParent, Method::kNormal, 5, 3}));
  EXPECT_THROW(SampleGold(normal, skip, -1, 1), Error);
}

TEST(GoldSampleTest, FileRoundTrip) {
  testing::TempDir dir;
  GoldSample sample = SampleGold(MakeCorpus(Method::kNormal, 30, 7), MakeCorpus(Method::kSkip, 30, 8), 2, 3);
  WriteGoldSample(sample, dir.File("gold.jsonl"));
  GoldSample back = ReadGoldSample(dir.File("gold.jsonl"));
  EXPECT_EQ(back.items, sample.items);
  EXPECT_EQ(back.shortfalls, sample.shortfalls);
  EXPECT_EQ(back.n_per_relation, 2);
  EXPECT_EQ(back.seed, 3u);
}

TEST(SplitCorpusTest, KeepsArticlesTogetherAndHitsQuotas) {
  Corpus c = MakeCorpus(Method::kNormal, 100, 9);
  CorpusSplit split = SplitCorpus(c, {0.8, 0.1, 0.1}, 5);
  std::map<PageId, int> where;
  int idx = 0;
  std::array<std::set<PageId>, 3> articles;
  for (const Corpus *part : {&split.train, &split.dev, &split.test}) {
    for (const auto &i : part->instances) {
      auto [it, inserted] = where.emplace(i.article_id, idx);
      EXPECT_EQ(it->second, idx);
      articles[idx].insert(i.article_id);
    }
    EXPECT_EQ(part->meta, c.meta);
    ++idx;
  }
  EXPECT_EQ(articles[0].size(), 80u);
  EXPECT_EQ(articles[1].size(), 10u);
  EXPECT_EQ(articles[2].size(), 10u);
  EXPECT_EQ(split.train.instances.size() + split.dev.instances.size() + split.test.instances.size(),
            c.instances.size());
  CorpusSplit again = SplitCorpus(c, {0.8, 0.1, 0.1}, 5);
  EXPECT_EQ(again.dev, split.dev);
}

TEST(SplitCorpusTest, RejectsBadRatios) {
  Corpus c = MakeCorpus(Method::kNormal, 5, 1);
  EXPECT_THROW(SplitCorpus(c, {0.5, 0.5, 0.5}, 1), Error);
  EXPECT_THROW(SplitCorpus(c, {1.5, -0.5, 0}, 1), Error);
  EXPECT_THROW(SplitCorpus(c, {std::nan(""), 0.5, 0.5}, 1), Error);
  CorpusSplit all_train = SplitCorpus(c, {1, 0, 0}, 1);
  EXPECT_EQ(all_train.train.instances.size(), c.instances.size());
}

}  // namespace
}  // namespace gdsre
