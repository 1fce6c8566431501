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

#ifndef GDSRE_LABELLER_H_
#define GDSRE_LABELLER_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdsre/ingest.h"
#include "gdsre/knowledge.h"
#include "gdsre/matcher.h"
#include "gdsre/relation.h"

namespace gdsre {

enum class Method { kNormal, kSkip };

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);

// Half-open byte span into the unmarked sentence.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  auto operator<=>(const Span &) const = default;
};

struct RelationInstance {
  std::string instance_id;
  PageId article_id = 0;
  int sentence_index = 0;
  std::string marked_text;
  Span e1;
  Span e2;
  Relation label = Relation::kOther;
  Method method = Method::kNormal;
  std::optional<std::string> matched_key;

  bool operator==(const RelationInstance &) const = default;
};

// Stable 16-hex-digit id over (article, sentence, spans, label, method).
std::string ComputeInstanceId(PageId article_id, int sentence_index, Span e1,
                              Span e2, Relation label, Method method);

// Wraps e1 in <e1>...</e1> and e2 in <e2>...</e2>. Throws on out-of-range or
// overlapping spans.
std::string InsertMarkers(std::string_view sentence_text, Span e1, Span e2);

// Removes the four entity tags.
std::string StripMarkers(std::string_view marked_text);

// Recovers the sentence and both spans from marked text. Throws unless each
// tag occurs exactly once and the pairs are well nested.
struct UnmarkedSentence {
  std::string text;
  Span e1;
  Span e2;
};
UnmarkedSentence ParseMarkedText(std::string_view marked_text);

// Canonical order: article, sentence, e1, e2, label.
void SortInstances(std::vector<RelationInstance> &instances);

// A (sentence, e1, e2) pair whose e2 matches no record field.
struct OtherCandidate {
  PageId article_id = 0;
  int sentence_index = 0;
  std::string sentence_text;
  Span e1;
  Span e2;
  Method method = Method::kNormal;
};

// Shared, read-only inputs for labelling many articles.
struct LabelResources {
  const LanguageConfig *language = nullptr;
  // Occupation and background gazetteers, compiled once.
  const GazetteerMatcher *global = nullptr;
};

struct LabelConfig {
  int other_cap = 2;
  uint64_t seed = 0;
  std::vector<Relation> field_priority{kFieldPriority.begin(), kFieldPriority.end()};
};

struct ArticleLabels {
  std::vector<RelationInstance> instances;
  std::vector<OtherCandidate> other_pool;
  bool main_entity_found = false;
  MatchStats match_stats;
};

// Labels one article under the first-occurrence rule. With Method::kSkip the
// first sentence is ignored.
ArticleLabels LabelArticle(const ArticleDoc &doc, const PersonRecord &record,
                           Method method, const LabelResources &resources,
                           const LabelConfig &config = {});

// Draws up to `cap` candidates per article without replacement. The draw for
// an article depends only on the seed, the article id and its pool.
std::vector<RelationInstance> GenerateOther(const std::vector<OtherCandidate> &pool,
                                            int cap, uint64_t seed);

struct LabelRunStats {
  std::size_t articles = 0;
  std::size_t main_entity_missing = 0;
  std::size_t unknown_person = 0;
  std::size_t unparseable_dates = 0;
};

// Labels all articles on `workers` threads, adds sampled "other" instances and
// returns the canonically sorted result. Output is independent of `workers`.
std::vector<RelationInstance> LabelArticles(
    const std::vector<ArticleDoc> &docs,
    const std::map<std::string, PersonRecord> &records, Method method,
    const LabelResources &resources, const LabelConfig &config, int workers,
    LabelRunStats *stats = nullptr);

}  // namespace gdsre

#endif  // GDSRE_LABELLER_H_
