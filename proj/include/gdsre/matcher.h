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

#ifndef GDSRE_MATCHER_H_
#define GDSRE_MATCHER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdsre/ingest.h"
#include "gdsre/knowledge.h"

namespace gdsre {

// A typed span of a sentence. Offsets are half-open byte offsets into the
// sentence text and surface == text[start, end).
struct EntityMention {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  EntityKind kind = EntityKind::kMisc;
  // Record fields the surface is listed under. A span found in several
  // gazetteers of the same kind carries all their references.
  std::vector<GazetteerRef> refs;

  bool operator==(const EntityMention &) const = default;

  // First non-empty field key, if any.
  std::optional<std::string> field_key() const;
};

// ---------------------------------------------------------------------------
// Language configuration.

struct DatePatterns {
  bool day_month_year = true;   // "1. Dezember 1455", "1 Dezember 1455"
  bool month_year = true;       // "Dezember 1455"
  bool marked_year = true;      // "*1455", "† 1455"
  bool month_day_year = false;  // "December 1, 1455"
};

struct LanguageConfig {
  std::string language;
  // months[i] lists every accepted name of month i+1.
  std::vector<std::vector<std::string>> months;
  DatePatterns patterns;
  std::vector<std::string> year_markers{"*", "†"};
  AliasPolicy alias_policy;
};

// JSON: {"language", "months": [[...], ...12], "date_patterns": {...},
// "year_markers": [...], "alias_policy": {...}}. Missing keys keep defaults.
LanguageConfig ParseLanguageConfig(std::string_view json_text);
LanguageConfig LoadLanguageConfig(const std::string &path);

const LanguageConfig &GermanLanguageConfig();
const LanguageConfig &EnglishLanguageConfig();

// ---------------------------------------------------------------------------
// Dates.

// Leftmost-longest, non-overlapping date mentions.
std::vector<EntityMention> MatchDates(std::string_view text,
                                      const LanguageConfig &config);

// Parses a whole mention surface; nullopt if it is not a complete date.
std::optional<PartialDate> ParseDateMention(std::string_view surface,
                                            const LanguageConfig &config);

struct MatchStats {
  std::size_t unparseable_dates = 0;
};

// Years must agree and every component present on both sides must agree.
bool DateEquals(const EntityMention &mention, const PartialDate &target,
                const LanguageConfig &config, MatchStats *stats = nullptr);

// ---------------------------------------------------------------------------
// Gazetteers.

// Raw match before overlap resolution. Offsets are byte offsets.
struct Candidate {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t length = 0;  // in folded code points
  EntityKind kind = EntityKind::kMisc;
  std::vector<GazetteerRef> refs;
};

// Resolves overlaps: identical spans of one kind merge their references, then
// longest wins, then leftmost, then kind priority
// (PERSON > LOCATION > ORG > OCCUPATION > MISC > DATE). Output in text order.
std::vector<EntityMention> ResolveCandidates(std::string_view text,
                                             std::vector<Candidate> candidates);

// Trie over normalized gazetteer surfaces. Immutable after construction and
// safe for concurrent use.
class GazetteerMatcher {
 public:
  GazetteerMatcher() = default;
  explicit GazetteerMatcher(const std::vector<Gazetteer> &gazetteers);

  void Add(const Gazetteer &gazetteer);

  // Every occurrence respecting word boundaries, unresolved.
  std::vector<Candidate> FindCandidates(std::string_view text) const;

  std::vector<EntityMention> Match(std::string_view text) const {
    return ResolveCandidates(text, FindCandidates(text));
  }

  bool empty() const { return nodes_.size() <= 1; }

 private:
  struct Payload {
    EntityKind kind;
    std::vector<GazetteerRef> refs;
  };
  struct Node {
    std::map<char32_t, int> next;
    std::vector<Payload> payloads;
  };
  std::vector<Node> nodes_ = std::vector<Node>(1);
};

// Case-insensitive gazetteer matching with Unicode word boundaries.
std::vector<EntityMention> MatchGazetteers(std::string_view text,
                                           const std::vector<Gazetteer> &gazetteers);

// ---------------------------------------------------------------------------
// Main entity.

struct MainEntityResult {
  std::vector<std::optional<EntityMention>> per_sentence;
  bool found = false;
};

// For each sentence, the leftmost alias occurrence (longest at equal start).
MainEntityResult DetectMainEntity(const ArticleDoc &doc, const PersonRecord &record,
                                  const AliasPolicy &policy);

}  // namespace gdsre

#endif  // GDSRE_MATCHER_H_
