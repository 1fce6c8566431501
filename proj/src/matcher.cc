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

#include "gdsre/matcher.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/text.h"
#include "json.hpp"

namespace gdsre {

std::optional<std::string> EntityMention::field_key() const {
  for (const auto &r : refs) {
    if (!r.field_key.empty()) return r.field_key;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Language configuration.

const LanguageConfig &GermanLanguageConfig() {
  static const LanguageConfig kConfig = [] {
    LanguageConfig c;
    c.language = "de";
    c.months = {{"Januar", "Jänner"}, {"Februar", "Feber"}, {"März"},
                {"April"},            {"Mai"},              {"Juni"},
                {"Juli"},             {"August"},           {"September"},
                {"Oktober"},          {"November"},         {"Dezember"}};
    return c;
  }();
  return kConfig;
}

const LanguageConfig &EnglishLanguageConfig() {
  static const LanguageConfig kConfig = [] {
    LanguageConfig c;
    c.language = "en";
    c.months = {{"January"}, {"February"}, {"March"},     {"April"},
                {"May"},     {"June"},     {"July"},      {"August"},
                {"September"}, {"October"}, {"November"}, {"December"}};
    c.patterns.month_day_year = true;
    return c;
  }();
  return kConfig;
}

LanguageConfig ParseLanguageConfig(std::string_view json_text) {
  using nlohmann::json;
  LanguageConfig c;
  try {
    json j = json::parse(json_text);
    c.language = j.value("language", "");
    if (c.language == "de") c = GermanLanguageConfig();
    if (c.language == "en") c = EnglishLanguageConfig();
    if (j.contains("months")) {
      c.months = j["months"].get<std::vector<std::vector<std::string>>>();
    }
    if (j.contains("date_patterns")) {
      const json &p = j["date_patterns"];
      c.patterns.day_month_year = p.value("day_month_year", c.patterns.day_month_year);
      c.patterns.month_year = p.value("month_year", c.patterns.month_year);
      c.patterns.marked_year = p.value("marked_year", c.patterns.marked_year);
      c.patterns.month_day_year = p.value("month_day_year", c.patterns.month_day_year);
    }
    if (j.contains("year_markers")) {
      c.year_markers = j["year_markers"].get<std::vector<std::string>>();
    }
    if (j.contains("alias_policy")) {
      const json &a = j["alias_policy"];
      c.alias_policy.canonical = a.value("canonical", c.alias_policy.canonical);
      c.alias_policy.surname = a.value("surname", c.alias_policy.surname);
      c.alias_policy.given_surname = a.value("given_surname", c.alias_policy.given_surname);
      c.alias_policy.relative_surname =
          a.value("relative_surname", c.alias_policy.relative_surname);
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kDataError, std::string("language config: ") + e.what());
  }
  if (c.months.size() != 12) {
    throw Error(ErrorCode::kDataError, "language config must list 12 months");
  }
  return c;
}

LanguageConfig LoadLanguageConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read language config " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseLanguageConfig(buffer.str());
}

// ---------------------------------------------------------------------------
// Dates.

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Reads between min and max ASCII digits at `pos`, not followed by another
// digit.
bool ReadNumber(std::string_view s, std::size_t pos, int min_digits,
                int max_digits, std::size_t *end, int *value) {
  std::size_t i = pos;
  int v = 0;
  while (i < s.size() && IsDigit(s[i]) && static_cast<int>(i - pos) < max_digits) {
    v = v * 10 + (s[i] - '0');
    ++i;
  }
  int n = static_cast<int>(i - pos);
  if (n < min_digits || (i < s.size() && IsDigit(s[i]))) return false;
  *end = i;
  *value = v;
  return true;
}

bool ReadSpaces(std::string_view s, std::size_t pos, std::size_t *end) {
  std::size_t i = pos;
  while (i < s.size() && s[i] == ' ') ++i;
  if (i == pos) return false;
  *end = i;
  return true;
}

// Longest month name at `pos`, returning the month number.
bool ReadMonth(std::string_view s, std::size_t pos, const LanguageConfig &config,
               std::size_t *end, int *month) {
  std::size_t best = 0;
  for (std::size_t m = 0; m < config.months.size(); ++m) {
    for (const auto &name : config.months[m]) {
      if (name.size() > best && s.substr(pos, name.size()) == name) {
        best = name.size();
        *month = static_cast<int>(m) + 1;
      }
    }
  }
  if (best == 0) return false;
  // The name must end at a word boundary.
  if (IsAlnum(CodePointAt(s, pos + best))) return false;
  *end = pos + best;
  return true;
}

bool RightBoundary(std::string_view s, std::size_t end) {
  return !IsAlnum(CodePointAt(s, end));
}

struct DateMatch {
  std::size_t end = 0;
  PartialDate date;
};

// Longest date starting exactly at `pos`.
std::optional<DateMatch> MatchDateAt(std::string_view s, std::size_t pos,
                                     const LanguageConfig &config) {
  if (IsAlnum(CodePointBefore(s, pos))) return std::nullopt;
  std::optional<DateMatch> best;
  auto offer = [&](std::size_t end, PartialDate d) {
    if (!RightBoundary(s, end)) return;
    if (!IsValidPartialDate(d.year, d.month, d.day)) return;
    if (!best || end > best->end) best = DateMatch{end, d};
  };

  const auto &p = config.patterns;
  std::size_t i, j, k;
  int day, month, year;

  if (p.day_month_year && ReadNumber(s, pos, 1, 2, &i, &day) && day >= 1 && day <= 31) {
    if (i < s.size() && s[i] == '.') ++i;
    if (ReadSpaces(s, i, &j) && ReadMonth(s, j, config, &k, &month) &&
        ReadSpaces(s, k, &j) && ReadNumber(s, j, 3, 4, &k, &year)) {
      offer(k, PartialDate{year, month, day});
    }
  }
  if (ReadMonth(s, pos, config, &i, &month)) {
    if (p.month_year && ReadSpaces(s, i, &j) && ReadNumber(s, j, 3, 4, &k, &year)) {
      offer(k, PartialDate{year, month, std::nullopt});
    }
    if (p.month_day_year && ReadSpaces(s, i, &j) &&
        ReadNumber(s, j, 1, 2, &k, &day) && day >= 1) {
      std::size_t after_day = k;
      if (after_day < s.size() && s[after_day] == ',') ++after_day;
      std::size_t y;
      if (ReadSpaces(s, after_day, &y) && ReadNumber(s, y, 3, 4, &k, &year)) {
        offer(k, PartialDate{year, month, day});
      }
    }
  }
  if (p.marked_year && ReadNumber(s, pos, 3, 4, &i, &year)) {
    std::size_t before = pos;
    while (before > 0 && s[before - 1] == ' ') --before;
    for (const auto &marker : config.year_markers) {
      if (before >= marker.size() &&
          s.substr(before - marker.size(), marker.size()) == marker) {
        offer(i, PartialDate{year, std::nullopt, std::nullopt});
        break;
      }
    }
  }
  return best;
}

bool IsCodePointStart(std::string_view s, std::size_t pos) {
  return pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

}  // namespace

std::vector<EntityMention> MatchDates(std::string_view text,
                                      const LanguageConfig &config) {
  std::vector<EntityMention> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (IsCodePointStart(text, pos)) {
      if (auto m = MatchDateAt(text, pos, config)) {
        EntityMention mention;
        mention.start = pos;
        mention.end = m->end;
        mention.surface = std::string(text.substr(pos, m->end - pos));
        mention.kind = EntityKind::kDate;
        out.push_back(std::move(mention));
        pos = m->end;
        continue;
      }
    }
    ++pos;
  }
  return out;
}

std::optional<PartialDate> ParseDateMention(std::string_view surface,
                                            const LanguageConfig &config) {
  LanguageConfig relaxed = config;
  // A bare year surface has lost its marker context.
  relaxed.patterns.marked_year = false;
  auto m = MatchDateAt(surface, 0, relaxed);
  if (m && m->end == surface.size()) return m->date;
  std::size_t end;
  int year;
  if (ReadNumber(surface, 0, 3, 4, &end, &year) && end == surface.size()) {
    return PartialDate{year, std::nullopt, std::nullopt};
  }
  return std::nullopt;
}

bool DateEquals(const EntityMention &mention, const PartialDate &target,
                const LanguageConfig &config, MatchStats *stats) {
  auto parsed = ParseDateMention(mention.surface, config);
  if (!parsed) {
    if (stats) stats->unparseable_dates++;
    return false;
  }
  if (parsed->year != target.year) return false;
  if (parsed->month && target.month && *parsed->month != *target.month) return false;
  if (parsed->day && target.day && *parsed->day != *target.day) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Gazetteers.

std::vector<EntityMention> ResolveCandidates(std::string_view text,
                                             std::vector<Candidate> candidates) {
  // Merge identical spans of the same kind.
  std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return KindPriority(a.kind) < KindPriority(b.kind);
  });
  std::vector<Candidate> merged;
  for (Candidate &c : candidates) {
    if (!merged.empty() && merged.back().start == c.start && merged.back().end == c.end &&
        merged.back().kind == c.kind) {
      for (auto &r : c.refs) {
        auto &refs = merged.back().refs;
        if (std::find(refs.begin(), refs.end(), r) == refs.end()) refs.push_back(std::move(r));
      }
      continue;
    }
    merged.push_back(std::move(c));
  }

  std::stable_sort(merged.begin(), merged.end(), [](const Candidate &a, const Candidate &b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.start != b.start) return a.start < b.start;
    return KindPriority(a.kind) < KindPriority(b.kind);
  });
  std::vector<const Candidate *> accepted;
  for (const Candidate &c : merged) {
    bool overlaps = false;
    for (const Candidate *a : accepted) {
      if (c.start < a->end && a->start < c.end) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) accepted.push_back(&c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Candidate *a, const Candidate *b) { return a->start < b->start; });

  std::vector<EntityMention> out;
  out.reserve(accepted.size());
  for (const Candidate *c : accepted) {
    EntityMention m;
    m.start = c->start;
    m.end = c->end;
    m.surface = std::string(text.substr(c->start, c->end - c->start));
    m.kind = c->kind;
    m.refs = c->refs;
    out.push_back(std::move(m));
  }
  return out;
}

GazetteerMatcher::GazetteerMatcher(const std::vector<Gazetteer> &gazetteers) {
  for (const Gazetteer &g : gazetteers) Add(g);
}

void GazetteerMatcher::Add(const Gazetteer &gazetteer) {
  for (const auto &[surface, refs] : gazetteer.entries) {
    int node = 0;
    for (char32_t c : DecodeUtf8(surface)) {
      auto it = nodes_[node].next.find(c);
      if (it == nodes_[node].next.end()) {
        int id = static_cast<int>(nodes_.size());
        nodes_[node].next.emplace(c, id);
        nodes_.emplace_back();
        node = id;
      } else {
        node = it->second;
      }
    }
    auto &payloads = nodes_[node].payloads;
    auto existing = std::find_if(payloads.begin(), payloads.end(),
                                 [&](const Payload &p) { return p.kind == gazetteer.kind; });
    if (existing == payloads.end()) {
      payloads.push_back({gazetteer.kind, refs});
    } else {
      for (const auto &r : refs) {
        if (std::find(existing->refs.begin(), existing->refs.end(), r) == existing->refs.end()) {
          existing->refs.push_back(r);
        }
      }
    }
  }
}

std::vector<Candidate> GazetteerMatcher::FindCandidates(std::string_view text) const {
  std::vector<Candidate> out;
  if (empty()) return out;
  FoldedText folded = FoldForMatching(text);
  const std::u32string &chars = folded.chars;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (chars[i] == U' ') continue;
    bool start_ok = i == 0 || !IsAlnum(chars[i - 1]) || !IsAlnum(chars[i]);
    if (!start_ok) continue;
    int node = 0;
    for (std::size_t j = i; j < chars.size(); ++j) {
      auto it = nodes_[node].next.find(chars[j]);
      if (it == nodes_[node].next.end()) break;
      node = it->second;
      const Node &n = nodes_[node];
      if (n.payloads.empty()) continue;
      bool end_ok = j + 1 == chars.size() || !IsAlnum(chars[j + 1]) || !IsAlnum(chars[j]);
      if (!end_ok) continue;
      for (const Payload &p : n.payloads) {
        out.push_back({folded.begin[i], folded.end[j], j + 1 - i, p.kind, p.refs});
      }
    }
  }
  return out;
}

std::vector<EntityMention> MatchGazetteers(std::string_view text,
                                           const std::vector<Gazetteer> &gazetteers) {
  return GazetteerMatcher(gazetteers).Match(text);
}

// ---------------------------------------------------------------------------
// Main entity.

MainEntityResult DetectMainEntity(const ArticleDoc &doc, const PersonRecord &record,
                                  const AliasPolicy &policy) {
  Gazetteer aliases;
  aliases.kind = EntityKind::kPerson;
  for (const auto &alias : PersonAliases(record, policy)) {
    aliases.Add(alias, {"", record.person_id});
  }
  GazetteerMatcher matcher;
  matcher.Add(aliases);

  MainEntityResult result;
  result.per_sentence.resize(doc.sentences.size());
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const std::string &text = doc.sentences[s].text;
    auto candidates = matcher.FindCandidates(text);
    const Candidate *best = nullptr;
    for (const Candidate &c : candidates) {
      if (!best || c.start < best->start ||
          (c.start == best->start && c.end > best->end)) {
        best = &c;
      }
    }
    if (!best) continue;
    EntityMention m;
    m.start = best->start;
    m.end = best->end;
    m.surface = text.substr(best->start, best->end - best->start);
    m.kind = EntityKind::kPerson;
    result.per_sentence[s] = std::move(m);
    result.found = true;
  }
  return result;
}

}  // namespace gdsre
