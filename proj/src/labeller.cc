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

#include "gdsre/labeller.h"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "gdsre/digest.h"
#include "gdsre/error.h"
#include "gdsre/parallel.h"
#include "gdsre/random.h"
#include "gdsre/text.h"

namespace gdsre {

std::string_view MethodName(Method method) {
  return method == Method::kNormal ? "normal" : "skip";
}

std::optional<Method> ParseMethod(std::string_view name) {
  if (name == "normal") return Method::kNormal;
  if (name == "skip") return Method::kSkip;
  return std::nullopt;
}

std::string ComputeInstanceId(PageId article_id, int sentence_index, Span e1,
                              Span e2, Relation label, Method method) {
  std::string key = std::to_string(article_id) + "|" + std::to_string(sentence_index) +
                    "|" + std::to_string(e1.start) + "|" + std::to_string(e1.end) +
                    "|" + std::to_string(e2.start) + "|" + std::to_string(e2.end) +
                    "|" + std::string(RelationName(label)) + "|" +
                    std::string(MethodName(method));
  return Sha256Hex(key).substr(0, 16);
}

// ---------------------------------------------------------------------------
// Markers.

namespace {

constexpr std::array<std::string_view, 4> kTags = {"<e1>", "</e1>", "<e2>", "</e2>"};

}  // namespace

std::string InsertMarkers(std::string_view text, Span e1, Span e2) {
  auto valid = [&](Span s) { return s.start < s.end && s.end <= text.size(); };
  if (!valid(e1) || !valid(e2)) {
    throw Error(ErrorCode::kInvalidArgument, "entity span out of bounds");
  }
  if (e1.start < e2.end && e2.start < e1.end) {
    throw Error(ErrorCode::kInvalidArgument, "entity spans overlap");
  }
  // Later span first so earlier offsets stay valid.
  struct Insert {
    std::size_t pos;
    std::string_view tag;
  };
  std::array<Insert, 4> inserts = {{{e1.start, "<e1>"},
                                    {e1.end, "</e1>"},
                                    {e2.start, "<e2>"},
                                    {e2.end, "</e2>"}}};
  std::string out(text);
  const bool e1_first = e1.start < e2.start;
  const std::array<int, 4> order = e1_first ? std::array<int, 4>{3, 2, 1, 0}
                                            : std::array<int, 4>{1, 0, 3, 2};
  for (int i : order) out.insert(inserts[i].pos, inserts[i].tag);
  return out;
}

std::string StripMarkers(std::string_view marked) {
  std::string out;
  out.reserve(marked.size());
  std::size_t i = 0;
  while (i < marked.size()) {
    bool tag = false;
    if (marked[i] == '<') {
      for (auto t : kTags) {
        if (marked.substr(i, t.size()) == t) {
          i += t.size();
          tag = true;
          break;
        }
      }
    }
    if (!tag) out += marked[i++];
  }
  return out;
}

UnmarkedSentence ParseMarkedText(std::string_view marked) {
  UnmarkedSentence result;
  std::array<int, 4> count{};
  std::array<std::size_t, 4> pos{};
  std::vector<std::size_t> sequence;  // tag ids in order of appearance
  std::size_t i = 0;
  while (i < marked.size()) {
    bool tag = false;
    if (marked[i] == '<') {
      for (std::size_t t = 0; t < kTags.size(); ++t) {
        if (marked.substr(i, kTags[t].size()) == kTags[t]) {
          count[t]++;
          pos[t] = result.text.size();
          sequence.push_back(t);
          i += kTags[t].size();
          tag = true;
          break;
        }
      }
    }
    if (!tag) result.text += marked[i++];
  }
  for (int c : count) {
    if (c != 1) {
      throw Error(ErrorCode::kDataError,
                  "marked text must contain each entity tag exactly once");
    }
  }
  // Each entity's closing tag must directly follow its opening tag.
  if (sequence[1] != sequence[0] + 1 || sequence[3] != sequence[2] + 1 || sequence[0] % 2 ||
      sequence[2] % 2) {
    throw Error(ErrorCode::kDataError, "entity tags are not well nested");
  }
  result.e1 = {pos[0], pos[1]};
  result.e2 = {pos[2], pos[3]};
  if (result.e1.start >= result.e1.end || result.e2.start >= result.e2.end ||
      (result.e1.start < result.e2.end && result.e2.start < result.e1.end)) {
    throw Error(ErrorCode::kDataError, "malformed entity markers");
  }
  return result;
}

void SortInstances(std::vector<RelationInstance> &instances) {
  std::sort(instances.begin(), instances.end(),
            [](const RelationInstance &a, const RelationInstance &b) {
              return std::tie(a.article_id, a.sentence_index, a.e1, a.e2, a.label,
                              a.method, a.instance_id) <
                     std::tie(b.article_id, b.sentence_index, b.e1, b.e2, b.label,
                              b.method, b.instance_id);
            });
}

// ---------------------------------------------------------------------------
// Labelling.

namespace {

struct FieldMatch {
  Relation relation;
  std::string matched_key;
};

// Every record field the mention satisfies, in priority order.
std::vector<FieldMatch> MatchFields(const EntityMention &m, const PersonRecord &record,
                                    const LabelConfig &config,
                                    const LanguageConfig &language,
                                    MatchStats *stats) {
  std::vector<FieldMatch> out;
  for (Relation r : config.field_priority) {
    if (m.kind == EntityKind::kDate) {
      const std::optional<PartialDate> *target = nullptr;
      if (r == Relation::kBirthdate) target = &record.birthdate;
      if (r == Relation::kDeathdate) target = &record.deathdate;
      if (target && *target && DateEquals(m, **target, language, stats)) {
        out.push_back({r, (*target)->ToString()});
      }
      continue;
    }
    for (const GazetteerRef &ref : m.refs) {
      if (ref.field_key != RelationName(r)) continue;
      if (r == Relation::kOccupation) {
        std::string key = NormalizeSurface(ref.record_key);
        bool held = std::any_of(record.occupations.begin(), record.occupations.end(),
                                [&](const OccupationEntry &o) {
                                  return NormalizeSurface(o.source_label) == key;
                                });
        if (!held) continue;
      }
      out.push_back({r, ref.record_key});
      break;
    }
  }
  return out;
}

// Dates and gazetteer mentions merged in text order, dropping anything that
// overlaps e1 or an earlier mention.
std::vector<EntityMention> SentenceCandidates(const std::string &text, Span e1,
                                              const GazetteerMatcher &record_matcher,
                                              const LabelResources &resources,
                                              const std::set<std::string> &self_names) {
  std::vector<Candidate> raw = record_matcher.FindCandidates(text);
  if (resources.global) {
    auto global = resources.global->FindCandidates(text);
    raw.insert(raw.end(), std::make_move_iterator(global.begin()),
               std::make_move_iterator(global.end()));
  }
  std::erase_if(raw, [&](const Candidate &c) { return c.start < e1.end && e1.start < c.end; });
  std::vector<EntityMention> all = ResolveCandidates(text, std::move(raw));
  auto dates = MatchDates(text, *resources.language);
  all.insert(all.end(), dates.begin(), dates.end());
  std::stable_sort(all.begin(), all.end(), [](const EntityMention &a, const EntityMention &b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end > b.end;
  });
  std::vector<EntityMention> out;
  for (EntityMention &m : all) {
    if (m.start < e1.end && e1.start < m.end) continue;
    if (!out.empty() && m.start < out.back().end) continue;
    // A repeated mention of the article's own person is no relation partner.
    if (m.kind == EntityKind::kPerson && self_names.count(NormalizeSurface(m.surface))) continue;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

ArticleLabels LabelArticle(const ArticleDoc &doc, const PersonRecord &record,
                           Method method, const LabelResources &resources,
                           const LabelConfig &config) {
  if (!resources.language) {
    throw Error(ErrorCode::kInvalidArgument, "label resources lack a language config");
  }
  ArticleLabels result;
  const LanguageConfig &language = *resources.language;
  MainEntityResult main = DetectMainEntity(doc, record, language.alias_policy);
  result.main_entity_found = main.found;
  if (!main.found) return result;

  GazetteerMatcher record_matcher(BuildFieldGazetteers(record, language.alias_policy));
  std::array<bool, kNumRelations> open;
  open.fill(true);
  std::set<std::string> self_names;
  for (const auto &n : PersonAliases(record, language.alias_policy)) {
    self_names.insert(NormalizeSurface(n));
  }

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const Sentence &sentence = doc.sentences[s];
    if (method == Method::kSkip && s == 0) continue;
    if (!main.per_sentence[s]) continue;
    const EntityMention &e1m = *main.per_sentence[s];
    Span e1{e1m.start, e1m.end};

    for (const EntityMention &m : SentenceCandidates(sentence.text, e1, record_matcher, resources, self_names)) {
      Span e2{m.start, m.end};
      auto matches = MatchFields(m, record, config, language, &result.match_stats);
      if (matches.empty()) {
        result.other_pool.push_back(
            {doc.article_id, sentence.index, sentence.text, e1, e2, method});
        continue;
      }
      for (const FieldMatch &fm : matches) {
        if (!open[RelationIndex(fm.relation)]) continue;
        open[RelationIndex(fm.relation)] = false;
        RelationInstance inst;
        inst.article_id = doc.article_id;
        inst.sentence_index = sentence.index;
        inst.e1 = e1;
        inst.e2 = e2;
        inst.label = fm.relation;
        inst.method = method;
        inst.matched_key = fm.matched_key;
        inst.marked_text = InsertMarkers(sentence.text, e1, e2);
        inst.instance_id = ComputeInstanceId(inst.article_id, inst.sentence_index,
                                             e1, e2, inst.label, method);
        result.instances.push_back(std::move(inst));
        break;
      }
    }
  }
  return result;
}

std::vector<RelationInstance> GenerateOther(const std::vector<OtherCandidate> &pool,
                                            int cap, uint64_t seed) {
  std::vector<RelationInstance> out;
  if (cap <= 0 || pool.empty()) return out;
  std::map<PageId, std::vector<const OtherCandidate *>> by_article;
  for (const OtherCandidate &c : pool) by_article[c.article_id].push_back(&c);
  for (const auto &[article, candidates] : by_article) {
    Rng rng = Rng::Derive(seed, "other:" + std::to_string(article));
    for (std::size_t idx : rng.Sample(candidates.size(), static_cast<std::size_t>(cap))) {
      const OtherCandidate &c = *candidates[idx];
      RelationInstance inst;
      inst.article_id = c.article_id;
      inst.sentence_index = c.sentence_index;
      inst.e1 = c.e1;
      inst.e2 = c.e2;
      inst.label = Relation::kOther;
      inst.method = c.method;
      inst.marked_text = InsertMarkers(c.sentence_text, c.e1, c.e2);
      inst.instance_id = ComputeInstanceId(c.article_id, c.sentence_index, c.e1, c.e2,
                                           Relation::kOther, c.method);
      out.push_back(std::move(inst));
    }
  }
  SortInstances(out);
  return out;
}

std::vector<RelationInstance> LabelArticles(
    const std::vector<ArticleDoc> &docs,
    const std::map<std::string, PersonRecord> &records, Method method,
    const LabelResources &resources, const LabelConfig &config, int workers,
    LabelRunStats *stats) {
  LabelRunStats local;
  if (!stats) stats = &local;
  std::vector<ArticleLabels> results(docs.size());
  std::vector<char> known(docs.size(), 0);
  ParallelFor(docs.size(), workers, [&](std::size_t i) {
    auto it = records.find(docs[i].person_id);
    if (it == records.end()) return;
    known[i] = 1;
    results[i] = LabelArticle(docs[i], it->second, method, resources, config);
  });

  std::vector<RelationInstance> instances;
  std::vector<OtherCandidate> pool;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    stats->articles++;
    if (!known[i]) {
      stats->unknown_person++;
      continue;
    }
    if (!results[i].main_entity_found) stats->main_entity_missing++;
    stats->unparseable_dates += results[i].match_stats.unparseable_dates;
    for (auto &inst : results[i].instances) instances.push_back(std::move(inst));
    for (auto &c : results[i].other_pool) pool.push_back(std::move(c));
  }
  auto others = GenerateOther(pool, config.other_cap, config.seed);
  instances.insert(instances.end(), std::make_move_iterator(others.begin()),
                   std::make_move_iterator(others.end()));
  SortInstances(instances);
  return instances;
}

}  // namespace gdsre
