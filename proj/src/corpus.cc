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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/random.h"
#include "gdsre/text.h"

namespace gdsre {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::ofstream OpenForWrite(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  return out;
}

std::ifstream OpenForRead(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return in;
}

ordered_json MetaToJson(const CorpusMeta &meta) {
  ordered_json m;
  m["kind"] = "corpus";
  m["language"] = meta.language;
  m["method"] = MethodName(meta.method);
  m["build_timestamp"] = meta.build_timestamp;
  m["config_digest"] = meta.config_digest;
  m["seed"] = meta.seed;
  return m;
}

CorpusMeta MetaFromJson(const json &m) {
  CorpusMeta meta;
  meta.language = m.value("language", "");
  auto method = ParseMethod(m.value("method", ""));
  if (!method) throw Error(ErrorCode::kDataError, "corpus meta has no valid method");
  meta.method = *method;
  meta.build_timestamp = m.value("build_timestamp", "");
  meta.config_digest = m.value("config_digest", "");
  meta.seed = m.value("seed", uint64_t{0});
  return meta;
}

std::string EscapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string UnescapeField(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    char c = s[++i];
    switch (c) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return out;
}

std::string WithThousands(int64_t v) {
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  int n = static_cast<int>(digits.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return v < 0 ? "-" + out : out;
}

const char *kTsvHeader =
    "instance_id\tlabel\tmarked_text\tarticle_id\tsentence_index\tmethod\tmatched_key";

}  // namespace

// ---------------------------------------------------------------------------
// Records.

ordered_json InstanceToJson(const RelationInstance &inst) {
  ordered_json j;
  j["instance_id"] = inst.instance_id;
  j["article_id"] = inst.article_id;
  j["sentence_index"] = inst.sentence_index;
  j["label"] = RelationName(inst.label);
  j["method"] = MethodName(inst.method);
  j["marked_text"] = inst.marked_text;
  j["e1_span"] = {inst.e1.start, inst.e1.end};
  j["e2_span"] = {inst.e2.start, inst.e2.end};
  if (inst.matched_key) j["matched_key"] = *inst.matched_key;
  return j;
}

RelationInstance InstanceFromJson(const json &j) {
  try {
    RelationInstance inst;
    inst.instance_id = j.at("instance_id").get<std::string>();
    inst.article_id = j.at("article_id").get<PageId>();
    inst.sentence_index = j.at("sentence_index").get<int>();
    auto label = ParseRelation(j.at("label").get<std::string>());
    if (!label) {
      throw Error(ErrorCode::kDataError, "unknown label " + j.at("label").dump(),
                  {inst.instance_id});
    }
    inst.label = *label;
    auto method = ParseMethod(j.at("method").get<std::string>());
    if (!method) {
      throw Error(ErrorCode::kDataError, "unknown method " + j.at("method").dump(),
                  {inst.instance_id});
    }
    inst.method = *method;
    inst.marked_text = j.at("marked_text").get<std::string>();
    if (j.contains("e1_span")) {
      inst.e1 = {j["e1_span"].at(0).get<std::size_t>(), j["e1_span"].at(1).get<std::size_t>()};
      inst.e2 = {j["e2_span"].at(0).get<std::size_t>(), j["e2_span"].at(1).get<std::size_t>()};
    } else {
      UnmarkedSentence u = ParseMarkedText(inst.marked_text);
      inst.e1 = u.e1;
      inst.e2 = u.e2;
    }
    if (j.contains("matched_key") && !j["matched_key"].is_null()) {
      inst.matched_key = j["matched_key"].get<std::string>();
    }
    return inst;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kDataError, std::string("malformed instance record: ") + e.what());
  }
}

void ValidateCorpus(const Corpus &corpus) {
  std::set<std::string> seen;
  std::vector<std::string> dups;
  std::vector<std::string> wrong_method;
  for (const RelationInstance &inst : corpus.instances) {
    if (!seen.insert(inst.instance_id).second) dups.push_back(inst.instance_id);
    if (inst.method != corpus.meta.method) wrong_method.push_back(inst.instance_id);
  }
  if (!dups.empty()) {
    throw Error(ErrorCode::kDataError, "duplicate instance ids", dups);
  }
  if (!wrong_method.empty()) {
    throw Error(ErrorCode::kDataError, "instances disagree with corpus method",
                wrong_method);
  }
}

CorpusFormat FormatForPath(const std::string &path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0
             ? CorpusFormat::kTsv
             : CorpusFormat::kLines;
}

void WriteCorpus(const Corpus &corpus, std::ostream &out, CorpusFormat format) {
  ValidateCorpus(corpus);
  std::vector<RelationInstance> sorted = corpus.instances;
  SortInstances(sorted);
  if (format == CorpusFormat::kLines) {
    out << ordered_json{{"meta", MetaToJson(corpus.meta)}}.dump() << '\n';
    for (const RelationInstance &inst : sorted) out << InstanceToJson(inst).dump() << '\n';
  } else {
    out << "# meta " << MetaToJson(corpus.meta).dump() << '\n' << kTsvHeader << '\n';
    for (const RelationInstance &inst : sorted) {
      out << EscapeField(inst.instance_id) << '\t' << RelationName(inst.label) << '\t'
          << EscapeField(inst.marked_text) << '\t' << inst.article_id << '\t'
          << inst.sentence_index << '\t' << MethodName(inst.method) << '\t'
          << EscapeField(inst.matched_key.value_or("")) << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "corpus write failed");
}

void WriteCorpus(const Corpus &corpus, const std::string &path, CorpusFormat format) {
  std::ofstream out = OpenForWrite(path);
  WriteCorpus(corpus, out, format);
}

void WriteCorpus(const Corpus &corpus, const std::string &path) {
  WriteCorpus(corpus, path, FormatForPath(path));
}

InstanceFile ReadInstanceFile(std::istream &in) {
  InstanceFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_meta = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kDataError, "line " + std::to_string(lineno) + " is not a JSON object");
    }
    if (!have_meta) {
      if (!j.contains("meta")) {
        throw Error(ErrorCode::kDataError, "first line must be a meta record");
      }
      file.meta = j["meta"];
      have_meta = true;
      continue;
    }
    file.instances.push_back(InstanceFromJson(j));
  }
  if (!have_meta) throw Error(ErrorCode::kDataError, "missing meta record");
  return file;
}

InstanceFile ReadInstanceFile(const std::string &path) {
  std::ifstream in = OpenForRead(path);
  return ReadInstanceFile(in);
}

Corpus ReadCorpus(std::istream &in, CorpusFormat format) {
  Corpus corpus;
  if (format == CorpusFormat::kLines) {
    InstanceFile file = ReadInstanceFile(in);
    corpus.meta = MetaFromJson(file.meta);
    corpus.instances = std::move(file.instances);
  } else {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# meta ", 0) != 0) {
      throw Error(ErrorCode::kDataError, "tsv corpus lacks meta line");
    }
    json meta = json::parse(line.substr(7), nullptr, false);
    if (meta.is_discarded()) throw Error(ErrorCode::kDataError, "malformed tsv meta line");
    corpus.meta = MetaFromJson(meta);
    if (!std::getline(in, line) || line != kTsvHeader) {
      throw Error(ErrorCode::kDataError, "tsv corpus lacks header row");
    }
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto cols = SplitTabs(line);
      if (cols.size() != 7) {
        throw Error(ErrorCode::kDataError,
                    "tsv line " + std::to_string(lineno) + " has " +
                        std::to_string(cols.size()) + " columns");
      }
      RelationInstance inst;
      inst.instance_id = UnescapeField(cols[0]);
      inst.label = RelationFromName(cols[1]);
      inst.marked_text = UnescapeField(cols[2]);
      try {
        inst.article_id = std::stoll(cols[3]);
        inst.sentence_index = std::stoi(cols[4]);
      } catch (const std::exception &) {
        throw Error(ErrorCode::kDataError, "bad number on tsv line " + std::to_string(lineno));
      }
      auto method = ParseMethod(cols[5]);
      if (!method) throw Error(ErrorCode::kDataError, "unknown method " + cols[5]);
      inst.method = *method;
      if (!cols[6].empty()) inst.matched_key = UnescapeField(cols[6]);
      UnmarkedSentence u = ParseMarkedText(inst.marked_text);
      inst.e1 = u.e1;
      inst.e2 = u.e2;
      corpus.instances.push_back(std::move(inst));
    }
  }
  ValidateCorpus(corpus);
  return corpus;
}

Corpus ReadCorpus(const std::string &path) {
  std::ifstream in = OpenForRead(path);
  return ReadCorpus(in, FormatForPath(path));
}

// ---------------------------------------------------------------------------
// Statistics.

StatsTable ComputeStats(const std::vector<RelationInstance> &instances) {
  StatsTable t;
  for (const RelationInstance &inst : instances) {
    t.counts[RelationIndex(inst.label)]++;
    t.total++;
  }
  return t;
}

std::string RenderStats(const std::vector<std::pair<std::string, StatsTable>> &columns) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Relation"};
  for (const auto &[name, _] : columns) header.push_back(name);
  rows.push_back(header);
  for (Relation r : kAllRelations) {
    std::vector<std::string> row{std::string(RelationName(r))};
    for (const auto &[_, t] : columns) row.push_back(WithThousands(t.count(r)));
    rows.push_back(row);
  }
  std::vector<std::string> total{"Total"};
  for (const auto &[_, t] : columns) total.push_back(WithThousands(t.total));
  rows.push_back(total);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string rule(width[0], '-');
  for (std::size_t c = 1; c < width.size(); ++c) rule += "  " + std::string(width[c], '-');

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string> &row) {
    std::string line = row[0] + std::string(width[0] - row[0].size(), ' ');
    for (std::size_t c = 1; c < row.size(); ++c) {
      line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    out << line << '\n';
  };
  emit(rows[0]);
  out << rule << '\n';
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) emit(rows[i]);
  out << rule << '\n';
  emit(rows.back());
  return out.str();
}

ordered_json StatsToJson(const std::vector<std::pair<std::string, StatsTable>> &columns) {
  ordered_json out = ordered_json::object();
  for (const auto &[name, t] : columns) {
    ordered_json col;
    for (Relation r : kAllRelations) col[std::string(RelationName(r))] = t.count(r);
    col["total"] = t.total;
    out[name] = col;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gold sampling.

GoldSample SampleGold(const Corpus &normal, const Corpus &skip, int n_per_relation,
                      uint64_t seed) {
  if (n_per_relation < 0) {
    throw Error(ErrorCode::kInvalidArgument, "n_per_relation must be non-negative");
  }
  GoldSample sample;
  sample.n_per_relation = n_per_relation;
  sample.seed = seed;
  for (const Corpus *corpus : {&normal, &skip}) {
    const Method method = corpus == &normal ? Method::kNormal : Method::kSkip;
    std::vector<RelationInstance> sorted = corpus->instances;
    SortInstances(sorted);
    for (Relation r : kAllRelations) {
      std::vector<const RelationInstance *> cell;
      for (const RelationInstance &inst : sorted) {
        if (inst.label == r && inst.method == method) cell.push_back(&inst);
      }
      const std::size_t want = static_cast<std::size_t>(n_per_relation);
      if (cell.size() < want) {
        sample.shortfalls.push_back(
            {r, method, n_per_relation, static_cast<int>(cell.size())});
      }
      std::string salt = "gold:" + std::string(RelationName(r)) + ":" +
                         std::string(MethodName(method));
      Rng rng = Rng::Derive(seed, salt);
      for (std::size_t idx : rng.Sample(cell.size(), std::min(want, cell.size()))) {
        sample.items.push_back(*cell[idx]);
      }
    }
  }
  Rng shuffle = Rng::Derive(seed, "gold:shuffle");
  shuffle.Shuffle(sample.items);

  std::set<std::string> ids;
  std::vector<std::string> dups;
  for (const auto &item : sample.items) {
    if (!ids.insert(item.instance_id).second) dups.push_back(item.instance_id);
  }
  if (!dups.empty()) throw Error(ErrorCode::kDataError, "gold sample repeats instance ids", dups);
  return sample;
}

void WriteGoldSample(const GoldSample &sample, std::ostream &out) {
  ordered_json meta;
  meta["kind"] = "gold_sample";
  meta["n_per_relation"] = sample.n_per_relation;
  meta["seed"] = sample.seed;
  meta["items"] = sample.items.size();
  ordered_json shortfalls = ordered_json::array();
  for (const Shortfall &s : sample.shortfalls) {
    shortfalls.push_back({{"relation", RelationName(s.relation)},
                          {"method", MethodName(s.method)},
                          {"requested", s.requested},
                          {"available", s.available}});
  }
  meta["shortfalls"] = shortfalls;
  out << ordered_json{{"meta", meta}}.dump() << '\n';
  for (const RelationInstance &inst : sample.items) out << InstanceToJson(inst).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "gold sample write failed");
}

void WriteGoldSample(const GoldSample &sample, const std::string &path) {
  std::ofstream out = OpenForWrite(path);
  WriteGoldSample(sample, out);
}

GoldSample ReadGoldSample(const std::string &path) {
  InstanceFile file = ReadInstanceFile(path);
  GoldSample sample;
  sample.items = std::move(file.instances);
  sample.n_per_relation = file.meta.value("n_per_relation", 0);
  sample.seed = file.meta.value("seed", uint64_t{0});
  if (file.meta.contains("shortfalls")) {
    for (const auto &s : file.meta["shortfalls"]) {
      sample.shortfalls.push_back({RelationFromName(s.at("relation").get<std::string>()),
                                   *ParseMethod(s.at("method").get<std::string>()),
                                   s.at("requested").get<int>(),
                                   s.at("available").get<int>()});
    }
  }
  return sample;
}

// ---------------------------------------------------------------------------
// Splitting.

CorpusSplit SplitCorpus(const Corpus &corpus, const std::array<double, 3> &ratios,
                        uint64_t seed) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r >= 0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be non-negative");
    }
    sum += r;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  }

  std::map<PageId, std::array<int64_t, kNumRelations>> per_article;
  for (const RelationInstance &inst : corpus.instances) {
    per_article[inst.article_id][RelationIndex(inst.label)]++;
  }
  std::vector<PageId> articles;
  for (const auto &[id, _] : per_article) articles.push_back(id);
  Rng rng = Rng::Derive(seed, "split");
  rng.Shuffle(articles);

  // Article quotas by largest remainder; ties go to the earlier split.
  const std::size_t n = articles.size();
  std::array<std::size_t, 3> quota{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int s = 0; s < 3; ++s) {
    double exact = static_cast<double>(n) * ratios[s];
    quota[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[s] = exact - static_cast<double>(quota[s]);
    assigned += quota[s];
  }
  while (assigned < n) {
    int best = -1;
    for (int s = 0; s < 3; ++s) {
      if (ratios[s] <= 0) continue;
      if (best < 0 || remainder[s] > remainder[best] + 1e-12) best = s;
    }
    quota[best]++;
    remainder[best] = -1;
    assigned++;
  }

  std::array<int64_t, kNumRelations> totals{};
  for (const auto &[_, counts] : per_article) {
    for (int r = 0; r < kNumRelations; ++r) totals[r] += counts[r];
  }
  std::array<std::array<int64_t, kNumRelations>, 3> got{};
  std::array<std::size_t, 3> used{};
  std::map<PageId, int> where;
  for (PageId id : articles) {
    const auto &counts = per_article[id];
    int best = -1;
    double best_score = 0;
    for (int s = 0; s < 3; ++s) {
      if (used[s] >= quota[s]) continue;
      // Deficit of this split on the article's labels, relative to target.
      double score = 0;
      for (int r = 0; r < kNumRelations; ++r) {
        if (counts[r] == 0) continue;
        score += ratios[s] * static_cast<double>(totals[r]) - static_cast<double>(got[s][r]);
      }
      score += 1e-6 * static_cast<double>(quota[s] - used[s]);
      if (best < 0 || score > best_score + 1e-12) {
        best = s;
        best_score = score;
      }
    }
    where[id] = best;
    used[best]++;
    for (int r = 0; r < kNumRelations; ++r) got[best][r] += counts[r];
  }

  CorpusSplit split;
  for (Corpus *c : {&split.train, &split.dev, &split.test}) c->meta = corpus.meta;
  std::array<Corpus *, 3> out = {&split.train, &split.dev, &split.test};
  for (const RelationInstance &inst : corpus.instances) {
    out[where[inst.article_id]]->instances.push_back(inst);
  }
  for (Corpus *c : out) SortInstances(c->instances);
  return split;
}

}  // namespace gdsre
