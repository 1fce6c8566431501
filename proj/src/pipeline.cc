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

#include "gdsre/pipeline.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gdsre/digest.h"
#include "gdsre/error.h"
#include "gdsre/ingest.h"
#include "gdsre/knowledge.h"
#include "gdsre/matcher.h"
#include "gdsre/segmenter.h"

namespace gdsre {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string Resolve(const std::string &base, const std::string &p) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base) / p).lexically_normal().string();
}

std::string FileDigest(const std::string &path) {
  if (path.empty()) return "";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Sha256Hex(ss.str());
}

}  // namespace

PipelineConfig ParsePipelineConfig(const json &j, const std::string &base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  PipelineConfig c;
  try {
    const json paths = j.value("paths", json::object());
    auto path = [&](const char *key) { return Resolve(base_dir, paths.value(key, "")); };
    c.paths.dump = path("dump");
    c.paths.langlinks = path("langlinks");
    c.paths.page_titles = path("page_titles");
    c.paths.person_list = path("person_list");
    c.paths.kb_snapshot = path("kb_snapshot");
    c.paths.alternates = path("alternates");
    c.paths.occupation_table = path("occupation_table");
    c.paths.abbreviations = path("abbreviations");
    c.paths.language_config = path("language_config");
    c.paths.output_dir = path("output_dir");
    c.language = j.value("language", c.language);
    c.source_language = j.value("source_language", c.source_language);
    if (j.contains("methods")) {
      c.methods.clear();
      for (const auto &m : j["methods"]) {
        auto method = ParseMethod(m.get<std::string>());
        if (!method) throw Error(ErrorCode::kInvalidArgument, "unknown method " + m.dump());
        c.methods.push_back(*method);
      }
    }
    c.other_cap = j.value("other_cap", c.other_cap);
    c.seed = j.value("seed", c.seed);
    c.workers = j.value("workers", c.workers);
    if (j.contains("split") && !j["split"].is_null()) {
      const json &s = j["split"];
      c.split = std::array<double, 3>{s.value("train", 0.0), s.value("dev", 0.0),
                                      s.value("test", 0.0)};
    }
    c.build_timestamp = j.value("build_timestamp", c.build_timestamp);
    c.corpus_format = j.value("corpus_format", c.corpus_format);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config value: ") + e.what());
  }
  if (c.other_cap < 0) throw Error(ErrorCode::kInvalidArgument, "other_cap must be >= 0");
  if (c.workers < 1) throw Error(ErrorCode::kInvalidArgument, "workers must be >= 1");
  if (c.corpus_format != "lines" && c.corpus_format != "tsv") {
    throw Error(ErrorCode::kInvalidArgument, "corpus_format must be lines or tsv");
  }
  if (c.methods.empty()) throw Error(ErrorCode::kInvalidArgument, "no methods configured");
  return c;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, "config is not JSON: " + path);
  return ParsePipelineConfig(j, fs::path(path).parent_path().string());
}

void ValidatePipelineConfig(const PipelineConfig &c) {
  std::vector<std::string> missing;
  auto need = [&](const std::string &p, const char *what, bool required) {
    if (p.empty()) {
      if (required) missing.push_back(std::string(what) + " (not configured)");
      return;
    }
    if (!fs::exists(p)) missing.push_back(p);
  };
  need(c.paths.dump, "dump", true);
  need(c.paths.person_list, "person_list", true);
  need(c.paths.langlinks, "langlinks", false);
  need(c.paths.page_titles, "page_titles", false);
  need(c.paths.kb_snapshot, "kb_snapshot", false);
  need(c.paths.alternates, "alternates", false);
  need(c.paths.occupation_table, "occupation_table", false);
  need(c.paths.abbreviations, "abbreviations", false);
  need(c.paths.language_config, "language_config", false);
  if (c.paths.output_dir.empty()) missing.push_back("output_dir (not configured)");
  if (!missing.empty()) throw Error(ErrorCode::kIo, "missing inputs", missing);
  if (c.split) {
    double sum = 0;
    for (double r : *c.split) {
      if (r < 0) throw Error(ErrorCode::kInvalidArgument, "split ratios must be >= 0");
      sum += r;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
    }
  }
}

std::string ConfigDigest(const PipelineConfig &c) {
  json j;  // std::map ordering keeps the dump canonical
  j["language"] = c.language;
  j["source_language"] = c.source_language;
  std::vector<std::string> methods;
  for (Method m : c.methods) methods.emplace_back(MethodName(m));
  j["methods"] = methods;
  j["other_cap"] = c.other_cap;
  j["seed"] = c.seed;
  if (c.split) j["split"] = *c.split;
  j["corpus_format"] = c.corpus_format;
  json inputs;
  inputs["dump"] = FileDigest(c.paths.dump);
  inputs["langlinks"] = FileDigest(c.paths.langlinks);
  inputs["page_titles"] = FileDigest(c.paths.page_titles);
  inputs["person_list"] = FileDigest(c.paths.person_list);
  inputs["kb_snapshot"] = FileDigest(c.paths.kb_snapshot);
  inputs["alternates"] = FileDigest(c.paths.alternates);
  inputs["occupation_table"] = FileDigest(c.paths.occupation_table);
  inputs["abbreviations"] = FileDigest(c.paths.abbreviations);
  inputs["language_config"] = FileDigest(c.paths.language_config);
  j["inputs"] = inputs;
  return Sha256Hex(j.dump());
}

BuildResult RunBuild(const PipelineConfig &config) {
  ValidatePipelineConfig(config);
  BuildResult result;
  ordered_json &report = result.report;

  // Language resources.
  LanguageConfig language;
  if (!config.paths.language_config.empty()) {
    language = LoadLanguageConfig(config.paths.language_config);
  } else if (config.language == "de") {
    language = GermanLanguageConfig();
  } else if (config.language == "en") {
    language = EnglishLanguageConfig();
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "no built-in language config for " + config.language);
  }
  AbbreviationList abbreviations;
  if (!config.paths.abbreviations.empty()) {
    abbreviations = LoadAbbreviations(config.paths.abbreviations);
  } else if (config.language == "de") {
    abbreviations = DefaultGermanAbbreviations();
  }

  // Knowledge.
  PersonListStats list_stats;
  std::vector<PersonRecord> records =
      LoadPersonList(config.paths.person_list, config.source_language, &list_stats);
  report["person_list"] = {{"rows", list_stats.rows},
                           {"bad_dates", list_stats.bad_dates},
                           {"bad_numbers", list_stats.bad_numbers}};
  if (!config.paths.kb_snapshot.empty()) {
    KbSnapshot kb = LoadKbSnapshot(config.paths.kb_snapshot);
    EnrichStats es;
    for (PersonRecord &r : records) {
      r = EnrichWithKnowledgeBase(r, kb, config.source_language, config.language, &es);
    }
    report["knowledge_base"] = {{"enriched", es.enriched}, {"missing_qid", es.missing_qid}};
  }
  if (!config.paths.alternates.empty()) {
    AlternatesTable alternates = LoadAlternates(config.paths.alternates);
    ResolveStats rs;
    for (PersonRecord &r : records) {
      for (auto *place : {&r.birthplace, &r.deathplace}) {
        if (*place) **place = ResolvePlaceNames(**place, alternates, &rs);
      }
    }
    report["places"] = {{"resolved", rs.resolved},
                        {"rejected", rs.rejected},
                        {"unresolvable", rs.unresolvable}};
  }
  std::set<std::string> occupation_labels;
  for (const PersonRecord &r : records) {
    for (const OccupationEntry &o : r.occupations) occupation_labels.insert(o.source_label);
  }
  std::vector<Gazetteer> global_gazetteers;
  if (!occupation_labels.empty()) {
    if (config.paths.occupation_table.empty()) {
      throw Error(ErrorCode::kIo, "records list occupations but no occupation_table is set");
    }
    OccupationTable table = LoadOccupationTable(config.paths.occupation_table);
    global_gazetteers.push_back(BuildOccupationGazetteer(
        {occupation_labels.begin(), occupation_labels.end()}, table));
  }
  for (Gazetteer &g : BuildBackgroundGazetteers(records)) global_gazetteers.push_back(std::move(g));
  GazetteerMatcher global(global_gazetteers);

  // Page binding: the record's own target id, else the langlink mapping.
  std::map<PageId, std::string> page_to_person;
  std::set<PageId> to_map;
  for (const PersonRecord &r : records) {
    if (!r.target_page_id && r.en_page_id) to_map.insert(*r.en_page_id);
  }
  PageIdMapping mapping;
  if (!to_map.empty() && !config.paths.langlinks.empty()) {
    TitleIndex titles;
    if (!config.paths.page_titles.empty()) titles = LoadTitleIndex(config.paths.page_titles);
    mapping = MapPageIds(to_map, config.paths.langlinks, config.language,
                         config.paths.page_titles.empty() ? nullptr : &titles);
  } else {
    mapping.unmapped = to_map;
  }
  std::vector<std::string> conflicts;
  std::size_t unbound_records = 0;
  for (const PersonRecord &r : records) {
    std::optional<PageId> page = r.target_page_id;
    if (!page && r.en_page_id) {
      auto it = mapping.mapping.find(*r.en_page_id);
      if (it != mapping.mapping.end()) page = it->second;
    }
    if (!page) {
      unbound_records++;
      continue;
    }
    auto [it, inserted] = page_to_person.emplace(*page, r.person_id);
    if (!inserted) conflicts.push_back(std::to_string(*page));
  }
  if (!conflicts.empty()) {
    throw Error(ErrorCode::kDataError, "several records bind the same page", conflicts);
  }
  report["langlinks"] = {{"mapped", mapping.mapping.size()},
                         {"unmapped", mapping.unmapped.size()},
                         {"records_without_page", unbound_records}};

  // Ingest.
  std::set<PageId> wanted;
  for (const auto &[page, _] : page_to_person) wanted.insert(page);
  DumpStats dump_stats;
  std::vector<RawArticle> raw =
      ReadArticles(config.paths.dump, wanted, config.language, &dump_stats);
  BuildDocsStats doc_stats;
  std::vector<ArticleDoc> docs =
      BuildArticleDocs(raw, page_to_person, abbreviations, config.workers, &doc_stats);
  raw.clear();
  report["dump"] = {{"pages_seen", dump_stats.pages_seen},
                    {"pages_yielded", dump_stats.pages_yielded},
                    {"wanted", wanted.size()},
                    {"redirects", doc_stats.redirects},
                    {"disambiguations", doc_stats.disambiguations},
                    {"empty", doc_stats.empty},
                    {"articles", docs.size()}};
  report["strip"] = {{"templates", doc_stats.strip.templates},
                     {"tables", doc_stats.strip.tables},
                     {"references", doc_stats.strip.references},
                     {"comments", doc_stats.strip.comments},
                     {"media_links", doc_stats.strip.media_links},
                     {"headings", doc_stats.strip.headings},
                     {"unparsed", doc_stats.strip.unparsed}};

  // Label.
  std::map<std::string, PersonRecord> by_id;
  for (PersonRecord &r : records) by_id.emplace(r.person_id, std::move(r));
  LabelResources resources{&language, &global};
  LabelConfig label_config;
  label_config.other_cap = config.other_cap;
  label_config.seed = config.seed;

  const std::string digest = ConfigDigest(config);
  fs::create_directories(config.paths.output_dir);
  const fs::path out_dir = config.paths.output_dir;
  const std::string ext = config.corpus_format == "tsv" ? ".tsv" : ".jsonl";
  const CorpusFormat format = config.corpus_format == "tsv" ? CorpusFormat::kTsv
                                                            : CorpusFormat::kLines;
  std::vector<std::pair<std::string, StatsTable>> stats_columns;
  ordered_json labelling = ordered_json::object();
  for (Method method : config.methods) {
    LabelRunStats ls;
    Corpus corpus;
    corpus.instances = LabelArticles(docs, by_id, method, resources, label_config,
                                     config.workers, &ls);
    corpus.meta = {config.language, method, config.build_timestamp, digest, config.seed};
    const std::string name(MethodName(method));
    labelling[name] = {{"articles", ls.articles},
                       {"main_entity_missing", ls.main_entity_missing},
                       {"unknown_person", ls.unknown_person},
                       {"unparseable_dates", ls.unparseable_dates},
                       {"instances", corpus.instances.size()}};
    const std::string path = (out_dir / (name + ext)).string();
    WriteCorpus(corpus, path, format);
    result.written.push_back(path);
    stats_columns.emplace_back(config.language + " " + name, ComputeStats(corpus));
    if (config.split) {
      CorpusSplit split = SplitCorpus(corpus, *config.split, config.seed);
      const std::pair<const char *, const Corpus *> parts[] = {
          {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
      for (const auto &[part, c] : parts) {
        const std::string p = (out_dir / (name + "." + part + ext)).string();
        WriteCorpus(*c, p, format);
        result.written.push_back(p);
      }
    }
    result.corpora.push_back(std::move(corpus));
  }
  report["labelling"] = labelling;
  report["config_digest"] = digest;

  auto write_text = [&](const std::string &file, const std::string &content) {
    const std::string p = (out_dir / file).string();
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + p);
    result.written.push_back(p);
  };
  write_text("stats.txt", RenderStats(stats_columns));
  write_text("stats.json", StatsToJson(stats_columns).dump(2) + "\n");
  {
    std::ostringstream articles;
    WriteArticleStore(docs, articles);
    write_text("articles.jsonl", articles.str());
  }
  write_text("build_report.json", report.dump(2) + "\n");
  return result;
}

}  // namespace gdsre
