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

#include "gdsre/ingest.h"

#include <expat.h>

#include <algorithm>
#include <array>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>
#include <charconv>
#include <exception>
#include <fstream>
#include <memory>
#include <sstream>

#include "gdsre/parallel.h"
#include "gdsre/text.h"
#include "json.hpp"

namespace gdsre {

namespace {

bool ParsePageId(std::string_view s, PageId *out) {
  s = Trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && *out > 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Langlinks.

TitleIndex LoadTitleIndex(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read page table " + path);
  TitleIndex index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    PageId id;
    if (fields.size() < 2 || !ParsePageId(fields[0], &id)) {
      if (line_no == 1) continue;  // header
      throw Error(ErrorCode::kDataError,
                  path + ":" + std::to_string(line_no) + ": malformed page row");
    }
    index.emplace(std::string(Trim(fields[1])), id);
  }
  return index;
}

PageIdMapping MapPageIds(const std::set<PageId> &source_ids,
                         std::istream &langlinks,
                         const std::string &target_language,
                         const TitleIndex *titles) {
  PageIdMapping result;
  std::map<PageId, std::string> raw_targets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(langlinks, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    PageId source;
    if (fields.size() != 3 || !ParsePageId(fields[0], &source)) {
      if (line_no == 1 && fields.size() == 3) continue;  // header row
      throw Error(ErrorCode::kDataError,
                  "langlink table line " + std::to_string(line_no) +
                      ": expected (source_id, lang, target)");
    }
    if (Trim(fields[1]) != target_language) continue;
    if (!source_ids.count(source)) continue;
    std::string target(Trim(fields[2]));
    auto [it, inserted] = raw_targets.emplace(source, target);
    if (!inserted && it->second != target) {
      throw Error(ErrorCode::kDataError,
                  "conflicting langlink rows for source id " +
                      std::to_string(source) + ": '" + it->second + "' vs '" +
                      target + "'",
                  {std::to_string(source)});
    }
  }
  if (langlinks.bad()) throw Error(ErrorCode::kIo, "langlink table unreadable");

  for (PageId id : source_ids) {
    auto it = raw_targets.find(id);
    if (it == raw_targets.end()) {
      result.unmapped.insert(id);
      continue;
    }
    PageId target;
    if (ParsePageId(it->second, &target)) {
      result.mapping.emplace(id, target);
      continue;
    }
    if (titles) {
      auto t = titles->find(it->second);
      if (t != titles->end()) {
        result.mapping.emplace(id, t->second);
        continue;
      }
    }
    result.unmapped.insert(id);
  }
  return result;
}

PageIdMapping MapPageIds(const std::set<PageId> &source_ids,
                         const std::string &langlink_path,
                         const std::string &target_language,
                         const TitleIndex *titles) {
  std::ifstream in(langlink_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read langlink table " + langlink_path);
  return MapPageIds(source_ids, in, target_language, titles);
}

// ---------------------------------------------------------------------------
// Dump streaming.

namespace {

class DumpParser {
 public:
  DumpParser(const std::set<PageId> &wanted,
             const std::function<void(RawArticle &&)> &sink,
             std::string default_language, DumpStats *stats)
      : wanted_(wanted),
        sink_(sink),
        language_(std::move(default_language)),
        stats_(stats),
        parser_(XML_ParserCreate("UTF-8")) {
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &DumpParser::OnStart, &DumpParser::OnEnd);
    XML_SetCharacterDataHandler(parser_, &DumpParser::OnText);
  }
  ~DumpParser() { XML_ParserFree(parser_); }

  DumpParser(const DumpParser &) = delete;
  DumpParser &operator=(const DumpParser &) = delete;

  void Parse(std::istream &in) {
    std::array<char, 1 << 16> buffer;
    while (true) {
      in.read(buffer.data(), buffer.size());
      std::streamsize n = in.gcount();
      bool final = n == 0;
      if (!final) stats_->bytes_parsed += static_cast<uint64_t>(n);
      if (XML_Parse(parser_, buffer.data(), static_cast<int>(n), final) ==
          XML_STATUS_ERROR) {
        if (failure_) std::rethrow_exception(failure_);
        Fail(XML_ErrorString(XML_GetErrorCode(parser_)));
      }
      if (final) break;
      if (in.bad()) Fail("read error");
    }
    if (in_page_) Fail("dump ended inside a page");
  }

 private:
  [[noreturn]] void Fail(const std::string &what) {
    int64_t offset = XML_GetCurrentByteIndex(parser_);
    std::string msg = "malformed dump at byte " + std::to_string(offset) + ": " +
                      what + "; last complete page id " +
                      (last_complete_ ? std::to_string(last_complete_) : "none");
    throw DumpError(msg, offset, last_complete_);
  }

  static void OnStart(void *data, const XML_Char *name, const XML_Char **attrs) {
    auto *self = static_cast<DumpParser *>(data);
    try {
      self->Start(name, attrs);
    } catch (...) {
      self->failure_ = std::current_exception();
      XML_StopParser(self->parser_, XML_FALSE);
    }
  }

  static void OnEnd(void *data, const XML_Char *name) {
    auto *self = static_cast<DumpParser *>(data);
    try {
      self->End(name);
    } catch (...) {
      self->failure_ = std::current_exception();
      XML_StopParser(self->parser_, XML_FALSE);
    }
  }

  static void OnText(void *data, const XML_Char *s, int len) {
    auto *self = static_cast<DumpParser *>(data);
    if (self->capture_) {
      self->field_.append(s, static_cast<std::size_t>(len));
      if (self->field_.size() > self->stats_->peak_buffer_bytes) {
        self->stats_->peak_buffer_bytes = self->field_.size();
      }
    }
  }

  // Element path relative to the root: "page", "page/title", ...
  std::string Path() const {
    std::string p;
    for (std::size_t i = 1; i < path_.size(); ++i) {
      if (i > 1) p += '/';
      p += path_[i];
    }
    return p;
  }

  void Start(const XML_Char *name, const XML_Char **attrs) {
    path_.emplace_back(name);
    if (path_.size() == 1) {
      for (int i = 0; attrs[i]; i += 2) {
        if (std::string_view(attrs[i]) == "xml:lang") language_ = attrs[i + 1];
      }
      return;
    }
    std::string p = Path();
    if (p == "page") {
      in_page_ = true;
      page_ = RawArticle();
      page_.language = language_;
      page_id_known_ = false;
      return;
    }
    if (!in_page_) return;
    if (p == "page/redirect") {
      page_.redirect = true;
    } else if (p == "page/title" || p == "page/id") {
      capture_ = true;
      field_.clear();
    } else if (p == "page/revision/text") {
      capture_ = !page_id_known_ || wanted_.count(page_.page_id) > 0;
      field_.clear();
    }
  }

  void End(const XML_Char *name) {
    std::string p = Path();
    path_.pop_back();
    (void)name;
    if (!in_page_) return;
    if (p == "page/title") {
      page_.title = field_;
    } else if (p == "page/id") {
      if (!ParsePageId(field_, &page_.page_id)) Fail("bad page id '" + field_ + "'");
      page_id_known_ = true;
    } else if (p == "page/revision/text") {
      if (capture_) page_.wikitext = std::move(field_);
    } else if (p == "page") {
      in_page_ = false;
      stats_->pages_seen++;
      if (wanted_.count(page_.page_id)) {
        stats_->pages_yielded++;
        if (page_.redirect) stats_->redirects_yielded++;
        sink_(std::move(page_));
      }
      last_complete_ = page_.page_id;
    }
    if (p == "page/title" || p == "page/id" || p == "page/revision/text") {
      capture_ = false;
      field_.clear();
    }
  }

  const std::set<PageId> &wanted_;
  const std::function<void(RawArticle &&)> &sink_;
  std::string language_;
  DumpStats *stats_;
  XML_Parser parser_;

  std::vector<std::string> path_;
  bool in_page_ = false;
  bool page_id_known_ = false;
  bool capture_ = false;
  std::string field_;
  RawArticle page_;
  PageId last_complete_ = 0;
  std::exception_ptr failure_;
};

}  // namespace

void StreamArticles(std::istream &dump, const std::set<PageId> &wanted,
                    const std::function<void(RawArticle &&)> &sink,
                    const std::string &default_language, DumpStats *stats) {
  DumpStats local;
  DumpParser parser(wanted, sink, default_language, stats ? stats : &local);
  parser.Parse(dump);
}

void StreamArticles(const std::string &dump_path,
                    const std::set<PageId> &wanted,
                    const std::function<void(RawArticle &&)> &sink,
                    const std::string &default_language, DumpStats *stats) {
  std::ifstream file(dump_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open dump " + dump_path);
  std::array<char, 3> magic{};
  file.read(magic.data(), magic.size());
  file.clear();
  file.seekg(0);

  namespace io = boost::iostreams;
  io::filtering_istream in;
  if (static_cast<unsigned char>(magic[0]) == 0x1f &&
      static_cast<unsigned char>(magic[1]) == 0x8b) {
    in.push(io::gzip_decompressor());
  } else if (magic[0] == 'B' && magic[1] == 'Z' && magic[2] == 'h') {
    in.push(io::bzip2_decompressor());
  }
  in.push(file);
  try {
    StreamArticles(in, wanted, sink, default_language, stats);
  } catch (const io::gzip_error &e) {
    throw DumpError(std::string("gzip stream error: ") + e.what(), -1, 0);
  } catch (const io::bzip2_error &e) {
    throw DumpError(std::string("bzip2 stream error: ") + e.what(), -1, 0);
  }
}

std::vector<RawArticle> ReadArticles(const std::string &dump_path,
                                     const std::set<PageId> &wanted,
                                     const std::string &default_language,
                                     DumpStats *stats) {
  std::vector<RawArticle> out;
  StreamArticles(
      dump_path, wanted, [&](RawArticle &&a) { out.push_back(std::move(a)); },
      default_language, stats);
  return out;
}

// ---------------------------------------------------------------------------
// Article documents.

std::vector<ArticleDoc> BuildArticleDocs(
    const std::vector<RawArticle> &articles,
    const std::map<PageId, std::string> &page_to_person,
    const AbbreviationList &abbreviations, int workers,
    BuildDocsStats *stats) {
  BuildDocsStats local;
  if (!stats) stats = &local;

  std::vector<const RawArticle *> todo;
  for (const RawArticle &a : articles) {
    if (a.redirect) {
      stats->redirects++;
    } else if (IsDisambiguationPage(a.wikitext)) {
      stats->disambiguations++;
    } else if (!page_to_person.count(a.page_id)) {
      stats->unbound++;
    } else {
      todo.push_back(&a);
    }
  }

  std::vector<ArticleDoc> docs(todo.size());
  std::vector<StripStats> strip_stats(todo.size());
  ParallelFor(todo.size(), workers, [&](std::size_t i) {
    const RawArticle &a = *todo[i];
    ArticleDoc &doc = docs[i];
    doc.article_id = a.page_id;
    doc.language = a.language;
    doc.title = a.title;
    doc.person_id = page_to_person.at(a.page_id);
    std::string plain = StripWikitext(a.wikitext, &strip_stats[i]);
    doc.sentences = SegmentSentences(plain, abbreviations);
  });
  for (const StripStats &s : strip_stats) stats->strip += s;

  std::vector<ArticleDoc> out;
  out.reserve(docs.size());
  for (ArticleDoc &d : docs) {
    if (d.sentences.empty()) {
      stats->empty++;
      continue;
    }
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(), [](const ArticleDoc &a, const ArticleDoc &b) {
    return a.article_id < b.article_id;
  });
  return out;
}

void WriteArticleStore(const std::vector<ArticleDoc> &docs, std::ostream &out) {
  for (const ArticleDoc &d : docs) {
    nlohmann::ordered_json j;
    j["article_id"] = d.article_id;
    j["language"] = d.language;
    j["title"] = d.title;
    j["person_id"] = d.person_id;
    auto &sentences = j["sentences"] = nlohmann::ordered_json::array();
    for (const Sentence &s : d.sentences) {
      sentences.push_back({{"index", s.index},
                           {"char_offset", s.char_offset},
                           {"text", s.text}});
    }
    out << j.dump() << '\n';
  }
}

std::vector<ArticleDoc> ReadArticleStore(std::istream &in) {
  std::vector<ArticleDoc> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      ArticleDoc d;
      d.article_id = j.at("article_id").get<PageId>();
      d.language = j.at("language").get<std::string>();
      d.title = j.at("title").get<std::string>();
      d.person_id = j.at("person_id").get<std::string>();
      for (const auto &s : j.at("sentences")) {
        d.sentences.push_back({s.at("index").get<int>(),
                               s.at("text").get<std::string>(),
                               s.at("char_offset").get<std::size_t>()});
      }
      docs.push_back(std::move(d));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kDataError,
                  "article store line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

}  // namespace gdsre
