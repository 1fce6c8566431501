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

#ifndef GDSRE_INGEST_H_
#define GDSRE_INGEST_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "gdsre/error.h"
#include "gdsre/segmenter.h"
#include "gdsre/wikitext.h"

namespace gdsre {

using PageId = int64_t;

struct RawArticle {
  PageId page_id = 0;
  std::string language;
  std::string title;
  std::string wikitext;
  bool redirect = false;
};

struct ArticleDoc {
  PageId article_id = 0;
  std::string language;
  std::string title;
  std::string person_id;
  std::vector<Sentence> sentences;

  bool operator==(const ArticleDoc &) const = default;
};

// ---------------------------------------------------------------------------
// Cross-language page id mapping.

struct PageIdMapping {
  std::map<PageId, PageId> mapping;
  std::set<PageId> unmapped;
};

// Title -> page id lookup for langlink rows whose target is a title.
using TitleIndex = std::map<std::string, PageId, std::less<>>;

// Reads a tab-separated page table (page_id, title).
TitleIndex LoadTitleIndex(const std::string &path);

// Maps source page ids to `target_language` page ids using a langlink table
// with rows (source_id, language, target). The target column is either a page
// id or a title resolved through `titles`. Rows for other source ids are not
// retained. Two rows giving different targets for one requested id are an
// error naming that id.
PageIdMapping MapPageIds(const std::set<PageId> &source_ids,
                         std::istream &langlinks,
                         const std::string &target_language,
                         const TitleIndex *titles = nullptr);
PageIdMapping MapPageIds(const std::set<PageId> &source_ids,
                         const std::string &langlink_path,
                         const std::string &target_language,
                         const TitleIndex *titles = nullptr);

// ---------------------------------------------------------------------------
// Dump streaming.

// Raised for malformed or truncated dumps.
class DumpError : public Error {
 public:
  DumpError(const std::string &message, int64_t byte_offset,
            PageId last_complete_page)
      : Error(ErrorCode::kDataError, message,
              last_complete_page > 0
                  ? std::vector<std::string>{std::to_string(last_complete_page)}
                  : std::vector<std::string>{}),
        byte_offset_(byte_offset),
        last_complete_page_(last_complete_page) {}

  int64_t byte_offset() const { return byte_offset_; }
  PageId last_complete_page() const { return last_complete_page_; }

 private:
  int64_t byte_offset_;
  PageId last_complete_page_;
};

struct DumpStats {
  std::size_t pages_seen = 0;
  std::size_t pages_yielded = 0;
  std::size_t redirects_yielded = 0;
  uint64_t bytes_parsed = 0;
  // Largest wikitext buffer held at any time.
  std::size_t peak_buffer_bytes = 0;
};

// Streams a MediaWiki XML export (plain, gzip or bzip2, detected from magic
// bytes) and calls `sink` for each page whose id is in `wanted`, in dump order.
// Only the current wanted page is buffered. `default_language` is used when the
// root element carries no xml:lang attribute.
void StreamArticles(const std::string &dump_path,
                    const std::set<PageId> &wanted,
                    const std::function<void(RawArticle &&)> &sink,
                    const std::string &default_language = "",
                    DumpStats *stats = nullptr);
void StreamArticles(std::istream &dump, const std::set<PageId> &wanted,
                    const std::function<void(RawArticle &&)> &sink,
                    const std::string &default_language = "",
                    DumpStats *stats = nullptr);

std::vector<RawArticle> ReadArticles(const std::string &dump_path,
                                     const std::set<PageId> &wanted,
                                     const std::string &default_language = "",
                                     DumpStats *stats = nullptr);

// ---------------------------------------------------------------------------
// Article documents.

struct BuildDocsStats {
  std::size_t redirects = 0;
  std::size_t disambiguations = 0;
  std::size_t unbound = 0;  // no person record for the page id
  std::size_t empty = 0;    // no sentences after stripping
  StripStats strip;
};

// Strips and segments raw articles on `workers` threads. Redirects,
// disambiguation pages and pages without a person are skipped and counted.
// The result is sorted by article_id.
std::vector<ArticleDoc> BuildArticleDocs(
    const std::vector<RawArticle> &articles,
    const std::map<PageId, std::string> &page_to_person,
    const AbbreviationList &abbreviations, int workers,
    BuildDocsStats *stats = nullptr);

// Line-delimited JSON store, one object per article.
void WriteArticleStore(const std::vector<ArticleDoc> &docs, std::ostream &out);
std::vector<ArticleDoc> ReadArticleStore(std::istream &in);

}  // namespace gdsre

#endif  // GDSRE_INGEST_H_
