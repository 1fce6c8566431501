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

#ifndef GDSRE_WIKITEXT_H_
#define GDSRE_WIKITEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace gdsre {

// Counters for constructs removed or abandoned while stripping markup.
struct StripStats {
  std::size_t templates = 0;
  std::size_t tables = 0;
  std::size_t references = 0;
  std::size_t comments = 0;
  std::size_t media_links = 0;
  std::size_t headings = 0;
  // Constructs that never closed; everything after the opener is dropped.
  std::size_t unparsed = 0;

  StripStats &operator+=(const StripStats &other);
};

// Converts wikitext to plain text. Link display text is kept, targets,
// templates, tables, references, media and category links are dropped.
// Paragraphs come out one per line. Parenthesized birth/death notation such as
// "(*21 Oktober 1992 in Stuttgart)" survives verbatim. Output is NFC.
std::string StripWikitext(std::string_view wikitext, StripStats *stats = nullptr);

// True when the wikitext carries a disambiguation marker template.
bool IsDisambiguationPage(std::string_view wikitext);

}  // namespace gdsre

#endif  // GDSRE_WIKITEXT_H_
