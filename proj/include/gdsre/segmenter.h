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

#ifndef GDSRE_SEGMENTER_H_
#define GDSRE_SEGMENTER_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gdsre {

struct Sentence {
  int index = 0;
  std::string text;
  std::size_t char_offset = 0;  // byte offset into the article plain text

  bool operator==(const Sentence &) const = default;
};

using AbbreviationList = std::set<std::string, std::less<>>;

// One abbreviation per line, UTF-8, '#' starts a comment line. Entries keep
// their trailing period ("Dr.", "z. B.").
AbbreviationList LoadAbbreviations(const std::string &path);
AbbreviationList ParseAbbreviations(std::string_view content);

// German defaults shipped with the library.
const AbbreviationList &DefaultGermanAbbreviations();

// Splits plain text into sentences. Newlines always end a sentence. A '.', '!'
// or '?' followed by whitespace ends a sentence unless the token before it is
// a listed abbreviation, a single letter initial, or a one or two digit
// number (German day/ordinal notation), or the next word starts lowercase.
std::vector<Sentence> SegmentSentences(std::string_view plain_text,
                                       const AbbreviationList &abbreviations);

}  // namespace gdsre

#endif  // GDSRE_SEGMENTER_H_
