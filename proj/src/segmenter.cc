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

#include "gdsre/segmenter.h"

#include <fstream>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/text.h"

namespace gdsre {

AbbreviationList ParseAbbreviations(std::string_view content) {
  AbbreviationList list;
  for (const std::string &raw : Split(content, '\n')) {
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    list.emplace(line);
  }
  return list;
}

AbbreviationList LoadAbbreviations(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read abbreviation list " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseAbbreviations(buffer.str());
}

const AbbreviationList &DefaultGermanAbbreviations() {
  static const AbbreviationList kList = {
      "Dr.",  "Prof.", "z. B.", "bzw.", "ca.", "St.", "u. a.", "Nr.",
      "Jh.",  "geb.",  "gest.", "usw.", "vgl.", "v. Chr.", "n. Chr.",
      "Hl.",  "Sr.",   "Jr.",   "etc.", "evtl.", "d. h.", "s.",
  };
  return kList;
}

namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsAsciiSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Length of a closing quote or bracket at text[pos], 0 if none.
std::size_t CloserLength(std::string_view text, std::size_t pos) {
  char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  for (std::string_view q : {"“", "”", "«", "»", "’", "‘"}) {
    if (text.substr(pos, q.size()) == q) return q.size();
  }
  return 0;
}

// Token ending right before `pos`, trimmed of leading punctuation.
std::string_view TokenBefore(std::string_view line, std::size_t pos,
                             std::size_t *token_start) {
  std::size_t start = pos;
  while (start > 0 && !IsAsciiSpace(line[start - 1])) --start;
  *token_start = start;
  std::string_view token = line.substr(start, pos - start);
  while (!token.empty() && !IsAlnum(CodePointAt(token, 0))) {
    std::size_t len = EncodeUtf8(std::u32string(1, CodePointAt(token, 0))).size();
    token.remove_prefix(len);
  }
  return token;
}

bool SuppressesBreak(std::string_view line, std::size_t dot,
                     const AbbreviationList &abbreviations) {
  std::size_t start;
  std::string_view token = TokenBefore(line, dot, &start);
  if (token.empty()) return false;
  std::string with_dot = std::string(token) + ".";
  if (abbreviations.count(with_dot)) return true;

  // Two-token abbreviations such as "z. B." or "u. a.".
  if (start > 0) {
    std::size_t prev_end = start;
    while (prev_end > 0 && IsAsciiSpace(line[prev_end - 1])) --prev_end;
    std::size_t prev_start;
    std::string_view prev = TokenBefore(line, prev_end, &prev_start);
    if (!prev.empty()) {
      std::string pair = std::string(prev) + " " + with_dot;
      if (abbreviations.count(pair)) return true;
    }
  }

  std::u32string cps = DecodeUtf8(token);
  if (cps.size() == 1 && IsAlpha(cps[0])) return true;

  bool digits = token.size() <= 2;
  for (char c : token) digits = digits && c >= '0' && c <= '9';
  return digits;
}

}  // namespace

std::vector<Sentence> SegmentSentences(std::string_view plain_text,
                                       const AbbreviationList &abbreviations) {
  std::vector<Sentence> sentences;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string_view span = plain_text.substr(begin, end - begin);
    std::string_view trimmed = Trim(span);
    if (trimmed.empty()) return;
    Sentence s;
    s.index = static_cast<int>(sentences.size());
    s.text = std::string(trimmed);
    s.char_offset = begin + static_cast<std::size_t>(trimmed.data() - span.data());
    sentences.push_back(std::move(s));
  };

  std::size_t line_start = 0;
  while (line_start <= plain_text.size()) {
    std::size_t line_end = plain_text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = plain_text.size();
    std::string_view line = plain_text.substr(line_start, line_end - line_start);

    std::size_t sentence_start = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      if (!IsTerminator(line[i])) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < line.size() && IsTerminator(line[j])) ++j;
      while (j < line.size()) {
        std::size_t len = CloserLength(line, j);
        if (len == 0) break;
        j += len;
      }
      if (j < line.size() && !IsAsciiSpace(line[j])) {
        i = j;
        continue;
      }
      std::size_t next = j;
      while (next < line.size() && IsAsciiSpace(line[next])) ++next;
      bool boundary = true;
      if (next < line.size() && IsLower(CodePointAt(line, next))) boundary = false;
      if (boundary && line[i] == '.' && j == i + 1 &&
          SuppressesBreak(line, i, abbreviations)) {
        boundary = false;
      }
      if (boundary) {
        emit(line_start + sentence_start, line_start + j);
        sentence_start = j;
      }
      i = j;
    }
    emit(line_start + sentence_start, line_end);
    line_start = line_end + 1;
  }
  return sentences;
}

}  // namespace gdsre
