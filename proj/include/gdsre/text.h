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

#ifndef GDSRE_TEXT_H_
#define GDSRE_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gdsre {

// All offsets in this library are UTF-8 byte offsets.

// Unicode character classes backed by ICU.
bool IsAlnum(char32_t c);
bool IsSpace(char32_t c);
bool IsLower(char32_t c);
bool IsUpper(char32_t c);
bool IsAlpha(char32_t c);

// Simple (one-to-one) case folding, so folded text keeps a code point
// correspondence with the original.
char32_t FoldCase(char32_t c);

// Decodes UTF-8. Malformed sequences become U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

// NFC normalization.
std::string ToNfc(std::string_view text);

// Canonical gazetteer key: NFC, case-folded, whitespace runs collapsed to a
// single space, trimmed. Idempotent.
std::string NormalizeSurface(std::string_view text);

// Case-folded code point view of a UTF-8 string with whitespace runs collapsed
// to one space. begin[i]/end[i] give the byte range of folded unit i in the
// source string.
struct FoldedText {
  std::u32string chars;
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;
};

FoldedText FoldForMatching(std::string_view text);

// The code point ending right before / starting at byte offset `pos`, or 0
// when at the string edge.
char32_t CodePointBefore(std::string_view text, std::size_t pos);
char32_t CodePointAt(std::string_view text, std::size_t pos);

std::string_view Trim(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::string ToLowerAscii(std::string_view s);

}  // namespace gdsre

#endif  // GDSRE_TEXT_H_
