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

#include "gdsre/wikitext.h"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gdsre/text.h"

namespace gdsre {

StripStats &StripStats::operator+=(const StripStats &other) {
  templates += other.templates;
  tables += other.tables;
  references += other.references;
  comments += other.comments;
  media_links += other.media_links;
  headings += other.headings;
  unparsed += other.unparsed;
  return *this;
}

namespace {

// Tags whose content is never prose.
constexpr std::array<std::string_view, 15> kDropContentTags = {
    "ref",        "references", "gallery", "math",  "timeline",
    "score",      "syntaxhighlight", "source", "imagemap", "chem",
    "hiero",      "graph",      "templatedata", "mapframe", "ce",
};

// Link namespaces that carry no display text.
constexpr std::array<std::string_view, 9> kMediaNamespaces = {
    "datei", "file", "bild", "image", "kategorie", "category", "media",
    "medium", "commons",
};

constexpr std::array<std::string_view, 8> kDisambiguationTemplates = {
    "{{begriffsklärung", "{{disambiguation", "{{disambig", "{{dab",
    "{{hndis", "{{geodis", "{{set index", "{{begriffsklaerung",
};

bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool StartsWithAt(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.substr(pos, prefix.size()) == prefix;
}

bool AtLineStart(std::string_view s, std::size_t pos) {
  while (pos > 0) {
    char c = s[pos - 1];
    if (c == '\n') return true;
    if (c != ' ' && c != '\t') return false;
    --pos;
  }
  return true;
}

class Stripper {
 public:
  explicit Stripper(StripStats *stats) : stats_(stats) {}

  std::string Run(std::string_view wikitext) {
    std::string text = RemoveComments(wikitext);
    text = RemoveTags(text);
    text = RemoveBlocks(text);
    text = ResolveLinks(text);
    text = ResolveExternalLinks(text);
    text = RemoveQuoteMarkup(text);
    text = DecodeEntities(text);
    text = Paragraphs(text);
    return ToNfc(text);
  }

 private:
  std::string RemoveComments(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t open = s.find("<!--", i);
      if (open == std::string_view::npos) {
        out.append(s.substr(i));
        break;
      }
      out.append(s.substr(i, open - i));
      std::size_t close = s.find("-->", open + 4);
      if (close == std::string_view::npos) {
        stats_->unparsed++;
        break;
      }
      stats_->comments++;
      i = close + 3;
    }
    return out;
  }

  // Parses a tag starting at s[pos] == '<'. Returns false if it is not a tag.
  struct Tag {
    std::string name;
    bool closing = false;
    bool self_closing = false;
    std::size_t end = 0;  // one past '>'
  };

  static bool ParseTag(std::string_view s, std::size_t pos, Tag *tag) {
    std::size_t i = pos + 1;
    if (i < s.size() && s[i] == '/') {
      tag->closing = true;
      ++i;
    }
    std::size_t name_start = i;
    while (i < s.size() && (IsAsciiAlpha(s[i]) || (i > name_start && s[i] >= '0' && s[i] <= '9'))) ++i;
    if (i == name_start) return false;
    if (i < s.size() && s[i] != '>' && s[i] != '/' && s[i] != ' ' &&
        s[i] != '\t' && s[i] != '\n') {
      return false;
    }
    tag->name = ToLowerAscii(s.substr(name_start, i - name_start));
    std::size_t close = s.find('>', i);
    std::size_t next_open = s.find('<', i);
    if (close == std::string_view::npos ||
        (next_open != std::string_view::npos && next_open < close)) {
      return false;
    }
    tag->self_closing = close > pos && s[close - 1] == '/';
    tag->end = close + 1;
    return true;
  }

  static bool DropsContent(const std::string &name) {
    for (auto t : kDropContentTags) {
      if (name == t) return true;
    }
    return false;
  }

  // Finds the end of the closing tag </name ...> at or after `from`.
  static std::size_t FindClosingTag(std::string_view s, std::size_t from,
                                    const std::string &name) {
    std::size_t i = from;
    while (true) {
      std::size_t lt = s.find("</", i);
      if (lt == std::string_view::npos) return std::string_view::npos;
      Tag tag;
      if (ParseTag(s, lt, &tag) && tag.closing && tag.name == name) {
        return tag.end;
      }
      i = lt + 2;
    }
  }

  std::string RemoveTags(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t lt = s.find('<', i);
      if (lt == std::string_view::npos) {
        out.append(s.substr(i));
        break;
      }
      out.append(s.substr(i, lt - i));
      Tag tag;
      if (!ParseTag(s, lt, &tag)) {
        out += '<';
        i = lt + 1;
        continue;
      }
      if (DropsContent(tag.name) && !tag.closing) {
        if (tag.name == "ref" || tag.name == "references") stats_->references++;
        if (tag.self_closing) {
          i = tag.end;
          continue;
        }
        std::size_t end = FindClosingTag(s, tag.end, tag.name);
        if (end == std::string_view::npos) {
          stats_->unparsed++;
          i = tag.end;
        } else {
          i = end;
        }
        continue;
      }
      if (tag.name == "br") out += ' ';
      i = tag.end;
    }
    return out;
  }

  // Removes templates {{...}} and tables {| ... |}, honouring nesting.
  std::string RemoveBlocks(std::string_view s) {
    enum Kind : uint8_t { kTemplate, kTable };
    std::string out;
    std::vector<Kind> stack;
    std::size_t opened_at = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      if (StartsWithAt(s, i, "{{")) {
        if (stack.empty()) {
          opened_at = out.size();
          stats_->templates++;
        }
        stack.push_back(kTemplate);
        i += 2;
        continue;
      }
      if (StartsWithAt(s, i, "{|") && AtLineStart(s, i)) {
        if (stack.empty()) {
          opened_at = out.size();
          stats_->tables++;
        }
        stack.push_back(kTable);
        i += 2;
        continue;
      }
      if (!stack.empty()) {
        if (stack.back() == kTemplate && StartsWithAt(s, i, "}}")) {
          stack.pop_back();
          i += 2;
          continue;
        }
        if (stack.back() == kTable && StartsWithAt(s, i, "|}") &&
            AtLineStart(s, i)) {
          stack.pop_back();
          i += 2;
          continue;
        }
        ++i;
        continue;
      }
      out += s[i++];
    }
    if (!stack.empty()) {
      stats_->unparsed++;
      out.resize(opened_at);
    }
    return out;
  }

  // Index of the "]]" closing the "[[" at `open`, or npos.
  static std::size_t MatchLink(std::string_view s, std::size_t open) {
    int depth = 0;
    std::size_t i = open;
    while (i + 1 < s.size()) {
      if (s[i] == '[' && s[i + 1] == '[') {
        ++depth;
        i += 2;
      } else if (s[i] == ']' && s[i + 1] == ']') {
        if (--depth == 0) return i;
        i += 2;
      } else {
        ++i;
      }
    }
    return std::string_view::npos;
  }

  // Splits link content on '|' outside nested links.
  static std::vector<std::string_view> SplitPipes(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i + 1 < s.size() && s[i] == '[' && s[i + 1] == '[') {
        ++depth;
        ++i;
      } else if (i + 1 < s.size() && s[i] == ']' && s[i + 1] == ']') {
        --depth;
        ++i;
      } else if (s[i] == '|' && depth == 0) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(s.substr(start));
    return parts;
  }

  static bool IsLanguagePrefix(std::string_view p) {
    if (p.size() < 2) return false;
    std::size_t i = 0;
    while (i < p.size() && p[i] >= 'a' && p[i] <= 'z') ++i;
    if (i < 2 || i > 3) return p == "simple";
    while (i < p.size()) {
      if (p[i] != '-') return false;
      ++i;
      std::size_t run = i;
      while (i < p.size() && p[i] >= 'a' && p[i] <= 'z') ++i;
      if (i == run) return false;
    }
    return true;
  }

  static bool IsMediaOrInterwiki(std::string_view target) {
    std::size_t colon = target.find(':');
    if (colon == std::string_view::npos) return false;
    std::string prefix = ToLowerAscii(Trim(target.substr(0, colon)));
    for (auto ns : kMediaNamespaces) {
      if (prefix == ns) return true;
    }
    // Interlanguage links are written with a literal lowercase code.
    return IsLanguagePrefix(Trim(target.substr(0, colon)));
  }

  std::string ResolveLinks(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t open = s.find("[[", i);
      if (open == std::string_view::npos) {
        out.append(s.substr(i));
        break;
      }
      out.append(s.substr(i, open - i));
      std::size_t close = MatchLink(s, open);
      if (close == std::string_view::npos) {
        stats_->unparsed++;
        i = open + 2;
        continue;
      }
      std::string_view inner = s.substr(open + 2, close - open - 2);
      i = close + 2;
      auto parts = SplitPipes(inner);
      std::string_view target = Trim(parts[0]);
      if (!target.empty() && target.front() == ':') {
        target.remove_prefix(1);
      } else if (IsMediaOrInterwiki(target)) {
        stats_->media_links++;
        continue;
      }
      std::string display;
      if (parts.size() > 1) {
        std::size_t display_start = parts[1].data() - inner.data();
        display = ResolveLinks(inner.substr(display_start));
        if (Trim(display).empty()) {
          // Pipe trick: drop a trailing parenthetical from the target.
          std::string_view t = target;
          std::size_t paren = t.rfind(" (");
          if (paren != std::string_view::npos && t.back() == ')') t = t.substr(0, paren);
          display = std::string(t);
        }
      } else {
        display = std::string(target);
      }
      out += display;
    }
    return out;
  }

  static bool IsUrlStart(std::string_view s, std::size_t pos) {
    for (std::string_view scheme : {"http://", "https://", "//", "ftp://", "mailto:"}) {
      if (StartsWithAt(s, pos, scheme)) return true;
    }
    return false;
  }

  std::string ResolveExternalLinks(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '[' && IsUrlStart(s, i + 1)) {
        std::size_t close = s.find(']', i);
        std::size_t nl = s.find('\n', i);
        if (close != std::string_view::npos && (nl == std::string_view::npos || close < nl)) {
          std::string_view inner = s.substr(i + 1, close - i - 1);
          std::size_t space = inner.find(' ');
          if (space != std::string_view::npos) out.append(Trim(inner.substr(space + 1)));
          i = close + 1;
          continue;
        }
      }
      out += s[i++];
    }
    return out;
  }

  static std::string RemoveQuoteMarkup(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '\'') {
        std::size_t run = i;
        while (run < s.size() && s[run] == '\'') ++run;
        if (run - i >= 2) {
          i = run;
          continue;
        }
      }
      out += s[i++];
    }
    return out;
  }

  static std::string DecodeEntities(std::string_view s) {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 12>
        kNamed = {{{"nbsp", " "},   {"amp", "&"},     {"lt", "<"},
                   {"gt", ">"},     {"quot", "\""},   {"apos", "'"},
                   {"ndash", "–"}, {"mdash", "—"}, {"thinsp", " "},
                   {"shy", ""},     {"dagger", "†"}, {"times", "×"}}};
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '&') {
        std::size_t semi = s.find(';', i);
        if (semi != std::string_view::npos && semi - i <= 10) {
          std::string_view name = s.substr(i + 1, semi - i - 1);
          bool done = false;
          if (!name.empty() && name[0] == '#') {
            char32_t cp = 0;
            bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
            std::string_view digits = name.substr(hex ? 2 : 1);
            bool ok = !digits.empty();
            for (char c : digits) {
              int v;
              if (c >= '0' && c <= '9') v = c - '0';
              else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
              else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
              else { ok = false; break; }
              cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
              if (cp > 0x10FFFF) { ok = false; break; }
            }
            if (ok) {
              out += EncodeUtf8(std::u32string(1, cp == 0xA0 ? U' ' : cp));
              done = true;
            }
          } else {
            for (const auto &[n, v] : kNamed) {
              if (n == name) {
                out += v;
                done = true;
                break;
              }
            }
          }
          if (done) {
            i = semi + 1;
            continue;
          }
        }
      }
      out += s[i++];
    }
    return out;
  }

  static bool IsHeading(std::string_view line) {
    return line.size() >= 2 && line.front() == '=' && line.back() == '=';
  }

  static std::string RemoveMagicWords(std::string_view line) {
    std::string out;
    std::size_t i = 0;
    while (i < line.size()) {
      if (StartsWithAt(line, i, "__")) {
        std::size_t j = i + 2;
        while (j < line.size() && line[j] >= 'A' && line[j] <= 'Z') ++j;
        if (j > i + 2 && StartsWithAt(line, j, "__")) {
          i = j + 2;
          continue;
        }
      }
      out += line[i++];
    }
    return out;
  }

  // Tidies spacing left behind by removed constructs.
  static std::string CleanParagraph(std::string_view p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == '\t' || p[i] == '\r') {
        s += ' ';
      } else if (StartsWithAt(p, i, "\xC2\xA0")) {
        s += ' ';
        ++i;
      } else {
        s += p[i];
      }
    }
    std::string collapsed;
    for (char c : s) {
      if (c == ' ' && (collapsed.empty() || collapsed.back() == ' ')) continue;
      collapsed += c;
    }
    std::string out;
    for (std::size_t i = 0; i < collapsed.size(); ++i) {
      char c = collapsed[i];
      if (c == ' ' && i + 1 < collapsed.size()) {
        char n = collapsed[i + 1];
        if (n == ',' || n == '.' || n == ';' || n == ':' || n == ')' ||
            n == '!' || n == '?') {
          continue;
        }
      }
      if (c == ' ' && !out.empty() && out.back() == '(') continue;
      if (c == ')' && !out.empty() && out.back() == '(') {
        out.pop_back();
        if (!out.empty() && out.back() == ' ') out.pop_back();
        continue;
      }
      if ((c == ',' || c == ';') && !out.empty() && out.back() == '(') continue;
      out += c;
    }
    return std::string(Trim(out));
  }

  std::string Paragraphs(std::string_view s) {
    std::vector<std::string> paragraphs;
    std::string current;
    auto flush = [&] {
      std::string p = CleanParagraph(current);
      if (!p.empty()) paragraphs.push_back(std::move(p));
      current.clear();
    };
    for (const std::string &raw : Split(s, '\n')) {
      std::string_view line = Trim(raw);
      if (line.empty() || StartsWithAt(line, 0, "----")) {
        flush();
        continue;
      }
      if (IsHeading(line)) {
        stats_->headings++;
        flush();
        continue;
      }
      std::size_t markers = 0;
      while (markers < line.size() &&
             (line[markers] == '*' || line[markers] == '#' ||
              line[markers] == ':' || line[markers] == ';')) {
        ++markers;
      }
      if (markers > 0) {
        flush();
        current = RemoveMagicWords(line.substr(markers));
        flush();
        continue;
      }
      if (!current.empty()) current += ' ';
      current += RemoveMagicWords(line);
    }
    flush();
    std::string out;
    for (std::size_t i = 0; i < paragraphs.size(); ++i) {
      if (i > 0) out += '\n';
      out += paragraphs[i];
    }
    return out;
  }

  StripStats *stats_;
};

}  // namespace

std::string StripWikitext(std::string_view wikitext, StripStats *stats) {
  StripStats local;
  Stripper stripper(stats ? stats : &local);
  return stripper.Run(wikitext);
}

bool IsDisambiguationPage(std::string_view wikitext) {
  std::string folded = NormalizeSurface(wikitext);
  for (auto marker : kDisambiguationTemplates) {
    std::size_t pos = 0;
    while ((pos = folded.find(marker, pos)) != std::string::npos) {
      std::size_t after = pos + marker.size();
      if (after >= folded.size() || folded[after] == '}' ||
          folded[after] == '|' || folded[after] == ' ') {
        return true;
      }
      pos = after;
    }
  }
  return false;
}

}  // namespace gdsre
