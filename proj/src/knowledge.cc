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

#include "gdsre/knowledge.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gdsre/error.h"
#include "gdsre/text.h"
#include "json.hpp"

namespace gdsre {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Dates.

namespace {

bool IsLeapYear(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int DaysInMonth(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && IsLeapYear(year)) return 29;
  return kDays[month - 1];
}

bool ParseInt(std::string_view s, int64_t *out) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ParseDouble(std::string_view s, double *out) {
  s = Trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(*out);
}

}  // namespace

std::string PartialDate::ToString() const {
  char buf[32];
  if (month && day) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, *month, *day);
  } else if (month) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, *month);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d", year);
  }
  return buf;
}

bool IsValidPartialDate(int year, std::optional<int> month, std::optional<int> day) {
  if (day && !month) return false;
  if (month && (*month < 1 || *month > 12)) return false;
  if (day && (*day < 1 || *day > DaysInMonth(year, *month))) return false;
  return true;
}

std::optional<PartialDate> ParsePartialDate(std::string_view text) {
  text = Trim(text);
  std::size_t t = text.find('T');
  if (t != std::string_view::npos) text = text.substr(0, t);
  if (text.empty()) return std::nullopt;
  bool negative = text.front() == '-';
  if (negative || text.front() == '+') text.remove_prefix(1);
  auto parts = Split(text, '-');
  if (parts.empty() || parts.size() > 3) return std::nullopt;
  int64_t values[3] = {0, 0, 0};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty() || !ParseInt(parts[i], &values[i]) || values[i] < 0) {
      return std::nullopt;
    }
  }
  PartialDate d;
  d.year = static_cast<int>(negative ? -values[0] : values[0]);
  // Knowledge-base exports encode unknown month/day as 00.
  if (parts.size() >= 2 && values[1] != 0) d.month = static_cast<int>(values[1]);
  if (parts.size() == 3 && values[2] != 0 && d.month) d.day = static_cast<int>(values[2]);
  if (!IsValidPartialDate(d.year, d.month, d.day)) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// Names.

bool AddName(NameSet &set, std::string_view name) {
  std::string trimmed(Trim(name));
  if (trimmed.empty()) return false;
  std::string key = NormalizeSurface(trimmed);
  for (const std::string &existing : set) {
    if (NormalizeSurface(existing) == key) return false;
  }
  set.push_back(std::move(trimmed));
  return true;
}

bool NameSetsOverlap(const NameSet &a, const NameSet &b) {
  std::set<std::string> keys;
  for (const auto &n : a) keys.insert(NormalizeSurface(n));
  for (const auto &n : b) {
    if (keys.count(NormalizeSurface(n))) return true;
  }
  return false;
}

std::string PersonRecord::CanonicalName(const std::string &language) const {
  auto it = names.find(language);
  if (it != names.end() && !it->second.canonical.empty()) return it->second.canonical;
  for (const auto &[lang, name] : names) {
    if (!name.canonical.empty()) return name.canonical;
  }
  return "";
}

// ---------------------------------------------------------------------------
// Person list.

namespace {

// Splits one delimited record. Quotes are honoured for CSV only.
std::vector<std::string> SplitRecord(const std::string &line, char delimiter) {
  if (delimiter == '\t') {
    auto fields = Split(line, '\t');
    for (auto &f : fields) {
      if (!f.empty() && f.back() == '\r') f.pop_back();
    }
    return fields;
  }
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

// Reads a logical CSV record, which may span lines inside quotes.
bool ReadRecord(std::istream &in, char delimiter, std::string *record) {
  record->clear();
  std::string line;
  if (!std::getline(in, line)) return false;
  *record = line;
  if (delimiter == '\t') return true;
  auto open_quotes = [](const std::string &s) {
    std::size_t n = 0;
    for (char c : s) n += c == '"';
    return n % 2 == 1;
  };
  while (open_quotes(*record) && std::getline(in, line)) {
    *record += '\n';
    *record += line;
  }
  return true;
}

std::optional<PlaceEntry> ReadPlace(const std::map<std::string, std::string> &row,
                                    const std::string &prefix,
                                    PersonListStats *stats) {
  auto get = [&](const std::string &key) -> std::string {
    auto it = row.find(key);
    return it == row.end() ? std::string() : std::string(Trim(it->second));
  };
  std::string name = get(prefix);
  if (name.empty()) return std::nullopt;
  PlaceEntry place;
  AddName(place.names, name);
  int64_t id;
  std::string id_cell = get(prefix + "_geonames_id");
  if (!id_cell.empty()) {
    if (ParseInt(id_cell, &id) && id > 0) {
      place.geonames_id = id;
    } else {
      stats->bad_numbers++;
    }
  }
  std::string lat_cell = get(prefix + "_lat");
  std::string lon_cell = get(prefix + "_lon");
  double lat, lon;
  if (!lat_cell.empty() && !lon_cell.empty()) {
    if (ParseDouble(lat_cell, &lat) && ParseDouble(lon_cell, &lon) &&
        std::abs(lat) <= 90 && std::abs(lon) <= 180) {
      place.lat = lat;
      place.lon = lon;
    } else {
      stats->bad_numbers++;
    }
  }
  return place;
}

}  // namespace

std::vector<PersonRecord> ParsePersonList(std::istream &in, char delimiter,
                                          const std::string &name_language,
                                          PersonListStats *stats) {
  PersonListStats local;
  if (!stats) stats = &local;
  std::string record;
  if (!ReadRecord(in, delimiter, &record)) {
    throw Error(ErrorCode::kDataError, "person list is empty (no header)");
  }
  std::vector<std::string> header = SplitRecord(record, delimiter);
  for (auto &h : header) h = ToLowerAscii(Trim(h));
  auto has = [&](std::string_view col) {
    for (const auto &h : header) {
      if (h == col) return true;
    }
    return false;
  };
  if (!has("person_id") || !has("name")) {
    throw Error(ErrorCode::kDataError,
                "person list header must contain person_id and name");
  }

  std::vector<PersonRecord> records;
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (ReadRecord(in, delimiter, &record)) {
    ++line_no;
    if (Trim(record).empty()) continue;
    std::vector<std::string> fields = SplitRecord(record, delimiter);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < fields.size(); ++i) {
      row[header[i]] = fields[i];
    }
    auto get = [&](const std::string &key) -> std::string {
      auto it = row.find(key);
      return it == row.end() ? std::string() : std::string(Trim(it->second));
    };

    PersonRecord p;
    p.person_id = get("person_id");
    if (p.person_id.empty()) {
      throw Error(ErrorCode::kDataError,
                  "person list line " + std::to_string(line_no) + ": empty person_id");
    }
    if (!seen.insert(p.person_id).second) {
      throw Error(ErrorCode::kDataError, "duplicate person_id " + p.person_id,
                  {p.person_id});
    }
    p.qid = get("qid");
    PersonName &name = p.names[name_language];
    name.canonical = get("name");
    if (name.canonical.empty()) {
      throw Error(ErrorCode::kDataError,
                  "person " + p.person_id + " has an empty name", {p.person_id});
    }
    for (const auto &alias : Split(get("aliases"), ';')) AddName(name.aliases, alias);

    for (const char *col : {"en_page_id", "target_page_id"}) {
      std::string cell = get(col);
      if (cell.empty()) continue;
      int64_t id;
      if (ParseInt(cell, &id) && id > 0) {
        (std::string_view(col) == "en_page_id" ? p.en_page_id : p.target_page_id) = id;
      } else {
        stats->bad_numbers++;
      }
    }
    for (const char *col : {"birthdate", "deathdate"}) {
      std::string cell = get(col);
      if (cell.empty()) continue;
      auto date = ParsePartialDate(cell);
      if (!date) {
        stats->bad_dates++;
        continue;
      }
      (std::string_view(col) == "birthdate" ? p.birthdate : p.deathdate) = date;
    }
    p.birthplace = ReadPlace(row, "birthplace", stats);
    p.deathplace = ReadPlace(row, "deathplace", stats);
    for (const auto &label : Split(get("occupation"), ';')) {
      std::string l(Trim(label));
      if (l.empty()) continue;
      p.occupations.push_back({l, "", ""});
    }
    records.push_back(std::move(p));
    stats->rows++;
  }
  return records;
}

std::vector<PersonRecord> LoadPersonList(const std::string &path,
                                         const std::string &name_language,
                                         PersonListStats *stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read person list " + path);
  bool csv = path.size() >= 4 && ToLowerAscii(path.substr(path.size() - 4)) == ".csv";
  return ParsePersonList(in, csv ? ',' : '\t', name_language, stats);
}

// ---------------------------------------------------------------------------
// Knowledge base.

namespace {

LabelMap ReadLabels(const json &j) {
  LabelMap labels;
  if (!j.is_object()) return labels;
  for (const auto &[lang, value] : j.items()) {
    if (value.is_string()) labels[lang] = value.get<std::string>();
  }
  return labels;
}

KbPlace ReadKbPlace(const json &j) {
  KbPlace place;
  place.labels = ReadLabels(j.value("labels", json::object()));
  if (j.contains("geonames_id") && j["geonames_id"].is_number_integer()) {
    place.geonames_id = j["geonames_id"].get<int64_t>();
  }
  if (j.contains("lat") && j.contains("lon") && j["lat"].is_number() &&
      j["lon"].is_number()) {
    place.lat = j["lat"].get<double>();
    place.lon = j["lon"].get<double>();
  }
  return place;
}

std::vector<LabelMap> ReadLabelList(const json &j, const char *key) {
  std::vector<LabelMap> out;
  if (!j.contains(key)) return out;
  for (const auto &item : j.at(key)) out.push_back(ReadLabels(item));
  return out;
}

NameSet LabelsToNameSet(const LabelMap &labels, const std::string &first_language) {
  NameSet set;
  auto it = labels.find(first_language);
  if (it != labels.end()) AddName(set, it->second);
  for (const auto &[lang, label] : labels) AddName(set, label);
  return set;
}

// Merges `incoming` into the list: unions into an overlapping set, else
// appends.
void MergeNameSet(std::vector<NameSet> &list, const NameSet &incoming) {
  if (incoming.empty()) return;
  for (NameSet &existing : list) {
    if (NameSetsOverlap(existing, incoming)) {
      for (const auto &n : incoming) AddName(existing, n);
      return;
    }
  }
  list.push_back(incoming);
}

void MergePlace(std::optional<PlaceEntry> &place, const KbPlace &kb,
                const std::string &source_language) {
  NameSet names = LabelsToNameSet(kb.labels, source_language);
  if (!place) {
    if (names.empty()) return;
    place = PlaceEntry{kb.geonames_id, names, kb.lat, kb.lon};
    return;
  }
  for (const auto &n : names) AddName(place->names, n);
  if (!place->geonames_id) place->geonames_id = kb.geonames_id;
  if (!place->lat && !place->lon && kb.lat && kb.lon) {
    place->lat = kb.lat;
    place->lon = kb.lon;
  }
}

}  // namespace

KbSnapshot ParseKbSnapshot(std::istream &in) {
  KbSnapshot kb;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      KbEntity e;
      e.qid = j.at("qid").get<std::string>();
      e.labels = ReadLabels(j.value("labels", json::object()));
      if (j.contains("aliases")) {
        for (const auto &[lang, list] : j["aliases"].items()) {
          e.aliases[lang] = list.get<std::vector<std::string>>();
        }
      }
      if (j.contains("birthdate") && j["birthdate"].is_string()) e.birthdate = j["birthdate"];
      if (j.contains("deathdate") && j["deathdate"].is_string()) e.deathdate = j["deathdate"];
      if (j.contains("birthplace")) e.birthplace = ReadKbPlace(j["birthplace"]);
      if (j.contains("deathplace")) e.deathplace = ReadKbPlace(j["deathplace"]);
      if (j.contains("occupations")) {
        for (const auto &o : j["occupations"]) {
          KbOccupation occ;
          for (const auto &[key, value] : o.items()) {
            if (!value.is_string()) continue;
            static constexpr std::string_view kFem = "_feminine";
            if (key.size() > kFem.size() &&
                key.compare(key.size() - kFem.size(), kFem.size(), kFem) == 0) {
              occ.feminine_labels[key.substr(0, key.size() - kFem.size())] = value;
            } else {
              occ.labels[key] = value;
            }
          }
          e.occupations.push_back(std::move(occ));
        }
      }
      e.educated_at = ReadLabelList(j, "educated_at");
      e.parents = ReadLabelList(j, "parents");
      e.children = ReadLabelList(j, "children");
      e.siblings = ReadLabelList(j, "siblings");
      std::string qid = e.qid;
      kb[qid] = std::move(e);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kDataError,
                  "knowledge-base snapshot line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return kb;
}

KbSnapshot LoadKbSnapshot(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read knowledge-base snapshot " + path);
  return ParseKbSnapshot(in);
}

PersonRecord EnrichWithKnowledgeBase(const PersonRecord &record,
                                     const KbSnapshot &kb,
                                     const std::string &source_language,
                                     const std::string &target_language,
                                     EnrichStats *stats) {
  EnrichStats local;
  if (!stats) stats = &local;
  auto it = kb.find(record.qid);
  if (record.qid.empty() || it == kb.end()) {
    stats->missing_qid++;
    return record;
  }
  const KbEntity &e = it->second;
  PersonRecord out = record;

  for (const auto &[lang, label] : e.labels) {
    PersonName &name = out.names[lang];
    if (name.canonical.empty()) {
      name.canonical = label;
    } else if (NormalizeSurface(name.canonical) != NormalizeSurface(label)) {
      AddName(name.aliases, label);
    }
  }
  for (const auto &[lang, list] : e.aliases) {
    PersonName &name = out.names[lang];
    for (const auto &a : list) {
      if (NormalizeSurface(a) != NormalizeSurface(name.canonical)) AddName(name.aliases, a);
    }
    if (name.canonical.empty() && !name.aliases.empty()) name.canonical = name.aliases.front();
  }

  if (!out.birthdate && e.birthdate) out.birthdate = ParsePartialDate(*e.birthdate);
  if (!out.deathdate && e.deathdate) out.deathdate = ParsePartialDate(*e.deathdate);
  if (e.birthplace) MergePlace(out.birthplace, *e.birthplace, source_language);
  if (e.deathplace) MergePlace(out.deathplace, *e.deathplace, source_language);

  for (const KbOccupation &occ : e.occupations) {
    auto src = occ.labels.find(source_language);
    auto tgt = occ.labels.find(target_language);
    if (src == occ.labels.end()) continue;
    auto fem = occ.feminine_labels.find(target_language);
    std::string masculine = tgt != occ.labels.end() ? tgt->second : "";
    std::string feminine = fem != occ.feminine_labels.end() ? fem->second : masculine;
    bool found = false;
    for (OccupationEntry &existing : out.occupations) {
      if (NormalizeSurface(existing.source_label) != NormalizeSurface(src->second)) continue;
      found = true;
      if (existing.target_masculine.empty()) existing.target_masculine = masculine;
      if (existing.target_feminine.empty()) existing.target_feminine = feminine;
    }
    if (!found) out.occupations.push_back({src->second, masculine, feminine});
  }

  for (const auto &labels : e.educated_at) {
    MergeNameSet(out.educated_at, LabelsToNameSet(labels, target_language));
  }
  for (const auto &labels : e.parents) {
    MergeNameSet(out.parents, LabelsToNameSet(labels, target_language));
  }
  for (const auto &labels : e.children) {
    MergeNameSet(out.children, LabelsToNameSet(labels, target_language));
  }
  for (const auto &labels : e.siblings) {
    MergeNameSet(out.siblings, LabelsToNameSet(labels, target_language));
  }
  stats->enriched++;
  return out;
}

// ---------------------------------------------------------------------------
// Places.

AlternatesTable ParseAlternates(std::istream &in) {
  AlternatesTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    AlternateName alt;
    if (fields.size() != 4 || !ParseInt(fields[0], &alt.geonames_id) ||
        !ParseDouble(fields[2], &alt.lat) || !ParseDouble(fields[3], &alt.lon)) {
      if (line_no == 1) continue;  // header
      throw Error(ErrorCode::kDataError, "alternates table line " +
                                             std::to_string(line_no) +
                                             ": expected (id, name, lat, lon)");
    }
    alt.name = std::string(Trim(fields[1]));
    if (alt.name.empty()) continue;
    table.emplace(alt.geonames_id, std::move(alt));
  }
  return table;
}

AlternatesTable LoadAlternates(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read alternates table " + path);
  return ParseAlternates(in);
}

std::string TruncateSignificant(double value, int digits) {
  if (value == 0) return "0";
  char buf[64];
  // Shortest round-trip scientific form, e.g. "4.820849e+01".
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific);
  std::string_view s(buf, static_cast<std::size_t>(end - buf));
  std::string key;
  if (s.front() == '-') {
    key += '-';
    s.remove_prefix(1);
  }
  std::size_t e = s.find('e');
  std::string mantissa;
  for (char c : s.substr(0, e)) {
    if (c != '.') mantissa += c;
  }
  mantissa.resize(static_cast<std::size_t>(digits), '0');
  key += mantissa;
  key += 'e';
  key += std::to_string(std::stoi(std::string(s.substr(e + 1))));
  return key;
}

PlaceEntry ResolvePlaceNames(const PlaceEntry &place,
                             const AlternatesTable &alternates,
                             ResolveStats *stats) {
  ResolveStats local;
  if (!stats) stats = &local;
  if (!place.geonames_id && !(place.lat && place.lon)) {
    stats->unresolvable++;
    return place;
  }
  if (!place.geonames_id || !place.lat || !place.lon) return place;
  PlaceEntry out = place;
  const std::string lat_key = TruncateSignificant(*place.lat);
  const std::string lon_key = TruncateSignificant(*place.lon);
  auto [begin, end] = alternates.equal_range(*place.geonames_id);
  for (auto it = begin; it != end; ++it) {
    const AlternateName &alt = it->second;
    if (TruncateSignificant(alt.lat) == lat_key &&
        TruncateSignificant(alt.lon) == lon_key) {
      if (AddName(out.names, alt.name)) stats->resolved++;
    } else {
      stats->rejected++;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gazetteers.

std::string_view EntityKindName(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPerson: return "PERSON";
    case EntityKind::kLocation: return "LOCATION";
    case EntityKind::kOrg: return "ORG";
    case EntityKind::kMisc: return "MISC";
    case EntityKind::kDate: return "DATE";
    case EntityKind::kOccupation: return "OCCUPATION";
  }
  return "MISC";
}

int KindPriority(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPerson: return 0;
    case EntityKind::kLocation: return 1;
    case EntityKind::kOrg: return 2;
    case EntityKind::kOccupation: return 3;
    case EntityKind::kMisc: return 4;
    case EntityKind::kDate: return 5;
  }
  return 6;
}

void Gazetteer::Add(std::string_view surface, const GazetteerRef &ref) {
  std::string key = NormalizeSurface(surface);
  if (key.empty()) return;
  auto &refs = entries[key];
  for (const auto &r : refs) {
    if (r == ref) return;
  }
  refs.push_back(ref);
}

OccupationTable ParseOccupationTable(std::istream &in) {
  OccupationTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorCode::kDataError, "occupation table line " +
                                             std::to_string(line_no) +
                                             ": expected (source, masculine, feminine)");
    }
    OccupationEntry e{std::string(Trim(fields[0])), std::string(Trim(fields[1])),
                      std::string(Trim(fields[2]))};
    if (line_no == 1 && e.source_label == "source") continue;
    if (e.source_label.empty() || e.target_masculine.empty() || e.target_feminine.empty()) {
      throw Error(ErrorCode::kDataError,
                  "occupation table line " + std::to_string(line_no) + ": empty form",
                  {e.source_label});
    }
    std::string key = NormalizeSurface(e.source_label);
    table[key] = std::move(e);
  }
  return table;
}

OccupationTable LoadOccupationTable(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read occupation table " + path);
  return ParseOccupationTable(in);
}

Gazetteer BuildOccupationGazetteer(const std::vector<std::string> &labels,
                                   const OccupationTable &table) {
  Gazetteer g;
  g.kind = EntityKind::kOccupation;
  std::set<std::string> missing;
  for (const std::string &label : labels) {
    auto it = table.find(NormalizeSurface(label));
    if (it == table.end()) {
      missing.insert(label);
      continue;
    }
    GazetteerRef ref{"occupation", it->second.source_label};
    g.Add(it->second.target_masculine, ref);
    g.Add(it->second.target_feminine, ref);
  }
  if (!missing.empty()) {
    std::string msg = "untranslated occupation labels:";
    for (const auto &m : missing) msg += " '" + m + "'";
    throw Error(ErrorCode::kDataError, msg,
                std::vector<std::string>(missing.begin(), missing.end()));
  }
  return g;
}

namespace {

std::vector<std::string> Tokens(std::string_view name) {
  std::vector<std::string> tokens;
  for (const auto &t : Split(name, ' ')) {
    if (!Trim(t).empty()) tokens.emplace_back(Trim(t));
  }
  return tokens;
}

void AddPersonForms(NameSet &out, std::string_view canonical, const AliasPolicy &policy) {
  auto tokens = Tokens(canonical);
  if (tokens.empty()) return;
  if (policy.canonical) AddName(out, canonical);
  if (policy.given_surname && tokens.size() >= 3) {
    AddName(out, tokens.front() + " " + tokens.back());
  }
  if (policy.surname && tokens.size() >= 2) AddName(out, tokens.back());
}

}  // namespace

NameSet PersonAliases(const PersonRecord &record, const AliasPolicy &policy) {
  NameSet aliases;
  for (const auto &[lang, name] : record.names) {
    if (policy.canonical) {
      for (const auto &a : name.aliases) AddName(aliases, a);
    }
    AddPersonForms(aliases, name.canonical, policy);
  }
  return aliases;
}

std::vector<Gazetteer> BuildFieldGazetteers(const PersonRecord &record,
                                            const AliasPolicy &policy) {
  std::vector<Gazetteer> out;
  auto place = [&](const std::optional<PlaceEntry> &p, const char *field) {
    if (!p || p->names.empty()) return;
    Gazetteer g;
    g.kind = EntityKind::kLocation;
    for (const auto &n : p->names) g.Add(n, {field, p->names.front()});
    out.push_back(std::move(g));
  };
  place(record.birthplace, "birthplace");
  place(record.deathplace, "deathplace");

  if (!record.educated_at.empty()) {
    Gazetteer g;
    g.kind = EntityKind::kOrg;
    for (const NameSet &set : record.educated_at) {
      for (const auto &n : set) g.Add(n, {"educated", set.front()});
    }
    if (!g.empty()) out.push_back(std::move(g));
  }

  auto relatives = [&](const std::vector<NameSet> &list, const char *field) {
    if (list.empty()) return;
    Gazetteer g;
    g.kind = EntityKind::kPerson;
    for (const NameSet &set : list) {
      for (const auto &n : set) {
        g.Add(n, {field, set.front()});
        if (policy.relative_surname) {
          auto tokens = Tokens(n);
          if (tokens.size() >= 2) g.Add(tokens.back(), {field, set.front()});
        }
      }
    }
    if (!g.empty()) out.push_back(std::move(g));
  };
  relatives(record.parents, "parent");
  relatives(record.children, "child");
  relatives(record.siblings, "sibling");
  return out;
}

std::vector<Gazetteer> BuildBackgroundGazetteers(
    const std::vector<PersonRecord> &records) {
  Gazetteer places, orgs, persons;
  places.kind = EntityKind::kLocation;
  orgs.kind = EntityKind::kOrg;
  persons.kind = EntityKind::kPerson;
  for (const PersonRecord &r : records) {
    for (const auto *p : {&r.birthplace, &r.deathplace}) {
      if (!*p) continue;
      for (const auto &n : (*p)->names) places.Add(n, {"", (*p)->names.front()});
    }
    for (const NameSet &set : r.educated_at) {
      for (const auto &n : set) orgs.Add(n, {"", set.front()});
    }
    for (const auto &[lang, name] : r.names) {
      if (!name.canonical.empty()) persons.Add(name.canonical, {"", name.canonical});
    }
    for (const auto *list : {&r.parents, &r.children, &r.siblings}) {
      for (const NameSet &set : *list) {
        for (const auto &n : set) persons.Add(n, {"", set.front()});
      }
    }
  }
  std::vector<Gazetteer> out;
  for (Gazetteer *g : {&persons, &places, &orgs}) {
    if (!g->empty()) out.push_back(std::move(*g));
  }
  return out;
}

}  // namespace gdsre
