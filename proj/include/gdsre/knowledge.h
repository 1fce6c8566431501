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

#ifndef GDSRE_KNOWLEDGE_H_
#define GDSRE_KNOWLEDGE_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gdsre {

using PageId = int64_t;

// A date with optional month and day. Years may be negative (BCE).
struct PartialDate {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  bool operator==(const PartialDate &) const = default;
  std::string ToString() const;  // "1455-12-01", "1455-12", "1455"
};

bool IsValidPartialDate(int year, std::optional<int> month, std::optional<int> day);

// Parses "YYYY", "YYYY-MM" or "YYYY-MM-DD" with an optional leading '-' or
// '+'. Also accepts a trailing time part ("1455-12-01T00:00:00Z").
std::optional<PartialDate> ParsePartialDate(std::string_view text);

// Surface forms of one entity across languages. Unique by normalized form,
// first-seen order.
using NameSet = std::vector<std::string>;

// Adds `name` unless a form with the same normalized surface exists.
bool AddName(NameSet &set, std::string_view name);
// True when the two sets share a normalized surface.
bool NameSetsOverlap(const NameSet &a, const NameSet &b);

struct PlaceEntry {
  std::optional<int64_t> geonames_id;
  NameSet names;
  std::optional<double> lat;
  std::optional<double> lon;

  bool operator==(const PlaceEntry &) const = default;
};

struct OccupationEntry {
  std::string source_label;
  std::string target_masculine;
  std::string target_feminine;

  bool operator==(const OccupationEntry &) const = default;
};

struct PersonName {
  std::string canonical;
  NameSet aliases;

  bool operator==(const PersonName &) const = default;
};

struct PersonRecord {
  std::string person_id;
  std::string qid;
  std::map<std::string, PersonName> names;  // keyed by language code
  std::optional<PageId> en_page_id;
  std::optional<PageId> target_page_id;
  std::optional<PartialDate> birthdate;
  std::optional<PartialDate> deathdate;
  std::optional<PlaceEntry> birthplace;
  std::optional<PlaceEntry> deathplace;
  std::vector<OccupationEntry> occupations;
  std::vector<NameSet> educated_at;
  std::vector<NameSet> parents;
  std::vector<NameSet> children;
  std::vector<NameSet> siblings;

  bool operator==(const PersonRecord &) const = default;

  // Canonical name in `language`, else in any language (map order).
  std::string CanonicalName(const std::string &language = "") const;
};

// ---------------------------------------------------------------------------
// Curated person list.

struct PersonListStats {
  std::size_t rows = 0;
  std::size_t bad_dates = 0;
  std::size_t bad_numbers = 0;
};

// Reads the curated list. Tab-separated unless the path ends in ".csv", which
// is read as RFC 4180 CSV. The header names the columns; only person_id and
// name are required:
//   person_id name qid en_page_id target_page_id birthdate deathdate
//   birthplace birthplace_geonames_id birthplace_lat birthplace_lon
//   deathplace deathplace_geonames_id deathplace_lat deathplace_lon
//   occupation aliases
// `occupation` and `aliases` hold ';'-separated lists. Names are stored under
// `name_language`.
std::vector<PersonRecord> LoadPersonList(const std::string &path,
                                         const std::string &name_language = "en",
                                         PersonListStats *stats = nullptr);
std::vector<PersonRecord> ParsePersonList(std::istream &in, char delimiter,
                                          const std::string &name_language = "en",
                                          PersonListStats *stats = nullptr);

// ---------------------------------------------------------------------------
// Knowledge-base snapshot.

using LabelMap = std::map<std::string, std::string>;  // language -> label

struct KbPlace {
  LabelMap labels;
  std::optional<int64_t> geonames_id;
  std::optional<double> lat;
  std::optional<double> lon;
};

struct KbOccupation {
  LabelMap labels;           // language -> masculine/neutral form
  LabelMap feminine_labels;  // language -> feminine form
};

struct KbEntity {
  std::string qid;
  LabelMap labels;
  std::map<std::string, std::vector<std::string>> aliases;
  std::optional<std::string> birthdate;
  std::optional<std::string> deathdate;
  std::optional<KbPlace> birthplace;
  std::optional<KbPlace> deathplace;
  std::vector<KbOccupation> occupations;
  std::vector<LabelMap> educated_at;
  std::vector<LabelMap> parents;
  std::vector<LabelMap> children;
  std::vector<LabelMap> siblings;
};

using KbSnapshot = std::map<std::string, KbEntity, std::less<>>;

// One JSON object per line keyed by "qid". See README for the schema.
KbSnapshot LoadKbSnapshot(const std::string &path);
KbSnapshot ParseKbSnapshot(std::istream &in);

struct EnrichStats {
  std::size_t enriched = 0;
  std::size_t missing_qid = 0;
};

// Augments a record with knowledge-base facts. Curated values are never
// replaced; name sets only grow and absent fields may be filled.
PersonRecord EnrichWithKnowledgeBase(const PersonRecord &record,
                                     const KbSnapshot &kb,
                                     const std::string &source_language,
                                     const std::string &target_language,
                                     EnrichStats *stats = nullptr);

// ---------------------------------------------------------------------------
// Place resolution.

struct AlternateName {
  int64_t geonames_id = 0;
  std::string name;
  double lat = 0;
  double lon = 0;
};

using AlternatesTable = std::multimap<int64_t, AlternateName>;

// Tab-separated (geonames_id, alt_name, lat, lon).
AlternatesTable LoadAlternates(const std::string &path);
AlternatesTable ParseAlternates(std::istream &in);

// Truncates (not rounds) the decimal representation of `value` to `digits`
// significant digits, keeping the sign. Returns a canonical key: equal keys
// mean equal truncations, e.g. 48.20849 and 48.2 both give the key of 48.20.
std::string TruncateSignificant(double value, int digits = 4);

struct ResolveStats {
  std::size_t resolved = 0;
  std::size_t rejected = 0;      // id matched but coordinates differed
  std::size_t unresolvable = 0;  // no id and no coordinates
};

// Adds every alternate name whose id matches the place and whose coordinates,
// truncated to four significant digits, equal the place's truncated
// coordinates.
PlaceEntry ResolvePlaceNames(const PlaceEntry &place,
                             const AlternatesTable &alternates,
                             ResolveStats *stats = nullptr);

// ---------------------------------------------------------------------------
// Gazetteers.

enum class EntityKind { kPerson, kLocation, kOrg, kMisc, kDate, kOccupation };

std::string_view EntityKindName(EntityKind kind);

// Overlap priority; lower wins.
int KindPriority(EntityKind kind);

struct GazetteerRef {
  std::string field_key;   // relation name, empty for background entries
  std::string record_key;  // value that triggered the entry

  bool operator==(const GazetteerRef &) const = default;
};

struct Gazetteer {
  EntityKind kind = EntityKind::kMisc;
  std::map<std::string, std::vector<GazetteerRef>> entries;

  // Normalizes `surface` and records the reference. Empty surfaces are
  // ignored.
  void Add(std::string_view surface, const GazetteerRef &ref);
  bool empty() const { return entries.empty(); }
};

using OccupationTable = std::map<std::string, OccupationEntry>;

// Tab-separated (source, masculine, feminine).
OccupationTable LoadOccupationTable(const std::string &path);
OccupationTable ParseOccupationTable(std::istream &in);

// Both gendered forms of every label, with field key "occupation" and the
// source label as record key. Throws listing every untranslated label.
Gazetteer BuildOccupationGazetteer(const std::vector<std::string> &labels,
                                   const OccupationTable &table);

struct AliasPolicy {
  bool canonical = true;
  bool surname = true;
  bool given_surname = true;
  bool relative_surname = false;
};

// Main-entity aliases: every canonical name and listed alias, plus surname
// and given+surname forms of canonical names when enabled.
NameSet PersonAliases(const PersonRecord &record, const AliasPolicy &policy);

// Per-record gazetteers for birthplace, deathplace, educated, parent, child
// and sibling. Empty fields produce no gazetteer.
std::vector<Gazetteer> BuildFieldGazetteers(const PersonRecord &record,
                                            const AliasPolicy &policy = {});

// Field-less gazetteers over all records' places, institutions and person
// names. Mentions found only through these never match a record field.
std::vector<Gazetteer> BuildBackgroundGazetteers(
    const std::vector<PersonRecord> &records);

}  // namespace gdsre

#endif  // GDSRE_KNOWLEDGE_H_
