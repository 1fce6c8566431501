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

#ifndef GDSRE_RELATION_H_
#define GDSRE_RELATION_H_

#include <array>
#include <optional>
#include <string_view>

namespace gdsre {

// The closed label set. Enumerator order is the canonical index order used
// for confusion matrices and stats tables.
enum class Relation {
  kBirthdate = 0,
  kBirthplace,
  kChild,
  kDeathdate,
  kDeathplace,
  kEducated,
  kOccupation,
  kOther,
  kParent,
  kSibling,
};

inline constexpr int kNumRelations = 10;

inline constexpr std::array<Relation, kNumRelations> kAllRelations = {
    Relation::kBirthdate, Relation::kBirthplace, Relation::kChild,
    Relation::kDeathdate, Relation::kDeathplace, Relation::kEducated,
    Relation::kOccupation, Relation::kOther,     Relation::kParent,
    Relation::kSibling,
};

// Order in which a mention is tested against record fields. The first relation
// that is still open for the article wins.
inline constexpr std::array<Relation, 9> kFieldPriority = {
    Relation::kBirthdate,  Relation::kDeathdate, Relation::kBirthplace,
    Relation::kDeathplace, Relation::kEducated,  Relation::kOccupation,
    Relation::kParent,     Relation::kChild,     Relation::kSibling,
};

// Row order of evaluation report tables.
inline constexpr std::array<Relation, kNumRelations> kReportOrder = {
    Relation::kBirthdate, Relation::kBirthplace, Relation::kDeathdate,
    Relation::kDeathplace, Relation::kEducated,  Relation::kOccupation,
    Relation::kParent,     Relation::kSibling,   Relation::kChild,
    Relation::kOther,
};

inline constexpr int RelationIndex(Relation r) { return static_cast<int>(r); }

std::string_view RelationName(Relation r);

// Parses a serialized relation name. Returns nullopt for anything outside the
// closed set.
std::optional<Relation> ParseRelation(std::string_view name);

// Like ParseRelation but throws Error(kInvalidArgument) naming the label.
Relation RelationFromName(std::string_view name);

}  // namespace gdsre

#endif  // GDSRE_RELATION_H_
