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

#include "gdsre/relation.h"

#include <string>

#include "gdsre/error.h"

namespace gdsre {

namespace {

constexpr std::array<std::string_view, kNumRelations> kNames = {
    "birthdate", "birthplace", "child",  "deathdate", "deathplace",
    "educated",  "occupation", "other",  "parent",    "sibling",
};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kDataError: return "data_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kFailedPrecondition: return "failed_precondition";
    case ErrorCode::kUnauthorized: return "unauthorized";
  }
  return "unknown";
}

std::string_view RelationName(Relation r) { return kNames[RelationIndex(r)]; }

std::optional<Relation> ParseRelation(std::string_view name) {
  for (int i = 0; i < kNumRelations; ++i) {
    if (kNames[i] == name) return static_cast<Relation>(i);
  }
  return std::nullopt;
}

Relation RelationFromName(std::string_view name) {
  auto r = ParseRelation(name);
  if (!r) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown relation label '" + std::string(name) + "'",
                {std::string(name)});
  }
  return *r;
}

}  // namespace gdsre
