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

#include <gtest/gtest.h>

#include "gdsre/error.h"

#include "gdsre/digest.h"
#include "gdsre/parallel.h"
#include "gdsre/random.h"
#include "gdsre/relation.h"
#include "gdsre/text.h"

namespace gdsre {
namespace {

TEST(NormalizeSurfaceTest, FoldsCaseAndCollapsesWhitespace) {
  EXPECT_EQ(NormalizeSurface("  Frankfurt   am\tMain "), "frankfurt am main");
  EXPECT_EQ(NormalizeSurface("ÄRZTIN"), "ärztin");
}

TEST(NormalizeSurfaceTest, IsIdempotent) {
  for (const char *s : {"Universität Wien", "  A  b ", "Straße", "Œuvre"}) {
    std::string once = NormalizeSurface(s);
    EXPECT_EQ(NormalizeSurface(once), once) << s;
  }
}

TEST(NormalizeSurfaceTest, ComposesToNfc) {
  // "u" + combining diaeresis equals the precomposed form.
  EXPECT_EQ(NormalizeSurface("Mu\xCC\x88nchen"), NormalizeSurface("München"));
}

TEST(FoldForMatchingTest, MapsUnitsBackToByteRanges) {
  std::string s = "Über  Köln";
  FoldedText f = FoldForMatching(s);
  ASSERT_EQ(f.chars.size(), f.begin.size());
  EXPECT_EQ(f.chars[0], U'ü');
  EXPECT_EQ(f.begin[0], 0u);
  EXPECT_EQ(f.end[0], 2u);
  // The double space collapses to a single unit.
  EXPECT_EQ(f.chars.size(), std::u32string(U"über köln").size());
}

TEST(Utf8Test, RoundTripsAndReplacesMalformed) {
  std::string s = "Gödel † 1978";
  EXPECT_EQ(EncodeUtf8(DecodeUtf8(s)), s);
  EXPECT_EQ(DecodeUtf8("\xFF"), std::u32string(1, U'�'));
}

TEST(CodePointTest, ReadsAroundOffsets) {
  std::string s = "aé";
  EXPECT_EQ(CodePointBefore(s, 0), 0u);
  EXPECT_EQ(CodePointAt(s, 1), U'é');
  EXPECT_EQ(CodePointBefore(s, 3), U'é');
  EXPECT_EQ(CodePointAt(s, 3), 0u);
}

TEST(SplitTest, KeepsEmptyFields) {
  EXPECT_EQ(Split("a;;b", ';'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(Trim("  x \n"), "x");
}

TEST(RelationTest, NamesRoundTrip) {
  for (Relation r : kAllRelations) {
    EXPECT_EQ(ParseRelation(RelationName(r)), r);
  }
  EXPECT_FALSE(ParseRelation("spouse").has_value());
  EXPECT_THROW(RelationFromName("Birthdate"), Error);
}

TEST(DigestTest, KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Prefix64("abc"), 0xba7816bf8f01cfeaULL);
}

TEST(RngTest, DeterministicAndBounded) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.Below(7);
    EXPECT_EQ(x, b.Below(7));
    EXPECT_LT(x, 7u);
  }
  EXPECT_NE(Rng::Derive(1, "x").Next(), Rng::Derive(1, "y").Next());
  EXPECT_EQ(Rng::Derive(1, "x").Next(), Rng::Derive(1, "x").Next());
}

TEST(RngTest, SampleGivesDistinctIndices) {
  Rng rng(3);
  auto s = rng.Sample(10, 10);
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s[i], i);
  EXPECT_EQ(Rng(3).Sample(5, 9).size(), 5u);
}

TEST(ParallelForTest, VisitsEveryIndexAndRethrows) {
  std::vector<int> hits(1000, 0);
  ParallelFor(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(ParallelFor(100, 4,
                           [](std::size_t i) {
                             if (i == 50) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

}  // namespace
}  // namespace gdsre
