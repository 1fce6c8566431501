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

#include <gtest/gtest.h>

#include <sstream>

#include "gdsre/error.h"
#include "test-util.h"

namespace gdsre {
namespace {

TEST(PartialDateTest, ParsesPrecisions) {
  EXPECT_EQ(ParsePartialDate("1455-12-01"), (PartialDate{1455, 12, 1}));
  EXPECT_EQ(ParsePartialDate("1902-01"), (PartialDate{1902, 1, std::nullopt}));
  EXPECT_EQ(ParsePartialDate("1378"), (PartialDate{1378, std::nullopt, std::nullopt}));
  EXPECT_EQ(ParsePartialDate("-0044-03-15"), (PartialDate{-44, 3, 15}));
  EXPECT_EQ(ParsePartialDate("+1815-12-10T00:00:00Z"), (PartialDate{1815, 12, 10}));
  EXPECT_FALSE(ParsePartialDate("1900-02-30"));
  EXPECT_FALSE(ParsePartialDate("1900-13"));
  EXPECT_FALSE(ParsePartialDate("gestern"));
  EXPECT_EQ(PartialDate({1455, 12, 1}).ToString(), "1455-12-01");
  EXPECT_EQ(PartialDate({1378, std::nullopt, std::nullopt}).ToString(), "1378");
}

TEST(PartialDateTest, LeapYears) {
  EXPECT_TRUE(IsValidPartialDate(2000, 2, 29));
  EXPECT_FALSE(IsValidPartialDate(1900, 2, 29));
}

TEST(NameSetTest, DeduplicatesByNormalizedSurface) {
  NameSet set;
  EXPECT_TRUE(AddName(set, "Wien"));
  EXPECT_FALSE(AddName(set, " WIEN "));
  EXPECT_TRUE(AddName(set, "Vienna"));
  EXPECT_EQ(set, (NameSet{"Wien", "Vienna"}));
  EXPECT_TRUE(NameSetsOverlap(set, {"vienna"}));
  EXPECT_FALSE(NameSetsOverlap(set, {"Graz"}));
}

const char *kPersons =
    "person_id\tname\tqid\ten_page_id\ttarget_page_id\tbirthdate\tdeathdate\tbirthplace\t"
    "birthplace_geonames_id\tbirthplace_lat\tbirthplace_lon\toccupation\taliases\n"
    "P1\tKarl Menger\tQ2\t5002\t\t1902-01-13\t1985-10-05\tVienna\t2761369\t48.20849\t16.37208\t"
    "mathematician;economist\tCarl Menger Jr.\n"
    "P2\tAda\t\tx\t107\t1815-13-01\t\t\t\t\t\t\t\n";

TEST(PersonListTest, ParsesColumnsAndCountsBadValues) {
  std::istringstream in(kPersons);
  PersonListStats stats;
  auto records = ParsePersonList(in, '\t', "en", &stats);
  ASSERT_EQ(records.size(), 2u);
  const PersonRecord &p = records[0];
  EXPECT_EQ(p.CanonicalName("en"), "Karl Menger");
  EXPECT_EQ(p.names.at("en").aliases, NameSet{"Carl Menger Jr."});
  EXPECT_EQ(p.en_page_id, 5002);
  EXPECT_EQ(p.birthdate, (PartialDate{1902, 1, 13}));
  ASSERT_TRUE(p.birthplace);
  EXPECT_EQ(p.birthplace->geonames_id, 2761369);
  EXPECT_DOUBLE_EQ(*p.birthplace->lat, 48.20849);
  ASSERT_EQ(p.occupations.size(), 2u);
  EXPECT_EQ(p.occupations[1].source_label, "economist");
  EXPECT_EQ(records[1].target_page_id, 107);
  EXPECT_FALSE(records[1].birthdate);
  EXPECT_EQ(stats.rows, 2u);
  EXPECT_EQ(stats.bad_dates, 1u);
  EXPECT_EQ(stats.bad_numbers, 1u);
}

TEST(PersonListTest, ReadsCsvWithQuotes) {
  testing::TempDir dir;
  testing::WriteFile(dir.File("p.csv"),
                     "person_id,name,occupation\nP1,\"Menger, Karl\",\"a;b\"\n");
  auto records = LoadPersonList(dir.File("p.csv"));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].CanonicalName(), "Menger, Karl");
  EXPECT_EQ(records[0].occupations.size(), 2u);
}

TEST(PersonListTest, MissingRequiredColumnsFail) {
  std::istringstream in("id\tname\nP1\tX\n");
  EXPECT_THROW(ParsePersonList(in, '\t'), Error);
  try {
    LoadPersonList("/nonexistent.tsv");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(KnowledgeBaseTest, EnrichesWithoutReplacingCuratedValues) {
  std::istringstream kb_in(
      R"({"qid":"Q2","labels":{"en":"Karl Menger","de":"Karl Menger"},)"
      R"("aliases":{"de":["K. Menger"]},"birthdate":"1900-01-01","deathdate":"1985-10-05",)"
      R"("birthplace":{"labels":{"en":"Vienna","de":"Wien"},"geonames_id":2761369},)"
      R"("occupations":[{"en":"mathematician","de":"Mathematiker",)"
      R"("de_feminine":"Mathematikerin"}],)"
      R"("educated_at":[{"en":"University of Vienna","de":"Universität Wien"}],)"
      R"("parents":[{"en":"Carl Menger"}]})"
      "\n");
  KbSnapshot kb = ParseKbSnapshot(kb_in);
  ASSERT_EQ(kb.count("Q2"), 1u);

  PersonRecord r;
  r.qid = "Q2";
  r.names["en"].canonical = "Karl Menger";
  r.birthdate = PartialDate{1902, 1, 13};
  r.birthplace = PlaceEntry{std::nullopt, {"Vienna"}, 48.20849, 16.37208};
  r.occupations.push_back({"mathematician", "", ""});
  EnrichStats stats;
  PersonRecord e = EnrichWithKnowledgeBase(r, kb, "en", "de", &stats);
  EXPECT_EQ(stats.enriched, 1u);
  EXPECT_EQ(e.birthdate, (PartialDate{1902, 1, 13}));
  EXPECT_EQ(e.deathdate, (PartialDate{1985, 10, 5}));
  EXPECT_EQ(e.CanonicalName("de"), "Karl Menger");
  EXPECT_EQ(e.names.at("de").aliases, NameSet{"K. Menger"});
  EXPECT_EQ(e.birthplace->names, (NameSet{"Vienna", "Wien"}));
  EXPECT_EQ(e.birthplace->geonames_id, 2761369);
  EXPECT_EQ(e.birthplace->lat, 48.20849);
  ASSERT_EQ(e.occupations.size(), 1u);
  EXPECT_EQ(e.occupations[0].target_masculine, "Mathematiker");
  EXPECT_EQ(e.occupations[0].target_feminine, "Mathematikerin");
  ASSERT_EQ(e.educated_at.size(), 1u);
  EXPECT_EQ(e.educated_at[0].front(), "Universität Wien");
  ASSERT_EQ(e.parents.size(), 1u);
  EXPECT_EQ(e.parents[0], NameSet{"Carl Menger"});

  r.qid = "Q404";
  EnrichWithKnowledgeBase(r, kb, "en", "de", &stats);
  EXPECT_EQ(stats.missing_qid, 1u);
}

TEST(KnowledgeBaseTest, MalformedLineIsDataError) {
  std::istringstream in("{\"labels\":{}}\n");
  EXPECT_THROW(ParseKbSnapshot(in), Error);
}

TEST(TruncateSignificantTest, TruncatesRatherThanRounds) {
  EXPECT_EQ(TruncateSignificant(48.20849), TruncateSignificant(48.2));
  EXPECT_EQ(TruncateSignificant(43.77999), TruncateSignificant(43.77));
  EXPECT_NE(TruncateSignificant(43.77999), TruncateSignificant(43.78));
  EXPECT_EQ(TruncateSignificant(-0.12349), TruncateSignificant(-0.1234));
  EXPECT_NE(TruncateSignificant(1.0), TruncateSignificant(-1.0));
  EXPECT_NE(TruncateSignificant(11.24), TruncateSignificant(1.124));
}

TEST(ResolvePlaceNamesTest, AcceptsOnlyMatchingCoordinates) {
  std::istringstream in(
      "geonames_id\talt_name\tlat\tlon\n"
      "3176959\tFlorenz\t43.77925\t11.24626\n"
      "3176959\tFirenze\t43.7792\t11.2463\n"
      "3176959\tFiorenza\t43.80\t11.25\n"
      "42\tAnderswo\t43.77925\t11.24626\n");
  AlternatesTable alternates = ParseAlternates(in);
  PlaceEntry florence{3176959, {"Florence"}, 43.77925, 11.24626};
  ResolveStats stats;
  PlaceEntry out = ResolvePlaceNames(florence, alternates, &stats);
  EXPECT_EQ(out.names, (NameSet{"Florence", "Florenz", "Firenze"}));
  EXPECT_EQ(stats.resolved, 2u);
  EXPECT_EQ(stats.rejected, 1u);

  PlaceEntry bare{std::nullopt, {"Pelago"}, std::nullopt, std::nullopt};
  EXPECT_EQ(ResolvePlaceNames(bare, alternates, &stats), bare);
  EXPECT_EQ(stats.unresolvable, 1u);
}

TEST(OccupationTest, BuildsBothGenderedForms) {
  std::istringstream in("source\tmasculine\tfeminine\ncomposer\tKomponist\tKomponistin\n");
  OccupationTable table = ParseOccupationTable(in);
  Gazetteer g = BuildOccupationGazetteer({"Composer"}, table);
  EXPECT_EQ(g.kind, EntityKind::kOccupation);
  ASSERT_EQ(g.entries.count("komponistin"), 1u);
  EXPECT_EQ(g.entries.at("komponist").front(), (GazetteerRef{"occupation", "composer"}));
}

TEST(OccupationTest, UntranslatedLabelsAreListed) {
  try {
    BuildOccupationGazetteer({"composer", "astronaut", "juggler"}, {});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.offending_ids(), (std::vector<std::string>{"astronaut", "composer", "juggler"}));
  }
}

TEST(OccupationTest, ShippedTableParses) {
  auto table = LoadOccupationTable(testing::GoldenDir() + "/../../../data/occupations/de.tsv");
  EXPECT_GE(table.size(), 50u);
  EXPECT_EQ(table.at("sculptor").target_feminine, "Bildhauerin");
}

TEST(PersonAliasesTest, FollowsPolicy) {
  PersonRecord r;
  r.names["de"].canonical = "Johann Sebastian Bach";
  r.names["de"].aliases = {"J. S. Bach"};
  EXPECT_EQ(PersonAliases(r, {}),
            (NameSet{"J. S. Bach", "Johann Sebastian Bach", "Johann Bach", "Bach"}));
  AliasPolicy strict{true, false, false, false};
  EXPECT_EQ(PersonAliases(r, strict), (NameSet{"J. S. Bach", "Johann Sebastian Bach"}));
}

TEST(GazetteerTest, FieldAndBackgroundGazetteers) {
  PersonRecord r;
  r.names["de"].canonical = "Clara Schumann";
  r.birthplace = PlaceEntry{std::nullopt, {"Leipzig"}, std::nullopt, std::nullopt};
  r.parents.push_back({"Friedrich Wieck"});
  r.children.push_back({"Eugenie Schumann"});
  auto field = BuildFieldGazetteers(r);
  ASSERT_EQ(field.size(), 3u);
  EXPECT_EQ(field[0].entries.at("leipzig").front(), (GazetteerRef{"birthplace", "Leipzig"}));
  EXPECT_EQ(field[1].kind, EntityKind::kPerson);

  AliasPolicy relative_surname;
  relative_surname.relative_surname = true;
  auto with_surnames = BuildFieldGazetteers(r, relative_surname);
  EXPECT_EQ(with_surnames[1].entries.count("wieck"), 1u);

  auto background = BuildBackgroundGazetteers({r});
  ASSERT_EQ(background.size(), 2u);
  EXPECT_EQ(background[0].entries.count("clara schumann"), 1u);
  EXPECT_EQ(background[0].entries.at("friedrich wieck").front().field_key, "");
}

}  // namespace
}  // namespace gdsre
