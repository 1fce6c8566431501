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

#include "synthetic.h"

#include <algorithm>
#include <array>
#include <set>

#include "gdsre/random.h"
#include "gdsre/text.h"

namespace gdsre::testing {

namespace {

const std::vector<std::string> kGiven = {
    "Karl",  "Anna",   "Otto",  "Marie",  "Paul",   "Greta", "Hugo",  "Lena",
    "Emil",  "Frieda", "Bruno", "Ida",    "Felix",  "Helene", "Arno", "Rosa",
    "Kurt",  "Erna",   "Max",   "Hedwig", "Oskar",  "Luise", "Walter", "Elsa"};
const std::vector<std::string> kSurname = {
    "Albers",   "Brandt",  "Conrad",  "Dietz",    "Eckert",  "Fuchs",   "Gerber",
    "Hahnke",   "Imhof",   "Jansen",  "Kessler",  "Lorenz",  "Maurer",  "Neumann",
    "Oswald",   "Pfeiffer", "Quast",  "Roth",     "Sauer",   "Thiel",   "Ullrich",
    "Vogt",     "Winkler", "Zeller",  "Arendt",   "Baumann", "Claassen", "Dorn",
    "Engel",    "Frank",   "Gross",   "Horn",     "Issel",   "Jaeger",  "Krause",
    "Lindner",  "Mohr",    "Nagel",   "Ott",      "Probst",  "Reuter",  "Schaller",
    "Tietz",    "Uhland",  "Voss",    "Wendt",    "Ziegler", "Amsel",   "Brecht",
    "Cramer"};
const std::vector<std::string> kRelGiven = {"Wilhelm", "Johanna", "Konrad", "Mathilde",
                                            "Gustav",  "Sophie",  "Ernst",  "Clothilde"};
const std::vector<std::string> kRelSurname = {"Hagedorn", "Kirchhoff", "Lambrecht",
                                              "Mittermaier", "Nordmann", "Overbeck"};
const std::vector<std::string> kPlaces = {
    "Bremen",  "Kassel",   "Erfurt",  "Potsdam",   "Rostock", "Lübeck",  "Dresden",
    "Leipzig", "Augsburg", "Ulm",     "Trier",     "Mainz",   "Passau",  "Gotha",
    "Weimar",  "Halle",    "Celle",   "Bamberg",   "Konstanz", "Coburg", "Zwickau",
    "Speyer",  "Wismar",   "Husum"};
const std::vector<std::string> kSchools = {
    "Universität Tübingen", "Universität Heidelberg", "Universität Göttingen",
    "Technische Hochschule Karlsruhe", "Bergakademie Freiberg", "Kunstakademie Düsseldorf"};
// source label, masculine, feminine
const std::vector<std::array<std::string, 3>> kJobs = {
    {"painter", "Maler", "Malerin"},          {"chemist", "Chemiker", "Chemikerin"},
    {"architect", "Architekt", "Architektin"}, {"singer", "Sänger", "Sängerin"},
    {"physician", "Arzt", "Ärztin"},           {"botanist", "Botaniker", "Botanikerin"}};
const std::vector<std::string> kMonths = {"Januar", "Februar", "März",     "April",
                                          "Mai",    "Juni",    "Juli",     "August",
                                          "September", "Oktober", "November", "Dezember"};
const std::vector<std::string> kOpeners = {"erwähnte", "besuchte", "nannte", "kannte"};
const std::vector<std::string> kJoiners = {", danach ", " und ", ", später ", " sowie "};

template <typename T>
const T &Pick(Rng &rng, const std::vector<T> &v) {
  return v[rng.Below(v.size())];
}

std::string DateText(const PartialDate &d) {
  return std::to_string(*d.day) + ". " + kMonths[*d.month - 1] + " " + std::to_string(d.year);
}

PartialDate RandomDate(Rng &rng, int year) {
  return {year, static_cast<int>(rng.Below(12)) + 1, static_cast<int>(rng.Below(28)) + 1};
}

struct Option {
  std::string surface;
  std::optional<Relation> relation;
};

}  // namespace

SyntheticWorld MakeSyntheticWorld(uint64_t seed, int articles) {
  SyntheticWorld world;
  Rng rng(seed);
  std::set<std::string> used_names;
  for (const auto &job : kJobs) {
    world.occupations[NormalizeSurface(job[0])] = {job[0], job[1], job[2]};
  }

  std::vector<std::vector<Option>> options(articles);
  std::vector<bool> feminine(articles);
  for (int a = 0; a < articles; ++a) {
    PersonRecord r;
    r.person_id = "S" + std::to_string(a);
    std::string name;
    do {
      name = Pick(rng, kGiven) + " " + Pick(rng, kSurname);
      if (used_names.count(name)) name += " " + Pick(rng, kSurname);
    } while (used_names.count(name));
    used_names.insert(name);
    r.names["de"].canonical = name;
    int birth_year = 1700 + static_cast<int>(rng.Below(250));
    r.birthdate = RandomDate(rng, birth_year);
    r.deathdate = RandomDate(rng, birth_year + 20 + static_cast<int>(rng.Below(70)));
    std::size_t bp = rng.Below(kPlaces.size());
    std::size_t dp = (bp + 1 + rng.Below(kPlaces.size() - 1)) % kPlaces.size();
    r.birthplace = PlaceEntry{std::nullopt, {kPlaces[bp]}, std::nullopt, std::nullopt};
    r.deathplace = PlaceEntry{std::nullopt, {kPlaces[dp]}, std::nullopt, std::nullopt};
    std::size_t job = rng.Below(kJobs.size());
    r.occupations.push_back({kJobs[job][0], kJobs[job][1], kJobs[job][2]});
    std::size_t school = rng.Below(kSchools.size());
    r.educated_at.push_back({kSchools[school]});
    std::vector<std::string> relatives;
    while (relatives.size() < 3) {
      std::string rel = Pick(rng, kRelGiven) + " " + Pick(rng, kRelSurname);
      if (std::find(relatives.begin(), relatives.end(), rel) == relatives.end()) {
        relatives.push_back(rel);
      }
    }
    r.parents.push_back({relatives[0]});
    r.children.push_back({relatives[1]});
    r.siblings.push_back({relatives[2]});
    feminine[a] = rng.Below(2) == 1;

    // Field mentions, then distractors that match no field of this record.
    auto &opts = options[a];
    opts.push_back({DateText(*r.birthdate), Relation::kBirthdate});
    opts.push_back({DateText(*r.deathdate), Relation::kDeathdate});
    opts.push_back({kPlaces[bp], Relation::kBirthplace});
    opts.push_back({kPlaces[dp], Relation::kDeathplace});
    opts.push_back({kSchools[school], Relation::kEducated});
    opts.push_back({kJobs[job][feminine[a] ? 2 : 1], Relation::kOccupation});
    opts.push_back({relatives[0], Relation::kParent});
    opts.push_back({relatives[1], Relation::kChild});
    opts.push_back({relatives[2], Relation::kSibling});
    std::size_t other_place = bp;
    while (other_place == bp || other_place == dp) other_place = rng.Below(kPlaces.size());
    opts.push_back({kPlaces[other_place], std::nullopt});
    std::size_t other_job = (job + 1 + rng.Below(kJobs.size() - 1)) % kJobs.size();
    opts.push_back({kJobs[other_job][1], std::nullopt});
    opts.push_back({DateText(RandomDate(rng, 1600 + static_cast<int>(rng.Below(90)))),
                    std::nullopt});
    world.records.push_back(std::move(r));
  }

  for (int a = 0; a < articles; ++a) {
    const PersonRecord &r = world.records[a];
    const std::string name = r.names.at("de").canonical;
    const std::string surname = name.substr(name.rfind(' ') + 1);
    ArticleDoc doc;
    doc.article_id = 1000 + a;
    doc.language = "de";
    doc.title = name;
    doc.person_id = r.person_id;
    std::vector<PlacedSentence> layout;
    std::size_t offset = 0;
    int sentences = 2 + static_cast<int>(rng.Below(6));
    for (int s = 0; s < sentences; ++s) {
      PlacedSentence placed;
      std::string text;
      bool with_e1 = s == 0 || rng.Below(5) != 0;
      if (with_e1) {
        std::string alias = (s == 0 || rng.Below(2) == 0) ? name : surname;
        placed.e1 = Span{0, alias.size()};
        text = alias + " " + Pick(rng, kOpeners) + " ";
      } else {
        text = "Die Chronik nennt ";
      }
      int count = 1 + static_cast<int>(rng.Below(3));
      for (int m = 0; m < count; ++m) {
        if (m > 0) text += Pick(rng, kJoiners);
        const Option &o = Pick(rng, options[a]);
        placed.mentions.push_back({{text.size(), text.size() + o.surface.size()}, o.relation});
        text += o.surface;
      }
      text += ".";
      doc.sentences.push_back({s, text, offset});
      offset += text.size() + 1;
      layout.push_back(std::move(placed));
    }
    world.docs.push_back(std::move(doc));
    world.layout.push_back(std::move(layout));
  }

  std::vector<std::string> labels;
  for (const auto &job : kJobs) labels.push_back(job[0]);
  std::vector<Gazetteer> global = BuildBackgroundGazetteers(world.records);
  global.push_back(BuildOccupationGazetteer(labels, world.occupations));
  world.global = std::make_unique<GazetteerMatcher>(global);
  for (const auto &r : world.records) world.by_id[r.person_id] = r;
  return world;
}

std::vector<ExpectedInstance> OracleLabels(const SyntheticWorld &world, std::size_t doc,
                                           Method method) {
  std::vector<ExpectedInstance> out;
  std::set<Relation> closed;
  const auto &layout = world.layout[doc];
  for (std::size_t s = 0; s < layout.size(); ++s) {
    if (method == Method::kSkip && s == 0) continue;
    if (!layout[s].e1) continue;
    for (const PlacedMention &m : layout[s].mentions) {
      if (!m.relation || closed.count(*m.relation)) continue;
      closed.insert(*m.relation);
      out.push_back({static_cast<int>(s), *layout[s].e1, m.span, *m.relation});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExpectedInstance> FieldInstances(const std::vector<RelationInstance> &instances) {
  std::vector<ExpectedInstance> out;
  for (const auto &i : instances) {
    if (i.label == Relation::kOther) continue;
    out.push_back({i.sentence_index, i.e1, i.e2, i.label});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gdsre::testing
