// Copyright 2026 The lexannot Authors.
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

#include "lexannot/citation_parser.h"

#include <random>

#include "doctest.h"
#include "lexannot/error.h"
#include "lexannot/file_io.h"
#include "support/citation_gen.h"
#include "support/oracles.h"

using namespace lexannot;
using namespace lexannot::citation;

namespace {

const Gazetteer& gaz() {
  static const Gazetteer g = Gazetteer::builtin();
  return g;
}

RegistryTable fixture_registry() {
  return RegistryTable::parse_jsonl(
      read_file(std::string(LEXANNOT_TEST_DATA) + "/registry.jsonl"));
}

}  // namespace

TEST_CASE("section with Absatz, Satz and code") {
  const auto refs = parse_reference("§ 14 Abs. 3 Satz 2 SchVG", gaz());
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].artikel == "14");
  CHECK(refs[0].absatz == "3");
  CHECK(refs[0].satz == "2");
  CHECK(refs[0].norm_code == "SchVG");
  CHECK(refs[0].marker == Marker::section);
  CHECK(refs[0].span_start == 0);
  CHECK(refs[0].span_end == 24);
}

TEST_CASE("scanning a reference out of running text") {
  const std::string text =
      "Das Feststellungsinteresse der Beklagten ergibt sich "
      "aus § 256 Abs. 1 ZPO, weil ihr Rechtsverhältnis ungeklärt ist.";
  const auto hits = scan_references(text, gaz());
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].raw == "§ 256 Abs. 1 ZPO");
  const auto refs = parse_reference(hits[0].raw, gaz());
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].artikel == "256");
  CHECK(refs[0].absatz == "1");
  CHECK(refs[0].norm_code == "ZPO");
}

TEST_CASE("article marker") {
  const auto refs = parse_reference("Art. 6", gaz());
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].artikel == "6");
  CHECK(refs[0].marker == Marker::artikel);
  CHECK_FALSE(refs[0].norm_code.has_value());
  CHECK(parse_reference("Artikel 6 GG", gaz())[0].norm_code == "GG");
}

TEST_CASE("a code distributes over a list") {
  const auto refs = parse_reference("§§ 47 Abs. 1, 154 Abs. 2 VwGO", gaz());
  REQUIRE(refs.size() == 2);
  CHECK(refs[0].artikel == "47");
  CHECK(refs[0].absatz == "1");
  CHECK(refs[0].norm_code == "VwGO");
  CHECK(refs[0].marker == Marker::sections);
  CHECK(refs[1].artikel == "154");
  CHECK(refs[1].absatz == "2");
  CHECK(refs[1].norm_code == "VwGO");
}

TEST_CASE("mixed markers inside one list") {
  const auto refs = parse_reference("§§ 47 Abs. 1, § 154 Abs. 2", gaz());
  REQUIRE(refs.size() == 2);
  CHECK(refs[0].artikel == "47");
  CHECK(refs[1].artikel == "154");
  CHECK(refs[1].marker == Marker::section);
  CHECK(refs[1].span_start == 14);
}

TEST_CASE("nearest following code wins") {
  const auto refs = parse_reference("§ 1 BGB, § 2, § 3 ZPO", gaz());
  REQUIRE(refs.size() == 3);
  CHECK(refs[0].norm_code == "BGB");
  CHECK(refs[1].norm_code == "ZPO");
  CHECK(refs[2].norm_code == "ZPO");
}

TEST_CASE("suffix variants") {
  const auto r = parse_reference(
      "§ 823 Absatz 2 Unterabs. 1 S. 3 Halbs. 2 Nr. 4a Buchst. c 2. Buch BGB", gaz());
  REQUIRE(r.size() == 1);
  CHECK(r[0].absatz == "2");
  CHECK(r[0].unterabsatz == "1");
  CHECK(r[0].satz == "3");
  CHECK(r[0].nummer == "4a");
  CHECK(r[0].buchstabe == "c");
  CHECK(r[0].buch == "2");
  CHECK(r[0].norm_code == "BGB");
  CHECK(canonical(r[0]) == "§ 823 Abs. 2 Unterabs. 1 Satz 3 Nr. 4a lit. c 2. Buch BGB");
}

TEST_CASE("code names outside the gazetteer") {
  CHECK(parse_reference("§ 60 AufenthG", gaz())[0].norm_code == "AufenthG");
  CHECK(parse_reference("§ 1 BauGB", gaz())[0].norm_code == "BauGB");
  CHECK(parse_reference("§ 35 VwVfO", gaz())[0].norm_code == "VwVfO");
  CHECK_FALSE(parse_reference("§ 1 Klage", gaz())[0].norm_code.has_value());
  Gazetteer custom = Gazetteer::parse("# comment\nDSGVO\n");
  CHECK(custom.contains("DSGVO"));
  CHECK(custom.contains("BGB"));
  CHECK(parse_reference("Art. 6 DSGVO", custom)[0].norm_code == "DSGVO");
  CHECK_FALSE(Gazetteer::parse("DSGVO", false).contains("BGB"));
}

TEST_CASE("scan of empty text finds nothing") {
  CHECK(scan_references("", gaz()).empty());
  CHECK(scan_references("Kein Verweis hier.", gaz()).empty());
}

TEST_CASE("parse errors report position and expectation") {
  try {
    parse_reference("§ Abs. 1", gaz());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
    CHECK(e.expected() == "section number");
  }
  try {
    parse_reference("hallo", gaz());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);
    CHECK(e.expected() == "citation marker");
  }
}

TEST_CASE("enrichment from the registry") {
  const auto table = fixture_registry();
  CHECK(table.size() == 3);
  const auto ref = parse_reference("§ 256 Abs. 1 ZPO", gaz())[0];
  const auto e = enrich(ref, table);
  CHECK(e.matched);
  REQUIRE(e.ref.absatz_text.has_value());
  CHECK(e.ref.absatz_text->rfind(
            "Auf Feststellung des Bestehens oder Nichtbestehens eines "
            "Rechtsverhältnisses", 0) == 0);
  CHECK(e.ref.law_title == "Zivilprozessordnung");
  CHECK(e.ref.alt_spelling_1 == "Zivilprozeßordnung");
  CHECK(e.ref.same_structure(ref));

  const auto section_only = enrich(parse_reference("§ 256 Abs. 2 ZPO", gaz())[0], table);
  CHECK(section_only.matched);
  CHECK_FALSE(section_only.ref.absatz_text.has_value());

  CHECK_FALSE(enrich(parse_reference("§ 256 Abs. 1", gaz())[0], table).matched);
  CHECK_FALSE(enrich(parse_reference("§ 1 BGB", gaz())[0], table).matched);
  CHECK_FALSE(enrich(ref, RegistryTable()).matched);
}

TEST_CASE("registry rejects duplicate keys") {
  RegistryTable t;
  t.add(RegistryRow{"BGB", "1", std::nullopt});
  CHECK_THROWS_AS(t.add(RegistryRow{"BGB", "1", std::nullopt}), Error);
  CHECK_THROWS_AS(t.add(RegistryRow{"", "2", std::nullopt}), Error);
  CHECK_THROWS_AS(RegistryTable::parse_jsonl("{\"artikel\":\"1\"}\n"), FormatError);
}

TEST_CASE("canonical rendering") {
  CHECK(canonical(parse_reference("§§ 47 Abs. 1 VwGO", gaz())[0]) == "§ 47 Abs. 1 VwGO");
  CHECK(canonical(parse_reference("Art.6 GG", gaz())[0]) == "Art. 6 GG");
  CHECK(canonical(parse_reference("§ 14  Abs.3 Satz 2 SchVG", gaz())[0]) ==
        "§ 14 Abs. 3 Satz 2 SchVG");
}

TEST_CASE("json output carries all fields") {
  const auto j = to_json(parse_reference("§ 256 Abs. 1 ZPO", gaz())[0]);
  CHECK(j.size() == 22);
  CHECK(j["artikel"] == "256");
  CHECK(j["satz"].is_null());
  CHECK(j["marker"] == "section");
  CHECK(j["span"] == nlohmann::ordered_json::array({0, 16}));
}

TEST_CASE("canonical is a parse fixpoint on random references") {
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    const auto ref = testing::random_reference(rng);
    const auto text = canonical(ref);
    const auto back = parse_reference(text, gaz());
    REQUIRE_MESSAGE(back.size() == 1, text);
    CHECK_MESSAGE(back[0].same_structure(ref), text);
    CHECK(canonical(back[0]) == text);
  }
}

TEST_CASE("scanner markers cover every regex match") {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::string s = testing::random_citation_sentence(rng);
    std::set<size_t> found;
    for (const auto& hit : scan_references(s, gaz())) {
      found.insert(hit.markers.begin(), hit.markers.end());
    }
    for (size_t p : testing::regex_marker_positions(s)) {
      CHECK_MESSAGE(found.count(p) == 1, s);
    }
  }
}
