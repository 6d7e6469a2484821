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

#include "lexannot/case_cleaner.h"

#include "doctest.h"
#include "json.hpp"
#include "lexannot/error.h"
#include "lexannot/file_io.h"

using namespace lexannot;
using namespace lexannot::cases;

namespace {

std::string data_file(const std::string& name) {
  return read_file(std::string(LEXANNOT_TEST_DATA) + "/" + name);
}

Meta volklingen_meta() {
  return {{"id", "127981"},
          {"slug", "ag-volklingen-2002-07-10-5c-c-24102"},
          {"date", "2002-07-10"},
          {"court", "Amtsgericht Völklingen"},
          {"jurisdiction", "Ordentliche Gerichtsbarkeit"},
          {"level_of_appeal", "Amtsgericht"},
          {"type", "Urteil"}};
}

}  // namespace

TEST_CASE("heading normalization") {
  CHECK(normalize_heading("1. tenor") == "tenor");
  CHECK(normalize_heading("t e n o r") == "tenor");
  CHECK(normalize_heading("Entscheidungsgründe") == "entscheidungsgründe");
  CHECK(normalize_heading("II. Gründe:") == "gründe");
  CHECK(normalize_heading("A) Tatbestand") == "tatbestand");
  CHECK(normalize_heading("(3) TENOR") == "tenor");
  CHECK(normalize_heading("Leitsatz") == "leitsatz");
  CHECK(normalize_heading("") == "");
}

TEST_CASE("sections run until the next heading of the same level") {
  const auto ex = extract_sections("<h2>Tenor</h2><p>X.</p><h2>Gründe</h2><p>Y.</p>");
  CHECK(ex.sections == std::map<std::string, std::string>{{"tenor", "X."}, {"gründe", "Y."}});
  CHECK(ex.warnings.empty());
}

TEST_CASE("over-long headings are not section starts") {
  const std::string long_heading(60, 'a');
  const auto ex = extract_sections("<h2>Tenor</h2><p>X.</p><h2>" + long_heading +
                                   "</h2><p>Z.</p>");
  CHECK(ex.sections == std::map<std::string, std::string>{{"tenor", "X."}});
  HeadingRule loose;
  loose.max_raw_length = 100;
  loose.recognized.insert(long_heading);
  CHECK(extract_sections("<h2>" + long_heading + "</h2>z", loose).sections.count(long_heading));
}

TEST_CASE("duplicate headings keep the first and warn") {
  const auto ex = extract_sections("<h2>Tenor</h2>a<h2>Tenor</h2>b");
  CHECK(ex.sections.at("tenor") == "a");
  CHECK(ex.warnings.size() == 1);
}

TEST_CASE("heading level is configurable") {
  HeadingRule rule;
  rule.heading_level = 3;
  const auto ex = extract_sections("<h2>Tenor</h2><h3>Tenor</h3>drei", rule);
  CHECK(ex.sections.at("tenor") == "drei");
  rule.heading_level = 9;
  CHECK_THROWS_AS(extract_sections("", rule), Error);
}

TEST_CASE("fixture decision yields the expected section map") {
  const auto ex = extract_sections(data_file("decision.html"));
  const auto expected = nlohmann::json::parse(data_file("decision.sections.json"));
  CHECK(ex.sections == expected.get<std::map<std::string, std::string>>());
}

TEST_CASE("html_to_text decodes entities and drops scripts") {
  CHECK(html_to_text("<p>a&amp;b &sect; 1</p><script>x()</script><p>&#228;&#xFC;</p>") ==
        "a&b § 1\näü");
  CHECK(html_to_text("1 < 2 &bogus; <b>fett</b>") == "1 < 2 &bogus; fett");
}

TEST_CASE("case record from metadata and html") {
  const auto r = build_case_record(volklingen_meta(), data_file("decision.html"));
  CHECK(r.id == "127981");
  CHECK(r.slug == "ag-volklingen-2002-07-10-5c-c-24102");
  CHECK(r.date == "2002-07-10");
  CHECK(r.court == "Amtsgericht Völklingen");
  CHECK(r.jurisdiction == "Ordentliche Gerichtsbarkeit");
  CHECK(r.level_of_appeal == "Amtsgericht");
  CHECK(r.type == "Urteil");
  CHECK_FALSE(r.ecli.has_value());
  CHECK(r.tenor.has_value());
  CHECK_FALSE(r.gruende.has_value());
  CHECK(r.entscheidungsgruende.has_value());

  const auto j = to_json(r);
  CHECK(j["ecli"].is_null());
  CHECK(j["gründe"].is_null());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"id", "slug", "ecli", "date", "court",
                                         "jurisdiction", "level_of_appeal", "type",
                                         "tenor", "tatbestand", "gründe",
                                         "entscheidungsgründe"});
}

TEST_CASE("ecli placeholders are null") {
  auto meta = volklingen_meta();
  meta["ecli"] = "NaN";
  CHECK_FALSE(build_case_record(meta, "").ecli.has_value());
  meta["ecli"] = "ECLI:DE:AGVOEL:2002:0710.5CC241.02.0A";
  CHECK(build_case_record(meta, "").ecli == "ECLI:DE:AGVOEL:2002:0710.5CC241.02.0A");
}

TEST_CASE("missing metadata is reported by field") {
  auto meta = volklingen_meta();
  meta.erase("slug");
  try {
    build_case_record(meta, "");
    FAIL("expected MissingMeta");
  } catch (const MissingMeta& e) {
    CHECK(e.field() == "slug");
  }
}
