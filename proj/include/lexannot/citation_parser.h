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

#ifndef LEXANNOT_CITATION_PARSER_H_
#define LEXANNOT_CITATION_PARSER_H_

// German statute citations ("§ 14 Abs. 3 Satz 2 SchVG", "§§ 47 Abs. 1, § 154
// Abs. 2 VwGO", "Art. 6 GG") parsed by recursive descent:
//
//   RefList  := Marker Item (Sep Marker? Item)*
//   Sep      := "," | "und" | "oder"
//   Item     := Number Suffix* CodeName?
//   Suffix   := ("Abs." | "Absatz") Number
//             | ("Unterabs." | "Unterabsatz") Number
//             | ("Satz" | "S.") Number
//             | ("Nr." | "Nummer") Number
//             | ("lit." | "Buchst." | "Buchstabe") Letter
//             | ("Halbs." | "Halbsatz") Number          (consumed, not stored)
//             | Number "." ("Buch" | "Teil" | "Abschnitt" | "Titel"
//                           | "Untertitel" | "Kapitel")
//   Marker   := "§§" | "§" | "Art." | "Artikel"
//   Number   := [0-9]+ [a-z]?
//   CodeName := gazetteer entry, or a capitalized letter run ending in
//               "G", "GB" or "O" (EStG, VwGO, SchVG, ...)
//
// A code name attaches to its item; items without one take the code of the
// nearest following item that has one.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace lexannot::citation {

enum class Marker { section, sections, artikel };
std::string_view to_string(Marker marker);

struct LawReference {
  // Structural fields, set by the parser.
  std::optional<std::string> norm_code;
  std::optional<std::string> buch;
  std::optional<std::string> teil;
  std::optional<std::string> abschnitt;
  std::optional<std::string> titel;
  std::optional<std::string> untertitel;
  std::optional<std::string> kapitel;
  std::string artikel;
  std::optional<std::string> absatz;
  std::optional<std::string> unterabsatz;
  std::optional<std::string> satz;
  std::optional<std::string> nummer;
  std::optional<std::string> buchstabe;

  // Enrichment fields, only ever set by enrich().
  std::optional<std::string> online_link_gesetzbuch;
  std::optional<std::string> online_link_exakt;
  std::optional<std::string> alt_spelling_1;
  std::optional<std::string> alt_spelling_2;
  std::optional<std::string> law_title;
  std::optional<std::string> full_text;
  std::optional<std::string> absatz_text;

  // [start, end) in scalar values relative to the parsed string.
  size_t span_start = 0;
  size_t span_end = 0;
  Marker marker = Marker::section;

  bool same_structure(const LawReference& other) const;
  bool operator==(const LawReference&) const = default;
};

class Gazetteer {
 public:
  using CodeSet = std::set<std::string, std::less<>>;

  Gazetteer() = default;
  explicit Gazetteer(CodeSet codes) : codes_(std::move(codes)) {}

  // GG, BGB, StGB, HGB, ZPO, VwGO, SchVG, StPO, SGB.
  static Gazetteer builtin();
  // One code per line; blank lines and '#' comments skipped. Adds to the
  // built-in codes when `extend_builtin` is set.
  static Gazetteer parse(std::string_view text, bool extend_builtin = true);

  bool contains(std::string_view code) const;
  void add(std::string code) { codes_.insert(std::move(code)); }
  const CodeSet& codes() const { return codes_; }

 private:
  CodeSet codes_;
};

struct ScanHit {
  // [start, end) in scalar values into the scanned text.
  size_t start = 0;
  size_t end = 0;
  std::string raw;
  // Offset of every marker token inside the hit (one per reference that
  // carries its own marker).
  std::vector<size_t> markers;
};

// Finds maximal citation substrings in order. Hits never overlap; scanning
// never fails.
std::vector<ScanHit> scan_references(std::string_view text,
                                     const Gazetteer& gazetteer);

// Parses one citation list into references. Throws ParseError when the text
// does not start with a marker or the marker lacks its number.
std::vector<LawReference> parse_reference(std::string_view raw,
                                          const Gazetteer& gazetteer);

struct RegistryRow {
  std::string norm_code;
  std::string artikel;
  std::optional<std::string> absatz;
  std::optional<std::string> law_title;
  std::optional<std::string> online_link_gesetzbuch;
  std::optional<std::string> online_link_exakt;
  std::optional<std::string> full_text;
  std::optional<std::string> absatz_text;
  std::vector<std::string> alt_spellings;
};

// Offline statute registry keyed by (norm_code, artikel, absatz?).
class RegistryTable {
 public:
  // Throws lexannot::Error on an empty code or a repeated key.
  void add(RegistryRow row);
  const RegistryRow* find(std::string_view norm_code, std::string_view artikel,
                          const std::optional<std::string>& absatz) const;
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // JSONL rows as written by the registry export; throws FormatError.
  static RegistryTable parse_jsonl(std::string_view data);

 private:
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, RegistryRow> rows_;
};

struct Enrichment {
  LawReference ref;
  bool matched = false;
};

// Copies `ref` and fills the enrichment fields from the row keyed at Absatz
// granularity when the reference has an Absatz, else at section granularity.
// An Absatz-level miss falls back to the section row for everything except
// absatz_text.
Enrichment enrich(const LawReference& ref, const RegistryTable& table);

// "§ 14 Abs. 3 Satz 2 SchVG" style rendering of the structural fields.
std::string canonical(const LawReference& ref);

// All reference fields (absent -> null) plus marker and span.
nlohmann::ordered_json to_json(const LawReference& ref);

}  // namespace lexannot::citation

#endif  // LEXANNOT_CITATION_PARSER_H_
