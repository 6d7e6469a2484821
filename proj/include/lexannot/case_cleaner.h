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

#ifndef LEXANNOT_CASE_CLEANER_H_
#define LEXANNOT_CASE_CLEANER_H_

// Section extraction from HTML court decisions. Headings at a fixed level are
// taken as section titles when short enough and, once normalized, one of the
// recognized names; a section runs until the next heading of the same level.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lexannot/core_model.h"

namespace lexannot::cases {

struct HeadingRule {
  std::set<std::string> recognized{"tenor", "tatbestand", "gründe",
                                   "entscheidungsgründe"};
  // Upper bound on the heading's visible text, in scalar values.
  size_t max_raw_length = 40;
  int heading_level = 2;

  // Throws lexannot::Error if the rule is unusable.
  void validate() const;
};

// "1. Tenor" -> "tenor", "t e n o r" -> "tenor", "I. Gründe" -> "gründe".
// Lowercases, drops leading enumerators (numbers, roman numerals or single
// letters followed by '.' or ')') and keeps letters only. An empty result
// means "not a title".
std::string normalize_heading(std::string_view raw);

struct SectionExtraction {
  std::map<std::string, std::string> sections;
  std::vector<std::string> warnings;
};

// Lenient: never fails on tag soup; ill-formed UTF-8 is replaced and noted in
// warnings.
SectionExtraction extract_sections(std::string_view html,
                                   const HeadingRule& rule = {});

// Visible text of an HTML fragment: tags stripped, entities decoded, script
// and style dropped, whitespace collapsed, block boundaries as "\n".
std::string html_to_text(std::string_view html);

struct CaseRecord {
  std::string id;
  std::string slug;
  std::optional<std::string> ecli;
  std::string date;
  std::string court;
  std::string jurisdiction;
  std::string level_of_appeal;
  std::string type;
  std::optional<std::string> tenor;
  std::optional<std::string> tatbestand;
  std::optional<std::string> gruende;
  std::optional<std::string> entscheidungsgruende;

  bool operator==(const CaseRecord&) const = default;
};

// Copies the eight metadata features and fills the four sections. Throws
// MissingMeta for any absent key other than ecli; an ecli of "", "NaN" or
// "null" is treated as absent.
CaseRecord build_case_record(const Meta& meta, std::string_view html,
                             const HeadingRule& rule = {},
                             std::vector<std::string>* warnings = nullptr);

// Object with the twelve features in their canonical order; absent -> null.
nlohmann::ordered_json to_json(const CaseRecord& record);

}  // namespace lexannot::cases

#endif  // LEXANNOT_CASE_CLEANER_H_
