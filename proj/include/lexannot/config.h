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

#ifndef LEXANNOT_CONFIG_H_
#define LEXANNOT_CONFIG_H_

// Run configuration: a flat file of `key = value` (or `key: value`) lines.
// '#' starts a comment line; values may be double-quoted. Keys:
//
//   label_set            path, one label per line
//   gazetteer            path, one statute code per line
//   registry             path, statute registry JSONL
//   recognized_headings  comma-separated normalized section titles
//   max_raw_length       positive integer
//   heading_level        1..6
//   extraction_mode      full | paper | paper_faithful
//   conll_dialect        tab | space
//   strict               true | false
//   allow_empty          true | false
//
// Relative paths resolve against the config file's directory.

#include <filesystem>
#include <optional>
#include <string_view>

#include "lexannot/case_cleaner.h"
#include "lexannot/conll_export.h"
#include "lexannot/core_model.h"
#include "lexannot/docx_comments.h"

namespace lexannot {

struct Config {
  std::optional<std::filesystem::path> label_set;
  std::optional<std::filesystem::path> gazetteer;
  std::optional<std::filesystem::path> registry;
  cases::HeadingRule heading_rule;
  docx::ExtractionMode extraction_mode = docx::ExtractionMode::full;
  conll::Dialect conll_dialect = conll::Dialect::tab;
  bool strict = false;
  bool allow_empty = false;
};

// Throws ConfigNotFound, BadKey, BadValue.
Config load_config(const std::filesystem::path& path);
Config parse_config(std::string_view text, const std::filesystem::path& base_dir);

std::optional<docx::ExtractionMode> parse_extraction_mode(std::string_view name);
std::optional<conll::Dialect> parse_dialect(std::string_view name);

// One label per line; the set is named after the file stem.
LabelSet load_label_set(const std::filesystem::path& path);

}  // namespace lexannot

#endif  // LEXANNOT_CONFIG_H_
