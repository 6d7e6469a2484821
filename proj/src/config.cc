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

#include "lexannot/config.h"

#include <charconv>
#include <set>
#include <string>

#include "lexannot/error.h"
#include "lexannot/file_io.h"

namespace lexannot {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_bool(const std::string& key, std::string_view v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw BadValue(key, "expected true or false, got '" + std::string(v) + "'");
}

long long parse_int(const std::string& key, std::string_view v) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw BadValue(key, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

std::filesystem::path existing_path(const std::string& key, std::string_view v,
                                    const std::filesystem::path& base_dir) {
  std::filesystem::path p(v);
  if (p.is_relative()) p = base_dir / p;
  if (!std::filesystem::exists(p)) {
    throw BadValue(key, "no such file '" + p.string() + "'");
  }
  return p;
}

}  // namespace

std::optional<docx::ExtractionMode> parse_extraction_mode(std::string_view name) {
  if (name == "full") return docx::ExtractionMode::full;
  if (name == "paper" || name == "paper_faithful") {
    return docx::ExtractionMode::paper_faithful;
  }
  return std::nullopt;
}

std::optional<conll::Dialect> parse_dialect(std::string_view name) {
  if (name == "tab") return conll::Dialect::tab;
  if (name == "space") return conll::Dialect::space;
  return std::nullopt;
}

Config parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  Config config;
  std::set<std::string> seen;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;

    const size_t cut = line.find_first_of("=:");
    if (cut == std::string_view::npos) throw BadKey(std::string(line));
    const std::string key(trim(line.substr(0, cut)));
    std::string_view value = trim(line.substr(cut + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (!seen.insert(key).second) throw BadValue(key, "key given twice");

    if (key == "label_set") {
      config.label_set = existing_path(key, value, base_dir);
    } else if (key == "gazetteer") {
      config.gazetteer = existing_path(key, value, base_dir);
    } else if (key == "registry") {
      config.registry = existing_path(key, value, base_dir);
    } else if (key == "recognized_headings") {
      std::set<std::string> names;
      size_t p = 0;
      while (p <= value.size()) {
        size_t comma = value.find(',', p);
        if (comma == std::string_view::npos) comma = value.size();
        const auto name = trim(value.substr(p, comma - p));
        if (!name.empty()) names.emplace(cases::normalize_heading(name));
        p = comma + 1;
      }
      names.erase("");
      if (names.empty()) throw BadValue(key, "empty heading list");
      config.heading_rule.recognized = std::move(names);
    } else if (key == "max_raw_length") {
      const long long v = parse_int(key, value);
      if (v <= 0) throw BadValue(key, "must be positive");
      config.heading_rule.max_raw_length = static_cast<size_t>(v);
    } else if (key == "heading_level") {
      const long long v = parse_int(key, value);
      if (v < 1 || v > 6) throw BadValue(key, "must be between 1 and 6");
      config.heading_rule.heading_level = static_cast<int>(v);
    } else if (key == "extraction_mode") {
      auto mode = parse_extraction_mode(value);
      if (!mode) throw BadValue(key, "expected full or paper");
      config.extraction_mode = *mode;
    } else if (key == "conll_dialect") {
      auto dialect = parse_dialect(value);
      if (!dialect) throw BadValue(key, "expected tab or space");
      config.conll_dialect = *dialect;
    } else if (key == "strict") {
      config.strict = parse_bool(key, value);
    } else if (key == "allow_empty") {
      config.allow_empty = parse_bool(key, value);
    } else {
      throw BadKey(key);
    }
  }
  return config;
}

Config load_config(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) throw ConfigNotFound(path.string());
  return parse_config(read_file(path), path.parent_path());
}

LabelSet load_label_set(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> labels;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const auto line = trim(std::string_view(text).substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    labels.emplace_back(line);
  }
  return LabelSet(path.stem().string(), std::move(labels));
}

}  // namespace lexannot
