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

#include "lexannot/conll_export.h"

#include <algorithm>

#include "json.hpp"
#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot::conll {

const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> kAbbreviations{
      "Abs.", "Art.", "Nr.", "S.", "Buchst.", "lit.", "Unterabs.", "Halbs."};
  return kAbbreviations;
}

namespace {

void emit(std::u32string_view s, size_t begin, size_t end, Sentence& out) {
  if (begin < end) {
    out.push_back({unicode::encode(s.substr(begin, end - begin)), begin, end, false});
  }
}

// Splits one whitespace-free piece (no '§' inside) at its punctuation edges.
void split_piece(std::u32string_view s, size_t begin, size_t end,
                 const std::set<std::string>& abbreviations, Sentence& out) {
  while (begin < end && unicode::is_punct(s[begin])) {
    emit(s, begin, begin + 1, out);
    ++begin;
  }
  size_t core_end = end;
  while (core_end > begin && unicode::is_punct(s[core_end - 1])) {
    if (abbreviations.count(unicode::encode(s.substr(begin, core_end - begin)))) break;
    --core_end;
  }
  emit(s, begin, core_end, out);
  for (size_t i = core_end; i < end; ++i) emit(s, i, i + 1, out);
}

}  // namespace

std::vector<Sentence> tokenize(std::string_view text,
                               const std::set<std::string>& abbreviations) {
  const std::u32string s = unicode::decode(text);
  std::vector<Sentence> sentences;
  Sentence current;
  size_t i = 0;
  while (i <= s.size()) {
    if (i == s.size() || s[i] == U'\n') {
      if (!current.empty()) sentences.push_back(std::move(current));
      current.clear();
      ++i;
      continue;
    }
    if (unicode::is_space(s[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < s.size() && s[j] != U'\n' && !unicode::is_space(s[j])) ++j;
    size_t piece = i;
    for (size_t k = i; k < j; ++k) {
      if (s[k] == U'§') {
        split_piece(s, piece, k, abbreviations, current);
        emit(s, k, k + 1, current);
        piece = k + 1;
      }
    }
    split_piece(s, piece, j, abbreviations, current);
    i = j;
  }
  return sentences;
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::overlap_loser: return "overlap_loser";
    case DropReason::out_of_tokens: return "out_of_tokens";
  }
  return "unknown";
}

BioResult spans_to_bio(const std::vector<Sentence>& sentences,
                       const std::vector<AnnotatedSpan>& spans) {
  struct Position {
    size_t sentence;
    size_t index;
    size_t start;
  };
  std::vector<Position> flat;
  BioResult result;
  result.rows.resize(sentences.size());
  for (size_t si = 0; si < sentences.size(); ++si) {
    for (size_t ti = 0; ti < sentences[si].size(); ++ti) {
      flat.push_back({si, ti, sentences[si][ti].start});
      result.rows[si].push_back({sentences[si][ti], "O"});
    }
  }
  std::vector<bool> claimed(flat.size(), false);

  std::vector<AnnotatedSpan> ordered = spans;
  sort_spans(ordered);
  for (auto& span : ordered) {
    const auto lo = std::lower_bound(
        flat.begin(), flat.end(), span.start,
        [](const Position& p, size_t v) { return p.start < v; });
    const auto hi = std::lower_bound(
        lo, flat.end(), span.end,
        [](const Position& p, size_t v) { return p.start < v; });
    const size_t first = static_cast<size_t>(lo - flat.begin());
    const size_t last = static_cast<size_t>(hi - flat.begin());
    if (first >= last) {
      result.dropped.push_back({std::move(span), DropReason::out_of_tokens});
      continue;
    }
    bool taken = false;
    for (size_t k = first; k < last && !taken; ++k) taken = claimed[k];
    if (taken) {
      result.dropped.push_back({std::move(span), DropReason::overlap_loser});
      continue;
    }
    for (size_t k = first; k < last; ++k) {
      claimed[k] = true;
      const bool begins = k == first || flat[k].sentence != flat[k - 1].sentence;
      result.rows[flat[k].sentence][flat[k].index].tag =
          (begins ? "B-" : "I-") + span.label;
    }
    result.emitted.push_back(std::move(span));
  }
  return result;
}

std::string base_label(std::string_view tag) {
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    return std::string(tag.substr(2));
  }
  return std::string(tag);
}

std::string write_conll(const std::vector<RowSentence>& rows, Dialect dialect) {
  const char sep = dialect == Dialect::tab ? '\t' : ' ';
  std::string out;
  bool first = true;
  for (const auto& sentence : rows) {
    if (sentence.empty()) continue;
    if (!first) out += '\n';
    first = false;
    for (const auto& row : sentence) {
      out += row.token.text;
      out += sep;
      out += row.tag;
      out += '\n';
    }
  }
  return out;
}

namespace {

// Empty string when the tag is acceptable after `previous` in a sentence.
std::string tag_problem(std::string_view tag, std::string_view previous) {
  if (tag == "O") return {};
  if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
    return "malformed tag";
  }
  if (tag[0] == 'I') {
    const std::string label = base_label(tag);
    if (previous.empty() || previous == "O" || base_label(previous) != label) {
      return "I- tag does not continue a B-/I- run of the same label";
    }
  }
  return {};
}

}  // namespace

std::vector<RowSentence> parse_conll(std::string_view data, Dialect dialect) {
  const char sep = dialect == Dialect::tab ? '\t' : ' ';
  std::vector<RowSentence> rows;
  RowSentence current;
  size_t cursor = 0;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < data.size()) {
    size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    const std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) {
      if (!current.empty()) rows.push_back(std::move(current));
      current.clear();
      continue;
    }
    const size_t cut = line.find(sep);
    if (cut == std::string_view::npos || line.find(sep, cut + 1) != std::string_view::npos) {
      throw BadRow(line_no, "expected exactly two columns");
    }
    const std::string_view token = line.substr(0, cut);
    const std::string_view tag = line.substr(cut + 1);
    if (token.empty() || tag.empty()) throw BadRow(line_no, "empty column");
    const std::string_view previous = current.empty() ? std::string_view() : current.back().tag;
    if (!tag_problem(tag, previous).empty()) throw BadTag(line_no, std::string(tag));
    const size_t len = unicode::length(token);
    current.push_back({{std::string(token), cursor, cursor + len, true}, std::string(tag)});
    cursor += len + 1;
  }
  if (!current.empty()) rows.push_back(std::move(current));
  return rows;
}

std::vector<std::string> bio_violations(const std::vector<RowSentence>& rows) {
  std::vector<std::string> out;
  for (size_t si = 0; si < rows.size(); ++si) {
    std::string_view previous;
    for (size_t ti = 0; ti < rows[si].size(); ++ti) {
      const std::string& tag = rows[si][ti].tag;
      if (auto problem = tag_problem(tag, previous); !problem.empty()) {
        out.push_back("sentence " + std::to_string(si) + " token " +
                      std::to_string(ti) + " '" + tag + "': " + problem);
      }
      previous = tag;
    }
  }
  return out;
}

std::vector<TagRun> bio_runs(const std::vector<RowSentence>& rows) {
  std::vector<TagRun> runs;
  for (size_t si = 0; si < rows.size(); ++si) {
    std::optional<TagRun> open;
    for (size_t ti = 0; ti < rows[si].size(); ++ti) {
      const std::string& tag = rows[si][ti].tag;
      if (open && tag.size() > 2 && tag[0] == 'I' && base_label(tag) == open->label) {
        open->last = ti;
        continue;
      }
      if (open) runs.push_back(*open);
      open.reset();
      if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
        open = TagRun{si, ti, ti, base_label(tag)};
      }
    }
    if (open) runs.push_back(*open);
  }
  return runs;
}

ProjectExport export_project(const Project& project,
                             const std::optional<std::string>& annotator,
                             const std::set<std::string>& abbreviations) {
  ProjectExport out;
  for (const auto& doc : project.documents()) {
    std::vector<AnnotatedSpan> spans;
    for (const auto& span : project.spans(doc.doc_id())) {
      if (!annotator || span.annotator == *annotator) spans.push_back(span);
    }
    out.input_spans += spans.size();
    auto bio = spans_to_bio(tokenize(doc.text(), abbreviations), spans);
    out.emitted_spans += bio.emitted.size();
    for (auto& sentence : bio.rows) out.rows.push_back(std::move(sentence));
    for (auto& d : bio.dropped) {
      out.dropped_doc_ids.push_back(doc.doc_id());
      out.dropped.push_back(std::move(d));
    }
  }
  return out;
}

std::string dropped_report(const ProjectExport& result) {
  std::string out;
  for (size_t i = 0; i < result.dropped.size(); ++i) {
    const auto& d = result.dropped[i];
    nlohmann::ordered_json row{
        {"doc_id", result.dropped_doc_ids[i]},
        {"span_id", d.span.span_id},
        {"start", d.span.start},
        {"end", d.span.end},
        {"label", d.span.label},
        {"annotator", d.span.annotator},
        {"reason", std::string(to_string(d.reason))},
    };
    out += row.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

}  // namespace lexannot::conll
