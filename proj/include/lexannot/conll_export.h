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

#ifndef LEXANNOT_CONLL_EXPORT_H_
#define LEXANNOT_CONLL_EXPORT_H_

// Standoff spans -> BIO-tagged tokens -> two-column CoNLL files.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexannot/core_model.h"

namespace lexannot::conll {

struct Token {
  std::string text;
  // [start, end) in scalar values into the source text.
  size_t start = 0;
  size_t end = 0;
  // Offsets were reconstructed by parse_conll, not taken from a source text.
  bool synthetic = false;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct TokenRow {
  Token token;
  std::string tag;  // "O", "B-<label>" or "I-<label>"

  bool operator==(const TokenRow&) const = default;
};

using RowSentence = std::vector<TokenRow>;

// Abs., Art., Nr., S., Buchst., lit., Unterabs., Halbs.
const std::set<std::string>& default_abbreviations();

// Whitespace tokenization with punctuation split off the word edges, except
// the trailing period of a listed abbreviation. "§" is always a token of its
// own. One sentence per nonempty line.
std::vector<Sentence> tokenize(std::string_view text,
                               const std::set<std::string>& abbreviations =
                                   default_abbreviations());

enum class DropReason { overlap_loser, out_of_tokens };
std::string_view to_string(DropReason reason);

struct DroppedSpan {
  AnnotatedSpan span;
  DropReason reason;
};

struct BioResult {
  std::vector<RowSentence> rows;
  std::vector<DroppedSpan> dropped;
  // Spans that made it into `rows`, in priority order.
  std::vector<AnnotatedSpan> emitted;
};

// A token belongs to a span when the token's start lies in the span. Spans
// claim tokens in SpanOrder (earliest start, then longest); a span touching
// an already claimed token is dropped whole. A span reaching into a later
// sentence restarts with "B-" there.
BioResult spans_to_bio(const std::vector<Sentence>& sentences,
                       const std::vector<AnnotatedSpan>& spans);

// Label of a tag without its B-/I- prefix; "O" stays "O".
std::string base_label(std::string_view tag);

enum class Dialect { tab, space };

std::string write_conll(const std::vector<RowSentence>& rows,
                        Dialect dialect = Dialect::tab);

// Inverse of write_conll. Offsets are synthetic: tokens laid out as if joined
// by single spaces. Throws BadRow, BadTag.
std::vector<RowSentence> parse_conll(std::string_view data,
                                     Dialect dialect = Dialect::tab);

// Empty when every I-X directly follows B-X or I-X in its sentence and all
// tags are well formed.
std::vector<std::string> bio_violations(const std::vector<RowSentence>& rows);

struct TagRun {
  size_t sentence;
  size_t first;  // token index within the sentence
  size_t last;   // inclusive
  std::string label;

  bool operator==(const TagRun&) const = default;
};

// Maximal B-X I-X* runs.
std::vector<TagRun> bio_runs(const std::vector<RowSentence>& rows);

struct ProjectExport {
  std::vector<RowSentence> rows;
  // Parallel to dropped: owning document.
  std::vector<std::string> dropped_doc_ids;
  std::vector<DroppedSpan> dropped;
  size_t input_spans = 0;
  size_t emitted_spans = 0;
};

// All documents in project order; spans optionally restricted to one
// annotator.
ProjectExport export_project(const Project& project,
                             const std::optional<std::string>& annotator = {},
                             const std::set<std::string>& abbreviations =
                                 default_abbreviations());

// JSONL, one object per dropped span with its reason code.
std::string dropped_report(const ProjectExport& result);

}  // namespace lexannot::conll

#endif  // LEXANNOT_CONLL_EXPORT_H_
