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

#ifndef LEXANNOT_DOCX_COMMENTS_H_
#define LEXANNOT_DOCX_COMMENTS_H_

// Comment-anchored annotations from word-processing containers.
//
// A .docx file is a zip archive. Comments live in word/comments.xml; the
// commented text is delimited in word/document.xml by commentRangeStart and
// commentRangeEnd markers sharing the comment's id, with a commentReference
// run near the end. We flatten the document body to plain text (one "\n" per
// paragraph end), record each marker's offset in that text, and pair markers
// into spans labeled with the comment body.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexannot/core_model.h"

namespace lexannot::docx {

inline constexpr std::string_view kDocumentPart = "word/document.xml";
inline constexpr std::string_view kCommentsPart = "word/comments.xml";

struct Comment {
  std::string comment_id;
  std::optional<std::string> author;
  std::optional<std::string> date;
  // Text runs concatenated; paragraphs joined with "\n".
  std::string body;

  bool operator==(const Comment&) const = default;
};

enum class MarkerKind { start, end, reference };

struct RangeMarker {
  MarkerKind kind;
  std::string comment_id;
  // Offset in scalar values into DocumentText::text.
  size_t position;

  bool operator==(const RangeMarker&) const = default;
};

struct DocumentText {
  std::string text;
  std::vector<RangeMarker> markers;
};

// `full` pairs each start with its end. `paper_faithful` additionally cuts a
// range short where the start marker of comment id k+1 (numeric successor)
// falls strictly inside comment k's range, as the widely circulated XPath
// recipe for comment extraction does.
enum class ExtractionMode { full, paper_faithful };

struct ExtractionPolicy {
  // Keep zero-length spans (collapsed ranges, reference-only comments).
  bool allow_empty = false;
  // Unpaired ranges raise UnpairedRange instead of producing a warning.
  bool strict = false;
  // Annotator used when the comment has no author and no override is set.
  std::string default_annotator = "unknown";
  std::optional<std::string> annotator_override;
};

enum class WarningKind {
  unpaired_range,
  comment_without_range,
  range_without_comment,
  empty_span,
};
std::string_view to_string(WarningKind kind);

struct Warning {
  WarningKind kind;
  std::string comment_id;
  std::string message;
};

struct Extraction {
  // In SpanOrder. span_id is "comment-<id>", provenance is comment.
  std::vector<AnnotatedSpan> spans;
  std::vector<Warning> warnings;
};

// Parses the comments part. Throws MalformedXml, DuplicateCommentId.
std::vector<Comment> parse_comments(std::string_view part);

// Flattens the main document part and collects comment markers. Content under
// mc:Fallback is skipped (it duplicates the mc:Choice branch). Throws
// MalformedXml.
DocumentText extract_document(std::string_view part);

Extraction extract_spans(std::string_view text,
                         const std::vector<RangeMarker>& markers,
                         const std::vector<Comment>& comments,
                         ExtractionMode mode = ExtractionMode::full,
                         const ExtractionPolicy& policy = {});

struct Container {
  DocumentText document;
  std::vector<Comment> comments;
};

// Opens the zip container and parses its two relevant parts; a missing
// comments part means no comments. Other entries are ignored.
Container read_container(std::string_view zip_bytes);

Extraction extract_container(const Container& container,
                             ExtractionMode mode = ExtractionMode::full,
                             const ExtractionPolicy& policy = {});

// Writes a minimal container whose full-mode extraction reproduces `spans`
// over `text` (plus the trailing paragraph newline). Comment ids are the
// spans' indices; labels come from `labels[span_id]`, falling back to the
// span's own label; authors are the span annotators. Throws InvalidSpan.
std::string synthesize_container(
    std::string_view text, const std::vector<AnnotatedSpan>& spans,
    const std::map<std::string, std::string>& labels = {});

}  // namespace lexannot::docx

#endif  // LEXANNOT_DOCX_COMMENTS_H_
