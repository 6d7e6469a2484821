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

#ifndef LEXANNOT_CORE_MODEL_H_
#define LEXANNOT_CORE_MODEL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexannot {

enum class Source { docx, html, plain };
enum class Provenance { comment, manual, parser };

std::string_view to_string(Source source);
std::string_view to_string(Provenance provenance);
std::optional<Source> parse_source(std::string_view name);
std::optional<Provenance> parse_provenance(std::string_view name);

using Meta = std::map<std::string, std::string>;

// Immutable text plus identity. Offsets into a document count Unicode scalar
// values; scalars() exposes the decoded text in that coordinate system.
class Document {
 public:
  Document(std::string doc_id, std::string text, Source source = Source::plain,
           Meta meta = {});

  const std::string& doc_id() const { return doc_id_; }
  const std::string& text() const { return text_; }
  const std::u32string& scalars() const { return scalars_; }
  size_t length() const { return scalars_.size(); }
  Source source() const { return source_; }
  const Meta& meta() const { return meta_; }

 private:
  std::string doc_id_;
  std::string text_;
  std::u32string scalars_;
  Source source_;
  Meta meta_;
};

// Half-open interval [start, end) over a document plus its label.
struct AnnotatedSpan {
  size_t start = 0;
  size_t end = 0;
  std::string label;
  std::string annotator;
  std::string span_id;
  Provenance provenance = Provenance::manual;

  size_t length() const { return end > start ? end - start : 0; }
  bool operator==(const AnnotatedSpan&) const = default;
};

// Total order on spans: start ascending, longer first, then span_id.
struct SpanOrder {
  bool operator()(const AnnotatedSpan& a, const AnnotatedSpan& b) const;
};
void sort_spans(std::vector<AnnotatedSpan>& spans);

class LabelSet {
 public:
  // Throws lexannot::Error on empty or duplicate labels.
  LabelSet(std::string name, std::vector<std::string> labels);

  // The 19 German legal named-entity classes.
  static LabelSet legal_entities();
  // Empty, user-populated set (e.g. for GDPR labels supplied per project).
  static LabelSet user(std::string name = "user");

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(std::string_view label) const;
  bool empty() const { return labels_.empty(); }

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

// Substring of the document over [span.start, span.end), UTF-8 encoded.
// Throws OutOfBounds if the span does not fit the text.
std::string span_text(const Document& doc, const AnnotatedSpan& span);

struct ValidationPolicy {
  bool allow_empty = false;
};

enum class ViolationKind { out_of_bounds, empty_span, unknown_label,
                           duplicate_span_id };
std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string span_id;
  std::string message;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Input spans in SpanOrder.
  std::vector<AnnotatedSpan> spans;

  bool valid() const { return violations.empty(); }
  bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate_annotation_set(const Document& doc,
                                         const std::vector<AnnotatedSpan>& spans,
                                         const LabelSet& labels,
                                         const ValidationPolicy& policy = {});

// A set of documents and the spans that point into them, in insertion order.
class Project {
 public:
  // Throws lexannot::Error on duplicate doc_id.
  void add_document(Document doc);
  // Throws lexannot::Error if doc_id is unknown.
  void add_span(const std::string& doc_id, AnnotatedSpan span);

  const std::vector<Document>& documents() const { return docs_; }
  const Document* find(std::string_view doc_id) const;
  const std::vector<AnnotatedSpan>& spans(std::string_view doc_id) const;
  size_t span_count() const;
  // Distinct annotator names over all spans, sorted.
  std::vector<std::string> annotators() const;

 private:
  size_t index_of(std::string_view doc_id) const;

  std::vector<Document> docs_;
  std::vector<std::vector<AnnotatedSpan>> spans_;
  std::unordered_map<std::string, size_t> index_;
};

// JSONL project persistence: one object per line, `kind` is "doc" or "span",
// each document line precedes its spans.
std::string write_project_jsonl(const Project& project);
Project read_project_jsonl(std::string_view data);

}  // namespace lexannot

#endif  // LEXANNOT_CORE_MODEL_H_
