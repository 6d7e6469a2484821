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

#include "lexannot/core_model.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "json.hpp"
#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot {

using json = nlohmann::json;

std::string_view to_string(Source source) {
  switch (source) {
    case Source::docx: return "docx";
    case Source::html: return "html";
    case Source::plain: return "plain";
  }
  return "plain";
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::comment: return "comment";
    case Provenance::manual: return "manual";
    case Provenance::parser: return "parser";
  }
  return "manual";
}

std::optional<Source> parse_source(std::string_view name) {
  if (name == "docx") return Source::docx;
  if (name == "html") return Source::html;
  if (name == "plain") return Source::plain;
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  if (name == "comment") return Provenance::comment;
  if (name == "manual") return Provenance::manual;
  if (name == "parser") return Provenance::parser;
  return std::nullopt;
}

Document::Document(std::string doc_id, std::string text, Source source,
                   Meta meta)
    : doc_id_(std::move(doc_id)),
      text_(std::move(text)),
      scalars_(unicode::decode(text_)),
      source_(source),
      meta_(std::move(meta)) {
  if (doc_id_.empty()) throw Error("document id must be nonempty");
}

bool SpanOrder::operator()(const AnnotatedSpan& a,
                           const AnnotatedSpan& b) const {
  // With equal starts, a larger end is a longer span.
  if (a.start != b.start) return a.start < b.start;
  if (a.end != b.end) return a.end > b.end;
  return a.span_id < b.span_id;
}

void sort_spans(std::vector<AnnotatedSpan>& spans) {
  std::stable_sort(spans.begin(), spans.end(), SpanOrder{});
}

LabelSet::LabelSet(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw Error("label set " + name_ + ": empty label");
    if (!seen.insert(label).second) {
      throw Error("label set " + name_ + ": duplicate label " + label);
    }
  }
}

LabelSet LabelSet::legal_entities() {
  return LabelSet("legal_entities",
                  {"PER", "RR", "AN", "LD", "ST", "STR", "LDS", "ORG", "UN",
                   "INN", "GRT", "MRK", "GS", "VO", "EUN", "VS", "VT", "RS",
                   "LIT"});
}

LabelSet LabelSet::user(std::string name) { return LabelSet(std::move(name), {}); }

bool LabelSet::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::string span_text(const Document& doc, const AnnotatedSpan& span) {
  if (span.start > span.end || span.end > doc.length()) {
    throw OutOfBounds("span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") exceeds text length " +
                      std::to_string(doc.length()));
  }
  return unicode::encode(std::u32string_view(doc.scalars())
                             .substr(span.start, span.end - span.start));
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::out_of_bounds: return "out_of_bounds";
    case ViolationKind::empty_span: return "empty_span";
    case ViolationKind::unknown_label: return "unknown_label";
    case ViolationKind::duplicate_span_id: return "duplicate_span_id";
  }
  return "unknown";
}

ValidationReport validate_annotation_set(const Document& doc,
                                         const std::vector<AnnotatedSpan>& spans,
                                         const LabelSet& labels,
                                         const ValidationPolicy& policy) {
  ValidationReport report;
  report.spans = spans;
  sort_spans(report.spans);

  std::set<std::string> seen_ids;
  for (const auto& span : report.spans) {
    const std::string range = "[" + std::to_string(span.start) + "," +
                              std::to_string(span.end) + ")";
    if (span.start > span.end || span.end > doc.length()) {
      report.violations.push_back(
          {ViolationKind::out_of_bounds, span.span_id,
           "span " + range + " outside text of length " +
               std::to_string(doc.length())});
    } else if (span.start == span.end && !policy.allow_empty) {
      report.violations.push_back(
          {ViolationKind::empty_span, span.span_id, "empty span " + range});
    }
    if (!labels.contains(span.label)) {
      report.violations.push_back({ViolationKind::unknown_label, span.span_id,
                                   "label '" + span.label + "' not in set " +
                                       labels.name()});
    }
    if (!seen_ids.insert(span.span_id).second) {
      report.violations.push_back({ViolationKind::duplicate_span_id,
                                   span.span_id,
                                   "span id '" + span.span_id + "' repeated"});
    }
  }
  return report;
}

void Project::add_document(Document doc) {
  if (index_.count(doc.doc_id()) != 0) {
    throw Error("duplicate document id " + doc.doc_id());
  }
  index_.emplace(doc.doc_id(), docs_.size());
  docs_.push_back(std::move(doc));
  spans_.emplace_back();
}

size_t Project::index_of(std::string_view doc_id) const {
  auto it = index_.find(std::string(doc_id));
  if (it == index_.end()) throw Error("unknown document id " + std::string(doc_id));
  return it->second;
}

void Project::add_span(const std::string& doc_id, AnnotatedSpan span) {
  spans_[index_of(doc_id)].push_back(std::move(span));
}

const Document* Project::find(std::string_view doc_id) const {
  auto it = index_.find(std::string(doc_id));
  return it == index_.end() ? nullptr : &docs_[it->second];
}

const std::vector<AnnotatedSpan>& Project::spans(std::string_view doc_id) const {
  return spans_[index_of(doc_id)];
}

size_t Project::span_count() const {
  size_t n = 0;
  for (const auto& s : spans_) n += s.size();
  return n;
}

std::vector<std::string> Project::annotators() const {
  std::set<std::string> names;
  for (const auto& doc_spans : spans_) {
    for (const auto& span : doc_spans) names.insert(span.annotator);
  }
  return {names.begin(), names.end()};
}

std::string write_project_jsonl(const Project& project) {
  std::string out;
  for (const auto& doc : project.documents()) {
    json meta = json::object();
    for (const auto& [k, v] : doc.meta()) meta[k] = v;
    json d = {{"kind", "doc"},
              {"doc_id", doc.doc_id()},
              {"text", doc.text()},
              {"source", to_string(doc.source())},
              {"meta", meta}};
    out += d.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
    for (const auto& span : project.spans(doc.doc_id())) {
      json s = {{"kind", "span"},
                {"doc_id", doc.doc_id()},
                {"span_id", span.span_id},
                {"start", span.start},
                {"end", span.end},
                {"label", span.label},
                {"annotator", span.annotator},
                {"provenance", to_string(span.provenance)}};
      out += s.dump(-1, ' ', false, json::error_handler_t::replace);
      out += '\n';
    }
  }
  return out;
}

namespace {

std::string required_string(const json& obj, const char* key, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw FormatError("project line " + std::to_string(line_no) +
                      ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

size_t required_offset(const json& obj, const char* key, size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_unsigned()) {
    throw FormatError("project line " + std::to_string(line_no) +
                      ": missing offset field '" + key + "'");
  }
  return it->get<size_t>();
}

}  // namespace

Project read_project_jsonl(std::string_view data) {
  Project project;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < data.size()) {
    size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError("project line " + std::to_string(line_no) + ": " +
                        e.what());
    }
    if (!obj.is_object()) {
      throw FormatError("project line " + std::to_string(line_no) +
                        ": not an object");
    }
    const std::string kind = required_string(obj, "kind", line_no);
    try {
      if (kind == "doc") {
        auto source = parse_source(required_string(obj, "source", line_no));
        if (!source) {
          throw FormatError("project line " + std::to_string(line_no) +
                            ": bad source");
        }
        Meta meta;
        if (auto it = obj.find("meta"); it != obj.end() && it->is_object()) {
          for (const auto& [k, v] : it->items()) {
            meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
          }
        }
        project.add_document(Document(required_string(obj, "doc_id", line_no),
                                      required_string(obj, "text", line_no),
                                      *source, std::move(meta)));
      } else if (kind == "span") {
        AnnotatedSpan span;
        span.span_id = required_string(obj, "span_id", line_no);
        span.start = required_offset(obj, "start", line_no);
        span.end = required_offset(obj, "end", line_no);
        span.label = required_string(obj, "label", line_no);
        span.annotator = required_string(obj, "annotator", line_no);
        auto prov = parse_provenance(required_string(obj, "provenance", line_no));
        if (!prov) {
          throw FormatError("project line " + std::to_string(line_no) +
                            ": bad provenance");
        }
        span.provenance = *prov;
        project.add_span(required_string(obj, "doc_id", line_no),
                         std::move(span));
      } else {
        throw FormatError("project line " + std::to_string(line_no) +
                          ": unknown kind '" + kind + "'");
      }
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError("project line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return project;
}

}  // namespace lexannot
