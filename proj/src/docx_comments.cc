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

#include "lexannot/docx_comments.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "lexannot/error.h"
#include "lexannot/unicode.h"
#include "lexannot/xml_pull.h"
#include "lexannot/zip_archive.h"

namespace lexannot::docx {

namespace {

using xml::PullParser;

// Element-stack bookkeeping shared by both part readers.
class Walker {
 public:
  explicit Walker(std::string_view part) : parser_(part) {}

  PullParser::Event next() {
    if (pop_pending_) {
      stack_.pop_back();
      pop_pending_ = false;
    }
    const auto ev = parser_.next();
    if (ev == PullParser::Event::start_element) {
      stack_.emplace_back(parser_.local_name());
      if (stack_.back() == "Fallback") ++fallback_depth_;
    } else if (ev == PullParser::Event::end_element) {
      if (stack_.back() == "Fallback") --fallback_depth_;
      pop_pending_ = true;
    }
    return ev;
  }

  const PullParser& parser() const { return parser_; }
  std::string_view current() const { return stack_.back(); }
  std::string_view parent() const {
    return stack_.size() >= 2 ? std::string_view(stack_[stack_.size() - 2])
                              : std::string_view();
  }
  bool in_fallback() const { return fallback_depth_ > 0; }

  std::string required_id() const {
    const std::string* id = parser_.attribute("id");
    if (id == nullptr) {
      throw MalformedXml("<" + std::string(parser_.name()) + "> without id",
                         parser_.offset());
    }
    return *id;
  }

 private:
  PullParser parser_;
  std::vector<std::string> stack_;
  int fallback_depth_ = 0;
  bool pop_pending_ = false;
};

std::optional<unsigned long long> numeric_id(std::string_view id) {
  unsigned long long value = 0;
  const auto* end = id.data() + id.size();
  auto [ptr, ec] = std::from_chars(id.data(), end, value);
  if (id.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

struct MarkerIndex {
  std::optional<size_t> start;
  std::optional<size_t> end;
  std::optional<size_t> reference;
  std::vector<size_t> all_starts;
};

}  // namespace

std::string_view to_string(WarningKind kind) {
  switch (kind) {
    case WarningKind::unpaired_range: return "unpaired_range";
    case WarningKind::comment_without_range: return "comment_without_range";
    case WarningKind::range_without_comment: return "range_without_comment";
    case WarningKind::empty_span: return "empty_span";
  }
  return "unknown";
}

std::vector<Comment> parse_comments(std::string_view part) {
  Walker walker(part);
  std::vector<Comment> comments;
  std::set<std::string> ids;
  std::optional<Comment> current;
  std::vector<std::string> paragraphs;
  std::string paragraph;
  bool in_paragraph = false;
  bool in_text = false;

  for (;;) {
    const auto ev = walker.next();
    if (ev == PullParser::Event::end_document) break;
    if (ev == PullParser::Event::start_element) {
      const auto name = walker.current();
      if (name == "comment" && !current) {
        Comment c;
        c.comment_id = walker.required_id();
        if (const auto* a = walker.parser().attribute("author")) c.author = *a;
        if (const auto* d = walker.parser().attribute("date")) c.date = *d;
        if (!ids.insert(c.comment_id).second) {
          throw DuplicateCommentId(c.comment_id);
        }
        current = std::move(c);
        paragraphs.clear();
      } else if (current && !walker.in_fallback()) {
        if (name == "p") {
          in_paragraph = true;
          paragraph.clear();
        } else if (name == "t" && walker.parent() == "r") {
          in_text = true;
        } else if (name == "tab" && walker.parent() == "r") {
          paragraph += '\t';
        }
      }
    } else if (ev == PullParser::Event::end_element) {
      const auto name = walker.current();
      if (name == "t") {
        in_text = false;
      } else if (name == "p" && current && in_paragraph) {
        paragraphs.push_back(paragraph);
        in_paragraph = false;
      } else if (name == "comment" && current) {
        for (size_t i = 0; i < paragraphs.size(); ++i) {
          if (i > 0) current->body += '\n';
          current->body += paragraphs[i];
        }
        comments.push_back(std::move(*current));
        current.reset();
      }
    } else if (ev == PullParser::Event::text && in_text && current &&
               !walker.in_fallback()) {
      paragraph += walker.parser().text();
    }
  }
  return comments;
}

DocumentText extract_document(std::string_view part) {
  Walker walker(part);
  DocumentText out;
  size_t position = 0;
  bool in_text = false;

  const auto mark = [&](MarkerKind kind) {
    out.markers.push_back({kind, walker.required_id(), position});
  };

  for (;;) {
    const auto ev = walker.next();
    if (ev == PullParser::Event::end_document) break;
    if (walker.in_fallback() && ev != PullParser::Event::end_element) continue;
    if (ev == PullParser::Event::start_element) {
      const auto name = walker.current();
      if (name == "t" && walker.parent() == "r") {
        in_text = true;
      } else if (name == "tab" && walker.parent() == "r") {
        out.text += '\t';
        ++position;
      } else if (name == "commentRangeStart") {
        mark(MarkerKind::start);
      } else if (name == "commentRangeEnd") {
        mark(MarkerKind::end);
      } else if (name == "commentReference") {
        mark(MarkerKind::reference);
      }
    } else if (ev == PullParser::Event::end_element) {
      const auto name = walker.current();
      if (name == "t") {
        in_text = false;
      } else if (name == "p" && !walker.in_fallback()) {
        out.text += '\n';
        ++position;
      }
    } else if (ev == PullParser::Event::text && in_text) {
      const std::string& chunk = walker.parser().text();
      out.text += chunk;
      position += unicode::length(chunk);
    }
  }
  return out;
}

Extraction extract_spans(std::string_view text,
                         const std::vector<RangeMarker>& markers,
                         const std::vector<Comment>& comments,
                         ExtractionMode mode, const ExtractionPolicy& policy) {
  const size_t text_length = unicode::length(text);
  Extraction result;
  std::unordered_map<std::string, MarkerIndex> index;
  for (const auto& m : markers) {
    if (m.position > text_length) {
      throw OutOfBounds("marker for comment " + m.comment_id +
                        " beyond text end");
    }
    auto& entry = index[m.comment_id];
    switch (m.kind) {
      case MarkerKind::start:
        if (!entry.start) entry.start = m.position;
        entry.all_starts.push_back(m.position);
        break;
      case MarkerKind::end:
        if (!entry.end) entry.end = m.position;
        break;
      case MarkerKind::reference:
        if (!entry.reference) entry.reference = m.position;
        break;
    }
  }

  const auto warn = [&](WarningKind kind, const std::string& id,
                        std::string message) {
    result.warnings.push_back({kind, id, std::move(message)});
  };
  const auto unpaired = [&](const std::string& id, const char* what) {
    if (policy.strict) throw UnpairedRange(id);
    warn(WarningKind::unpaired_range, id,
         "comment " + id + ": " + what);
  };

  std::set<std::string> known;
  for (const auto& comment : comments) {
    const std::string& id = comment.comment_id;
    known.insert(id);

    AnnotatedSpan span;
    span.label = comment.body;
    span.annotator = policy.annotator_override
                         ? *policy.annotator_override
                         : comment.author.value_or(policy.default_annotator);
    span.span_id = "comment-" + id;
    span.provenance = Provenance::comment;

    auto it = index.find(id);
    const MarkerIndex none;
    const MarkerIndex& m = it == index.end() ? none : it->second;

    if (m.start && m.end) {
      if (*m.end < *m.start) {
        unpaired(id, "range end precedes its start");
        continue;
      }
      span.start = *m.start;
      span.end = *m.end;
      if (mode == ExtractionMode::paper_faithful) {
        if (auto k = numeric_id(id)) {
          auto next = index.find(std::to_string(*k + 1));
          if (next != index.end()) {
            for (size_t p : next->second.all_starts) {
              if (p > span.start && p < span.end) span.end = p;
            }
          }
        }
      }
    } else if (m.start || m.end) {
      unpaired(id, m.start ? "range start without end" : "range end without start");
      continue;
    } else if (m.reference && policy.allow_empty) {
      span.start = span.end = *m.reference;
    } else {
      warn(WarningKind::comment_without_range, id,
           "comment " + id + " has no range markers");
      continue;
    }

    if (span.start == span.end && !policy.allow_empty) {
      warn(WarningKind::empty_span, id, "comment " + id + " covers no text");
      continue;
    }
    result.spans.push_back(std::move(span));
  }

  std::set<std::string> orphans;
  for (const auto& m : markers) {
    if (!known.count(m.comment_id) && orphans.insert(m.comment_id).second) {
      warn(WarningKind::range_without_comment, m.comment_id,
           "markers for undefined comment " + m.comment_id);
    }
  }

  sort_spans(result.spans);
  return result;
}

Container read_container(std::string_view zip_bytes) {
  zip::Reader reader(zip_bytes);
  auto document = reader.read(kDocumentPart);
  if (!document) {
    throw FormatError("container has no " + std::string(kDocumentPart));
  }
  Container out;
  out.document = extract_document(*document);
  if (auto comments = reader.read(kCommentsPart)) {
    out.comments = parse_comments(*comments);
  }
  return out;
}

Extraction extract_container(const Container& container, ExtractionMode mode,
                             const ExtractionPolicy& policy) {
  return extract_spans(container.document.text, container.document.markers,
                       container.comments, mode, policy);
}

namespace {

constexpr std::string_view kWordNs =
    "http://schemas.openxmlformats.org/wordprocessingml/2006/main";

void append_run(std::string& xml, std::u32string_view chars) {
  if (chars.empty()) return;
  xml += "<w:r><w:t xml:space=\"preserve\">";
  xml += xml::escape(unicode::encode(chars));
  xml += "</w:t></w:r>";
}

void append_marker(std::string& xml, MarkerKind kind, size_t id) {
  const std::string sid = std::to_string(id);
  if (kind == MarkerKind::start) {
    xml += "<w:commentRangeStart w:id=\"" + sid + "\"/>";
  } else {
    xml += "<w:commentRangeEnd w:id=\"" + sid + "\"/>";
    xml += "<w:r><w:commentReference w:id=\"" + sid + "\"/></w:r>";
  }
}

bool xml_safe(char32_t c) {
  return c == U'\t' || c == U'\n' || c == U'\r' ||
         (c >= 0x20 && c != 0xFFFE && c != 0xFFFF && !(c >= 0xD800 && c <= 0xDFFF));
}

}  // namespace

std::string synthesize_container(
    std::string_view text, const std::vector<AnnotatedSpan>& spans,
    const std::map<std::string, std::string>& labels) {
  const std::u32string chars = unicode::decode(text);
  for (char32_t c : chars) {
    if (!xml_safe(c)) throw InvalidSpan("text contains a character XML cannot carry");
  }
  // Markers bucketed by position: ends before starts at the same offset.
  std::vector<std::vector<std::pair<MarkerKind, size_t>>> at(chars.size() + 1);
  for (size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (s.start >= s.end || s.end > chars.size()) {
      throw InvalidSpan("span " + s.span_id + " [" + std::to_string(s.start) +
                        "," + std::to_string(s.end) + ") invalid for text of length " +
                        std::to_string(chars.size()));
    }
    at[s.end].emplace_back(MarkerKind::end, i);
  }
  for (size_t i = 0; i < spans.size(); ++i) {
    at[spans[i].start].emplace_back(MarkerKind::start, i);
  }

  std::string body;
  const auto flush_markers = [&](size_t p) {
    for (const auto& [kind, id] : at[p]) append_marker(body, kind, id);
  };

  size_t p = 0;
  while (p < chars.size()) {
    body += "<w:p>";
    size_t run_start = p;
    while (p < chars.size() && chars[p] != U'\n') {
      if (!at[p].empty()) {
        append_run(body, std::u32string_view(chars).substr(run_start, p - run_start));
        flush_markers(p);
        run_start = p;
      }
      ++p;
    }
    append_run(body, std::u32string_view(chars).substr(run_start, p - run_start));
    // The paragraph's own newline sits at p (or is implied at text end).
    flush_markers(p);
    body += "</w:p>";
    if (p < chars.size()) ++p;  // consume '\n'
    if (p == chars.size() && !chars.empty() && chars.back() == U'\n') {
      flush_markers(p);  // markers after the final newline
    }
  }

  std::string document = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  document += "<w:document xmlns:w=\"" + std::string(kWordNs) + "\"><w:body>";
  document += body;
  document += "</w:body></w:document>";

  std::string comments = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n";
  comments += "<w:comments xmlns:w=\"" + std::string(kWordNs) + "\">";
  for (size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    auto it = labels.find(s.span_id);
    const std::string& label = it != labels.end() ? it->second : s.label;
    comments += "<w:comment w:id=\"" + std::to_string(i) + "\"";
    if (!s.annotator.empty()) {
      comments += " w:author=\"" + xml::escape(s.annotator) + "\"";
    }
    comments += ">";
    size_t from = 0;
    for (;;) {
      const size_t nl = label.find('\n', from);
      const std::string_view line =
          std::string_view(label).substr(from, nl == std::string::npos ? std::string::npos : nl - from);
      comments += "<w:p>";
      if (!line.empty()) {
        comments += "<w:r><w:t xml:space=\"preserve\">" + xml::escape(line) + "</w:t></w:r>";
      }
      comments += "</w:p>";
      if (nl == std::string::npos) break;
      from = nl + 1;
    }
    comments += "</w:comment>";
  }
  comments += "</w:comments>";

  const std::string content_types =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/content-types\">"
      "<Default Extension=\"rels\" ContentType=\"application/vnd.openxmlformats-package.relationships+xml\"/>"
      "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
      "<Override PartName=\"/word/document.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.wordprocessingml.document.main+xml\"/>"
      "<Override PartName=\"/word/comments.xml\" ContentType=\"application/vnd.openxmlformats-officedocument.wordprocessingml.comments+xml\"/>"
      "</Types>";
  const std::string package_rels =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
      "<Relationship Id=\"rId1\" Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/officeDocument\" Target=\"word/document.xml\"/>"
      "</Relationships>";
  const std::string document_rels =
      "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/2006/relationships\">"
      "<Relationship Id=\"rId1\" Type=\"http://schemas.openxmlformats.org/officeDocument/2006/relationships/comments\" Target=\"comments.xml\"/>"
      "</Relationships>";

  zip::Writer writer;
  writer.add("[Content_Types].xml", content_types);
  writer.add("_rels/.rels", package_rels);
  writer.add(kDocumentPart, document);
  writer.add("word/_rels/document.xml.rels", document_rels);
  writer.add(kCommentsPart, comments);
  return writer.finish();
}

}  // namespace lexannot::docx
