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

#ifndef LEXANNOT_XML_PULL_H_
#define LEXANNOT_XML_PULL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexannot::xml {

// Minimal non-validating XML pull parser over an in-memory buffer. Enough of
// XML 1.0 for office document parts: elements, attributes, character data,
// CDATA, the predefined and numeric character references. Comments,
// processing instructions and the DOCTYPE are skipped. Namespace prefixes are
// kept in name() and stripped by local_name(); no URI resolution is done.
//
// Well-formedness errors (bad nesting, unterminated markup, unknown entities,
// missing root) raise MalformedXml.
class PullParser {
 public:
  enum class Event { start_element, end_element, text, end_document };

  explicit PullParser(std::string_view data);

  Event next();

  // Qualified name of the current start/end element.
  std::string_view name() const { return name_; }
  std::string_view local_name() const;
  // Attribute value by local name (prefix ignored), or nullptr.
  const std::string* attribute(std::string_view local) const;
  // Decoded character data of the current text event.
  const std::string& text() const { return text_; }
  // Element nesting depth; the root element is depth 1.
  size_t depth() const { return stack_.size(); }
  size_t offset() const { return pos_; }

 private:
  [[noreturn]] void fail(const std::string& what) const;
  bool starts_with(std::string_view s) const;
  void skip_until(std::string_view terminator, const char* what);
  void skip_doctype();
  void read_start_tag();
  void read_end_tag();
  std::string read_name();
  void skip_space();
  void decode_into(std::string_view raw, std::string& out) const;

  std::string_view data_;
  size_t pos_ = 0;
  std::vector<std::string> stack_;
  std::string name_;
  std::vector<std::pair<std::string, std::string>> attributes_;
  std::string text_;
  bool pending_end_ = false;
  bool seen_root_ = false;
  bool done_ = false;
};

// Local part of a possibly prefixed name ("w:t" -> "t").
std::string_view local_part(std::string_view qualified);

// Escapes &, <, >, and " for element content and attribute values.
std::string escape(std::string_view raw);

}  // namespace lexannot::xml

#endif  // LEXANNOT_XML_PULL_H_
