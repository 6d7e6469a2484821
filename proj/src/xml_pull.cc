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

#include "lexannot/xml_pull.h"

#include <cstdlib>

#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot::xml {

namespace {

bool is_xml_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(char c) {
  return !is_xml_space(c) && c != '>' && c != '/' && c != '=' && c != '<' &&
         c != '"' && c != '\'' && c != '\0';
}

}  // namespace

std::string_view local_part(std::string_view qualified) {
  const size_t colon = qualified.find(':');
  return colon == std::string_view::npos ? qualified
                                         : qualified.substr(colon + 1);
}

std::string escape(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

PullParser::PullParser(std::string_view data) : data_(data) {
  // UTF-8 byte order mark.
  if (data_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
}

std::string_view PullParser::local_name() const { return local_part(name_); }

const std::string* PullParser::attribute(std::string_view local) const {
  for (const auto& [key, value] : attributes_) {
    if (local_part(key) == local) return &value;
  }
  return nullptr;
}

void PullParser::fail(const std::string& what) const {
  throw MalformedXml(what, pos_);
}

bool PullParser::starts_with(std::string_view s) const {
  return data_.substr(pos_, s.size()) == s;
}

void PullParser::skip_until(std::string_view terminator, const char* what) {
  const size_t end = data_.find(terminator, pos_);
  if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
  pos_ = end + terminator.size();
}

void PullParser::skip_doctype() {
  int brackets = 0;
  while (pos_ < data_.size()) {
    const char c = data_[pos_++];
    if (c == '[') ++brackets;
    if (c == ']') --brackets;
    if (c == '>' && brackets <= 0) return;
  }
  fail("unterminated DOCTYPE");
}

void PullParser::skip_space() {
  while (pos_ < data_.size() && is_xml_space(data_[pos_])) ++pos_;
}

std::string PullParser::read_name() {
  const size_t begin = pos_;
  while (pos_ < data_.size() && is_name_char(data_[pos_])) ++pos_;
  if (pos_ == begin) fail("expected a name");
  return std::string(data_.substr(begin, pos_ - begin));
}

void PullParser::decode_into(std::string_view raw, std::string& out) const {
  size_t i = 0;
  while (i < raw.size()) {
    const size_t amp = raw.find('&', i);
    if (amp == std::string_view::npos) {
      out.append(raw.substr(i));
      return;
    }
    out.append(raw.substr(i, amp - i));
    const size_t semi = raw.find(';', amp);
    if (semi == std::string_view::npos) fail("unterminated entity reference");
    const std::string_view ent = raw.substr(amp + 1, semi - amp - 1);
    if (ent == "amp") {
      out += '&';
    } else if (ent == "lt") {
      out += '<';
    } else if (ent == "gt") {
      out += '>';
    } else if (ent == "quot") {
      out += '"';
    } else if (ent == "apos") {
      out += '\'';
    } else if (ent.size() > 1 && ent[0] == '#') {
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const std::string digits(ent.substr(hex ? 2 : 1));
      char* end = nullptr;
      const unsigned long code = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (digits.empty() || *end != '\0' || code == 0 || code > 0x10FFFF) {
        fail("bad character reference &" + std::string(ent) + ";");
      }
      unicode::append(out, static_cast<char32_t>(code));
    } else {
      fail("unknown entity &" + std::string(ent) + ";");
    }
    i = semi + 1;
  }
}

void PullParser::read_start_tag() {
  // pos_ is just past '<'.
  name_ = read_name();
  attributes_.clear();
  for (;;) {
    skip_space();
    if (pos_ >= data_.size()) fail("unterminated start tag <" + name_);
    const char c = data_[pos_];
    if (c == '>') {
      ++pos_;
      stack_.push_back(name_);
      return;
    }
    if (c == '/') {
      if (!starts_with("/>")) fail("expected '/>'");
      pos_ += 2;
      stack_.push_back(name_);
      pending_end_ = true;
      return;
    }
    std::string key = read_name();
    skip_space();
    if (pos_ >= data_.size() || data_[pos_] != '=') {
      fail("expected '=' after attribute " + key);
    }
    ++pos_;
    skip_space();
    if (pos_ >= data_.size() || (data_[pos_] != '"' && data_[pos_] != '\'')) {
      fail("expected quoted value for attribute " + key);
    }
    const char quote = data_[pos_++];
    const size_t close = data_.find(quote, pos_);
    if (close == std::string_view::npos) fail("unterminated attribute value");
    const std::string_view raw = data_.substr(pos_, close - pos_);
    if (raw.find('<') != std::string_view::npos) fail("'<' in attribute value");
    std::string value;
    decode_into(raw, value);
    for (const auto& [existing, _] : attributes_) {
      if (existing == key) fail("duplicate attribute " + key);
    }
    attributes_.emplace_back(std::move(key), std::move(value));
    pos_ = close + 1;
  }
}

void PullParser::read_end_tag() {
  // pos_ is just past "</".
  name_ = read_name();
  skip_space();
  if (pos_ >= data_.size() || data_[pos_] != '>') fail("expected '>'");
  ++pos_;
  if (stack_.empty() || stack_.back() != name_) {
    fail("mismatched end tag </" + name_ + ">");
  }
  stack_.pop_back();
}

PullParser::Event PullParser::next() {
  if (pending_end_) {
    pending_end_ = false;
    name_ = stack_.back();
    stack_.pop_back();
    if (stack_.empty()) seen_root_ = true;
    return Event::end_element;
  }
  if (done_) return Event::end_document;

  text_.clear();
  while (pos_ < data_.size()) {
    if (data_[pos_] != '<') {
      const size_t lt = data_.find('<', pos_);
      const size_t end = lt == std::string_view::npos ? data_.size() : lt;
      const std::string_view raw = data_.substr(pos_, end - pos_);
      if (stack_.empty()) {
        for (char c : raw) {
          if (!is_xml_space(c)) fail("character data outside the root element");
        }
        pos_ = end;
        continue;
      }
      decode_into(raw, text_);
      pos_ = end;
      // Merge with following CDATA or further text before reporting.
      if (!starts_with("<![CDATA[")) return Event::text;
      continue;
    }
    if (starts_with("<![CDATA[")) {
      if (stack_.empty()) fail("CDATA outside the root element");
      pos_ += 9;
      const size_t close = data_.find("]]>", pos_);
      if (close == std::string_view::npos) fail("unterminated CDATA section");
      text_.append(data_.substr(pos_, close - pos_));
      pos_ = close + 3;
      if (pos_ >= data_.size() || data_[pos_] == '<') {
        if (!starts_with("<![CDATA[")) return Event::text;
      }
      continue;
    }
    if (!text_.empty()) return Event::text;
    if (starts_with("<!--")) {
      skip_until("-->", "comment");
    } else if (starts_with("<?")) {
      skip_until("?>", "processing instruction");
    } else if (starts_with("<!DOCTYPE")) {
      skip_doctype();
    } else if (starts_with("</")) {
      pos_ += 2;
      read_end_tag();
      if (stack_.empty()) seen_root_ = true;
      return Event::end_element;
    } else {
      if (stack_.empty() && seen_root_) fail("more than one root element");
      ++pos_;
      read_start_tag();
      return Event::start_element;
    }
  }
  if (!text_.empty()) return Event::text;
  if (!stack_.empty()) fail("unexpected end of input inside <" + stack_.back() + ">");
  if (!seen_root_) fail("no root element");
  done_ = true;
  return Event::end_document;
}

}  // namespace lexannot::xml
