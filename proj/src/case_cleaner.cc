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

#include "lexannot/case_cleaner.h"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot::cases {

namespace {

struct Node {
  enum Kind { text, open, close } kind;
  std::string name;  // lowercased tag name
  std::string value;  // decoded text
};

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> kEntities{
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},
      {"quot", U'"'},     {"apos", U'\''},    {"nbsp", 0xA0},
      {"auml", U'ä'},     {"ouml", U'ö'},     {"uuml", U'ü'},
      {"Auml", U'Ä'},     {"Ouml", U'Ö'},     {"Uuml", U'Ü'},
      {"szlig", U'ß'},    {"sect", U'§'},     {"para", U'¶'},
      {"ndash", 0x2013},  {"mdash", 0x2014},  {"hellip", 0x2026},
      {"laquo", U'«'},    {"raquo", U'»'},    {"bdquo", 0x201E},
      {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"lsquo", 0x2018},
      {"rsquo", 0x2019},  {"sbquo", 0x201A},  {"eacute", U'é'},
      {"egrave", U'è'},   {"agrave", U'à'},   {"aacute", U'á'},
      {"copy", U'©'},     {"reg", U'®'},      {"shy", 0xAD},
      {"euro", 0x20AC},   {"deg", U'°'},      {"middot", U'·'},
      {"bull", 0x2022},   {"thinsp", 0x2009}, {"ensp", 0x2002},
      {"emsp", 0x2003},   {"times", U'×'},
  };
  return kEntities;
}

// Decodes character references; unknown or malformed ones stay literal.
std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out += raw[i++];
      continue;
    }
    const size_t semi = raw.find(';', i);
    if (semi == std::string_view::npos || semi - i > 12) {
      out += raw[i++];
      continue;
    }
    const std::string_view ent = raw.substr(i + 1, semi - i - 1);
    char32_t code = 0;
    if (ent.size() > 1 && ent[0] == '#') {
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const std::string digits(ent.substr(hex ? 2 : 1));
      char* end = nullptr;
      const unsigned long v = std::strtoul(digits.c_str(), &end, hex ? 16 : 10);
      if (!digits.empty() && *end == '\0' && v > 0 && v <= 0x10FFFF) {
        code = static_cast<char32_t>(v);
      }
    } else if (auto it = named_entities().find(ent); it != named_entities().end()) {
      code = it->second;
    }
    if (code == 0) {
      out += raw[i++];
      continue;
    }
    unicode::append(out, code);
    i = semi + 1;
  }
  return out;
}

// Tag-soup tokenizer. Anything that does not look like markup is text.
std::vector<Node> tokenize_html(std::string_view h) {
  std::vector<Node> nodes;
  std::string pending;
  const auto flush = [&] {
    if (!pending.empty()) {
      nodes.push_back({Node::text, {}, decode_entities(pending)});
      pending.clear();
    }
  };
  const auto skip_to = [&](size_t from, std::string_view end) {
    const size_t at = h.find(end, from);
    return at == std::string_view::npos ? h.size() : at + end.size();
  };

  size_t i = 0;
  while (i < h.size()) {
    if (h[i] != '<') {
      pending += h[i++];
      continue;
    }
    if (h.substr(i, 4) == "<!--") {
      flush();
      i = skip_to(i + 4, "-->");
      continue;
    }
    if (i + 1 < h.size() && (h[i + 1] == '!' || h[i + 1] == '?')) {
      flush();
      i = skip_to(i + 2, ">");
      continue;
    }
    const bool closing = i + 1 < h.size() && h[i + 1] == '/';
    size_t j = i + (closing ? 2 : 1);
    if (j >= h.size() || !is_ascii_alpha(h[j])) {
      pending += h[i++];
      continue;
    }
    std::string name;
    while (j < h.size() && (is_ascii_alpha(h[j]) || (h[j] >= '0' && h[j] <= '9'))) {
      name += ascii_lower(h[j++]);
    }
    // Find the tag end, honoring quoted attribute values.
    char quote = 0;
    while (j < h.size()) {
      const char c = h[j];
      if (quote != 0) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        break;
      }
      ++j;
    }
    const bool self_closing = j > 0 && j < h.size() && h[j - 1] == '/';
    flush();
    i = j < h.size() ? j + 1 : h.size();
    nodes.push_back({closing ? Node::close : Node::open, name, {}});
    if (self_closing && !closing) nodes.push_back({Node::close, name, {}});

    if (!closing && (name == "script" || name == "style")) {
      // Raw text element: skip to its end tag.
      const std::string end_tag = "</" + name;
      size_t k = i;
      for (;;) {
        k = h.find("</", k);
        if (k == std::string_view::npos) {
          k = h.size();
          break;
        }
        std::string candidate;
        for (size_t m = k; m < h.size() && m < k + end_tag.size(); ++m) {
          candidate += ascii_lower(h[m]);
        }
        if (candidate == end_tag) break;
        k += 2;
      }
      i = k;
    }
  }
  flush();
  return nodes;
}

bool is_block(std::string_view tag) {
  static const std::set<std::string_view> kBlocks{
      "address", "article", "aside", "blockquote", "br", "center", "dd",
      "div", "dl", "dt", "figcaption", "figure", "footer", "form", "h1",
      "h2", "h3", "h4", "h5", "h6", "header", "hr", "li", "main", "nav",
      "ol", "p", "pre", "section", "table", "tbody", "thead", "tfoot", "tr",
      "ul"};
  return kBlocks.count(tag) != 0;
}

bool is_cell(std::string_view tag) { return tag == "td" || tag == "th"; }

// Collapses whitespace runs to one space per line, trims lines, drops empty
// lines and joins with "\n".
std::string normalize_block_text(std::string_view raw) {
  const std::u32string s = unicode::decode(raw);
  std::string out;
  std::u32string line;
  bool pending_space = false;
  const auto end_line = [&] {
    if (!line.empty()) {
      if (!out.empty()) out += '\n';
      out += unicode::encode(line);
    }
    line.clear();
    pending_space = false;
  };
  for (char32_t c : s) {
    if (c == U'\n') {
      end_line();
    } else if (unicode::is_space(c) || c == 0xAD) {
      if (c != 0xAD) pending_space = true;
    } else {
      if (pending_space && !line.empty()) line += U' ';
      pending_space = false;
      line += c;
    }
  }
  end_line();
  return out;
}

// Visible text of nodes [begin, end) with block boundaries as raw newlines.
std::string raw_text(const std::vector<Node>& nodes, size_t begin, size_t end) {
  std::string out;
  for (size_t i = begin; i < end; ++i) {
    const Node& n = nodes[i];
    if (n.kind == Node::text) {
      // Newlines in source text are ordinary whitespace.
      for (char c : n.value) out += (c == '\n' || c == '\r') ? ' ' : c;
    } else if (is_block(n.name)) {
      out += '\n';
    } else if (is_cell(n.name)) {
      out += ' ';
    }
  }
  return out;
}

std::string sanitize_utf8(std::string_view html, bool* lossy) {
  return unicode::encode(unicode::decode(html, lossy));
}

}  // namespace

void HeadingRule::validate() const {
  if (recognized.empty()) throw Error("heading rule: recognized set is empty");
  if (max_raw_length == 0) throw Error("heading rule: max_raw_length must be > 0");
  if (heading_level < 1 || heading_level > 6) {
    throw Error("heading rule: heading_level must be 1..6");
  }
}

std::string normalize_heading(std::string_view raw) {
  std::u32string s = unicode::decode(raw);
  for (auto& c : s) c = unicode::to_lower(c);

  size_t p = 0;
  const auto is_roman = [](char32_t c) {
    return c == U'i' || c == U'v' || c == U'x' || c == U'l' || c == U'c';
  };
  for (;;) {
    while (p < s.size() && (unicode::is_space(s[p]) || s[p] == U'(')) ++p;
    size_t q = p;
    if (q < s.size() && unicode::is_ascii_digit(s[q])) {
      while (q < s.size() && unicode::is_ascii_digit(s[q])) ++q;
    } else if (q < s.size() && is_roman(s[q])) {
      while (q < s.size() && is_roman(s[q])) ++q;
    } else if (q < s.size() && unicode::is_letter(s[q])) {
      ++q;
    }
    if (q > p && q < s.size() && (s[q] == U'.' || s[q] == U')')) {
      p = q + 1;
      continue;
    }
    break;
  }

  std::u32string letters;
  for (size_t i = p; i < s.size(); ++i) {
    if (unicode::is_letter(s[i])) letters += s[i];
  }
  return unicode::encode(letters);
}

std::string html_to_text(std::string_view html) {
  const std::string clean = sanitize_utf8(html, nullptr);
  const auto nodes = tokenize_html(clean);
  return normalize_block_text(raw_text(nodes, 0, nodes.size()));
}

SectionExtraction extract_sections(std::string_view html, const HeadingRule& rule) {
  rule.validate();
  SectionExtraction out;
  bool lossy = false;
  const std::string clean = sanitize_utf8(html, &lossy);
  if (lossy) out.warnings.push_back("input is not valid UTF-8; bad bytes replaced");
  const auto nodes = tokenize_html(clean);
  const std::string heading_tag = "h" + std::to_string(rule.heading_level);

  // Locate same-level headings: [open, close) node index pairs.
  struct Heading {
    size_t open;
    size_t close;
  };
  std::vector<Heading> headings;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind != Node::open || nodes[i].name != heading_tag) continue;
    size_t j = i + 1;
    while (j < nodes.size() &&
           !(nodes[j].name == heading_tag && nodes[j].kind != Node::text)) {
      ++j;
    }
    headings.push_back({i, j});
    // An unclosed heading ends where the next one opens.
    i = (j < nodes.size() && nodes[j].kind == Node::close) ? j : j - 1;
  }

  for (size_t h = 0; h < headings.size(); ++h) {
    const std::string title =
        normalize_block_text(raw_text(nodes, headings[h].open + 1, headings[h].close));
    std::string flat = title;
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    if (unicode::length(flat) > rule.max_raw_length) continue;
    const std::string key = normalize_heading(flat);
    if (key.empty() || rule.recognized.count(key) == 0) continue;

    const size_t body_begin = std::min(headings[h].close + 1, nodes.size());
    const size_t body_end =
        h + 1 < headings.size() ? headings[h + 1].open : nodes.size();
    std::string body = body_begin < body_end
                           ? normalize_block_text(raw_text(nodes, body_begin, body_end))
                           : std::string();
    if (out.sections.count(key) != 0) {
      out.warnings.push_back("duplicate section '" + key + "' ignored");
      continue;
    }
    out.sections.emplace(key, std::move(body));
  }
  return out;
}

CaseRecord build_case_record(const Meta& meta, std::string_view html,
                             const HeadingRule& rule,
                             std::vector<std::string>* warnings) {
  const auto required = [&meta](const char* key) {
    auto it = meta.find(key);
    if (it == meta.end()) throw MissingMeta(key);
    return it->second;
  };
  CaseRecord r;
  r.id = required("id");
  r.slug = required("slug");
  r.date = required("date");
  r.court = required("court");
  r.jurisdiction = required("jurisdiction");
  r.level_of_appeal = required("level_of_appeal");
  r.type = required("type");
  if (auto it = meta.find("ecli"); it != meta.end()) {
    const std::string& v = it->second;
    if (!v.empty() && v != "NaN" && v != "null") r.ecli = v;
  }

  auto extraction = extract_sections(html, rule);
  const auto take = [&extraction](const char* key) -> std::optional<std::string> {
    auto it = extraction.sections.find(key);
    if (it == extraction.sections.end()) return std::nullopt;
    return it->second;
  };
  r.tenor = take("tenor");
  r.tatbestand = take("tatbestand");
  r.gruende = take("gründe");
  r.entscheidungsgruende = take("entscheidungsgründe");
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), extraction.warnings.begin(),
                     extraction.warnings.end());
  }
  return r;
}

nlohmann::ordered_json to_json(const CaseRecord& r) {
  using json = nlohmann::ordered_json;
  const auto v = [](const std::optional<std::string>& s) -> json {
    return s ? json(*s) : json(nullptr);
  };
  json out;
  out["id"] = r.id;
  out["slug"] = r.slug;
  out["ecli"] = v(r.ecli);
  out["date"] = r.date;
  out["court"] = r.court;
  out["jurisdiction"] = r.jurisdiction;
  out["level_of_appeal"] = r.level_of_appeal;
  out["type"] = r.type;
  out["tenor"] = v(r.tenor);
  out["tatbestand"] = v(r.tatbestand);
  out["gründe"] = v(r.gruende);
  out["entscheidungsgründe"] = v(r.entscheidungsgruende);
  return out;
}

}  // namespace lexannot::cases
