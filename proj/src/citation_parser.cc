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

#include "lexannot/citation_parser.h"

#include <array>

#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot::citation {

namespace {

using unicode::is_ascii_digit;
using unicode::is_ascii_lower;

// Recursive-descent parser over decoded text. Every rule takes a position and
// returns the position after what it consumed, or nullopt without side
// effects on failure.
class Parser {
 public:
  Parser(std::u32string_view text, const Gazetteer& gazetteer)
      : s_(text), gazetteer_(gazetteer) {}

  struct Item {
    LawReference ref;
    bool has_code = false;
  };

  struct List {
    std::vector<Item> items;
    std::vector<size_t> markers;
    size_t start = 0;
    size_t end = 0;
  };

  std::optional<std::pair<Marker, size_t>> marker(size_t p) const {
    if (literal(p, U"§§")) return std::make_pair(Marker::sections, p + 2);
    if (literal(p, U"§")) return std::make_pair(Marker::section, p + 1);
    if (literal(p, U"Artikel") && !letter_at(p + 7)) {
      return std::make_pair(Marker::artikel, p + 7);
    }
    if (literal(p, U"Art.")) return std::make_pair(Marker::artikel, p + 4);
    return std::nullopt;
  }

  // RefList starting at a marker at `p`. Sets `error_pos` when the marker
  // is not followed by a number.
  std::optional<List> ref_list(size_t p, size_t* error_pos = nullptr) const {
    auto head = marker(p);
    if (!head) {
      if (error_pos != nullptr) *error_pos = p;
      return std::nullopt;
    }
    List list;
    list.start = p;
    list.markers.push_back(p);
    auto first = item(head->second, head->first, p);
    if (!first) {
      if (error_pos != nullptr) *error_pos = skip_space(head->second);
      return std::nullopt;
    }
    list.end = first->ref.span_end;
    list.items.push_back(std::move(*first));

    for (;;) {
      size_t q = skip_space(list.end);
      size_t after_sep;
      if (q < s_.size() && s_[q] == U',') {
        after_sep = q + 1;
      } else if (word(q, U"und")) {
        after_sep = q + 3;
      } else if (word(q, U"oder")) {
        after_sep = q + 4;
      } else {
        break;
      }
      size_t r = skip_space(after_sep);
      Marker m = list.items.back().ref.marker;
      size_t item_start = r;
      bool own_marker = false;
      if (auto mk = marker(r)) {
        m = mk->first;
        own_marker = true;
        r = mk->second;
      }
      auto next = item(r, m, item_start);
      if (!next) break;
      if (own_marker) list.markers.push_back(item_start);
      list.end = next->ref.span_end;
      list.items.push_back(std::move(*next));
    }

    // Items without a code take the nearest following code.
    std::optional<std::string> code;
    for (auto it = list.items.rbegin(); it != list.items.rend(); ++it) {
      if (it->has_code) {
        code = it->ref.norm_code;
      } else {
        it->ref.norm_code = code;
      }
    }
    return list;
  }

 private:
  bool literal(size_t p, std::u32string_view lit) const {
    return s_.substr(p < s_.size() ? p : s_.size(), lit.size()) == lit;
  }

  bool letter_at(size_t p) const {
    return p < s_.size() && unicode::is_letter(s_[p]);
  }

  bool word_at(size_t p) const {
    return p < s_.size() && unicode::is_word(s_[p]);
  }

  // Literal keyword not continued by a letter.
  bool word(size_t p, std::u32string_view kw) const {
    if (!literal(p, kw)) return false;
    return kw.back() == U'.' || !letter_at(p + kw.size());
  }

  size_t skip_space(size_t p) const {
    while (p < s_.size() && unicode::is_space(s_[p])) ++p;
    return p;
  }

  std::optional<std::pair<std::string, size_t>> number(size_t p) const {
    size_t q = p;
    while (q < s_.size() && is_ascii_digit(s_[q])) ++q;
    if (q == p) return std::nullopt;
    if (q < s_.size() && is_ascii_lower(s_[q]) && !word_at(q + 1)) ++q;
    return std::make_pair(unicode::encode(s_.substr(p, q - p)), q);
  }

  std::optional<std::pair<std::string, size_t>> letter(size_t p) const {
    if (p < s_.size() && is_ascii_lower(s_[p]) && !letter_at(p + 1)) {
      return std::make_pair(unicode::encode(s_.substr(p, 1)), p + 1);
    }
    return std::nullopt;
  }

  std::optional<std::pair<std::string, size_t>> code_name(size_t p) const {
    size_t q = p;
    while (q < s_.size() && unicode::is_letter(s_[q])) ++q;
    if (q == p || word_at(q)) return std::nullopt;
    const std::u32string_view run = s_.substr(p, q - p);
    std::string code = unicode::encode(run);
    if (gazetteer_.contains(code)) return std::make_pair(code, q);
    if (run.size() < 2 || !unicode::is_ascii_upper(run.front())) return std::nullopt;
    const char32_t last = run.back();
    const bool morpheme =
        last == U'G' || last == U'O' ||
        (last == U'B' && run[run.size() - 2] == U'G');
    if (!morpheme) return std::nullopt;
    return std::make_pair(code, q);
  }

  struct Keyword {
    std::u32string_view text;
    int field;
  };

  enum Field {
    kAbsatz, kUnterabsatz, kSatz, kNummer, kBuchstabe, kHalbsatz,
    kBuch, kTeil, kAbschnitt, kTitel, kUntertitel, kKapitel,
  };

  static std::optional<std::string>* slot(LawReference& r, int field) {
    switch (field) {
      case kAbsatz: return &r.absatz;
      case kUnterabsatz: return &r.unterabsatz;
      case kSatz: return &r.satz;
      case kNummer: return &r.nummer;
      case kBuchstabe: return &r.buchstabe;
      case kBuch: return &r.buch;
      case kTeil: return &r.teil;
      case kAbschnitt: return &r.abschnitt;
      case kTitel: return &r.titel;
      case kUntertitel: return &r.untertitel;
      case kKapitel: return &r.kapitel;
    }
    return nullptr;
  }

  // One suffix at `p` (after whitespace). Returns the end position, or
  // nullopt if nothing matched or the field is already filled.
  std::optional<size_t> suffix(size_t p, LawReference& ref, bool& halbsatz) const {
    static constexpr std::array<Keyword, 13> kSubdivisions{{
        {U"Unterabsatz", kUnterabsatz}, {U"Unterabs.", kUnterabsatz},
        {U"Absatz", kAbsatz},           {U"Abs.", kAbsatz},
        {U"Satz", kSatz},               {U"S.", kSatz},
        {U"Nummer", kNummer},           {U"Nr.", kNummer},
        {U"Buchstabe", kBuchstabe},     {U"Buchst.", kBuchstabe},
        {U"lit.", kBuchstabe},          {U"Halbsatz", kHalbsatz},
        {U"Halbs.", kHalbsatz},
    }};
    for (const auto& kw : kSubdivisions) {
      if (!word(p, kw.text)) continue;
      const size_t q = skip_space(p + kw.text.size());
      auto value = kw.field == kBuchstabe ? letter(q) : number(q);
      if (!value) return std::nullopt;
      if (kw.field == kHalbsatz) {
        if (halbsatz) return std::nullopt;
        halbsatz = true;
        return value->second;
      }
      auto* field = slot(ref, kw.field);
      if (field->has_value()) return std::nullopt;
      *field = value->first;
      return value->second;
    }

    // Ordinal division: "3. Buch".
    static constexpr std::array<Keyword, 6> kDivisions{{
        {U"Buch", kBuch},           {U"Teil", kTeil},
        {U"Abschnitt", kAbschnitt}, {U"Untertitel", kUntertitel},
        {U"Titel", kTitel},         {U"Kapitel", kKapitel},
    }};
    if (auto ord = number(p); ord && ord->second < s_.size() && s_[ord->second] == U'.') {
      const size_t q = skip_space(ord->second + 1);
      for (const auto& kw : kDivisions) {
        if (!word(q, kw.text)) continue;
        auto* field = slot(ref, kw.field);
        if (field->has_value()) return std::nullopt;
        *field = ord->first;
        return q + kw.text.size();
      }
    }
    return std::nullopt;
  }

  std::optional<Item> item(size_t p, Marker m, size_t start) const {
    const size_t q = skip_space(p);
    auto head = number(q);
    if (!head) return std::nullopt;
    Item out;
    out.ref.marker = m;
    out.ref.artikel = head->first;
    out.ref.span_start = start;
    size_t end = head->second;
    bool halbsatz = false;
    for (;;) {
      const size_t r = skip_space(end);
      if (r == end) break;  // suffixes are whitespace separated
      if (auto next = suffix(r, out.ref, halbsatz)) {
        end = *next;
        continue;
      }
      if (auto code = code_name(r)) {
        out.ref.norm_code = code->first;
        out.has_code = true;
        end = code->second;
      }
      break;
    }
    out.ref.span_end = end;
    return out;
  }

  std::u32string_view s_;
  const Gazetteer& gazetteer_;
};

}  // namespace

std::string_view to_string(Marker marker) {
  switch (marker) {
    case Marker::section: return "section";
    case Marker::sections: return "sections";
    case Marker::artikel: return "artikel";
  }
  return "section";
}

bool LawReference::same_structure(const LawReference& o) const {
  return norm_code == o.norm_code && buch == o.buch && teil == o.teil &&
         abschnitt == o.abschnitt && titel == o.titel &&
         untertitel == o.untertitel && kapitel == o.kapitel &&
         artikel == o.artikel && absatz == o.absatz &&
         unterabsatz == o.unterabsatz && satz == o.satz && nummer == o.nummer &&
         buchstabe == o.buchstabe;
}

Gazetteer Gazetteer::builtin() {
  return Gazetteer(
      {"GG", "BGB", "StGB", "HGB", "ZPO", "VwGO", "SchVG", "StPO", "SGB"});
}

Gazetteer Gazetteer::parse(std::string_view text, bool extend_builtin) {
  Gazetteer g = extend_builtin ? builtin() : Gazetteer();
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    g.add(std::string(line));
  }
  return g;
}

bool Gazetteer::contains(std::string_view code) const {
  return codes_.find(code) != codes_.end();
}

std::vector<ScanHit> scan_references(std::string_view text,
                                     const Gazetteer& gazetteer) {
  const std::u32string s = unicode::decode(text);
  Parser parser(s, gazetteer);
  std::vector<ScanHit> hits;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != U'§' && s[i] != U'A') {
      ++i;
      continue;
    }
    auto list = parser.ref_list(i);
    if (!list) {
      ++i;
      continue;
    }
    ScanHit hit;
    hit.start = list->start;
    hit.end = list->end;
    hit.raw = unicode::encode(std::u32string_view(s).substr(hit.start, hit.end - hit.start));
    hit.markers = std::move(list->markers);
    hits.push_back(std::move(hit));
    i = list->end;
  }
  return hits;
}

std::vector<LawReference> parse_reference(std::string_view raw,
                                          const Gazetteer& gazetteer) {
  const std::u32string s = unicode::decode(raw);
  Parser parser(s, gazetteer);
  size_t error_pos = 0;
  auto list = parser.ref_list(0, &error_pos);
  if (!list) {
    throw ParseError(error_pos, parser.marker(0) ? "section number"
                                                 : "citation marker");
  }
  std::vector<LawReference> out;
  out.reserve(list->items.size());
  for (auto& item : list->items) out.push_back(std::move(item.ref));
  return out;
}

void RegistryTable::add(RegistryRow row) {
  if (row.norm_code.empty()) throw Error("registry row with empty norm_code");
  Key key{row.norm_code, row.artikel, row.absatz.value_or("")};
  if (rows_.count(key) != 0) {
    throw Error("duplicate registry key " + row.norm_code + " " + row.artikel +
                (row.absatz ? " Abs. " + *row.absatz : ""));
  }
  rows_.emplace(std::move(key), std::move(row));
}

const RegistryRow* RegistryTable::find(
    std::string_view norm_code, std::string_view artikel,
    const std::optional<std::string>& absatz) const {
  auto it = rows_.find(Key{std::string(norm_code), std::string(artikel),
                           absatz.value_or("")});
  return it == rows_.end() ? nullptr : &it->second;
}

RegistryTable RegistryTable::parse_jsonl(std::string_view data) {
  using json = nlohmann::json;
  RegistryTable table;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < data.size()) {
    size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    const std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "registry line " + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + ": " + e.what());
    }
    const auto opt = [&](const char* key) -> std::optional<std::string> {
      auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) return std::nullopt;
      if (it->is_string()) return it->get<std::string>();
      if (it->is_number()) return it->dump();
      throw FormatError(where + ": field '" + key + "' must be a string");
    };
    RegistryRow row;
    auto code = opt("norm_code");
    auto artikel = opt("artikel");
    if (!code || !artikel) throw FormatError(where + ": norm_code and artikel are required");
    row.norm_code = *code;
    row.artikel = *artikel;
    row.absatz = opt("absatz");
    row.law_title = opt("law_title");
    row.online_link_gesetzbuch = opt("online_link_gesetzbuch");
    row.online_link_exakt = opt("online_link_exakt");
    row.full_text = opt("full_text");
    row.absatz_text = opt("absatz_text");
    if (auto it = obj.find("alt_spellings"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) throw FormatError(where + ": alt_spellings must be a list");
      for (const auto& v : *it) {
        if (!v.is_string()) throw FormatError(where + ": alt_spellings must hold strings");
        row.alt_spellings.push_back(v.get<std::string>());
      }
    }
    try {
      table.add(std::move(row));
    } catch (const Error& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return table;
}

Enrichment enrich(const LawReference& ref, const RegistryTable& table) {
  Enrichment out{ref, false};
  if (!ref.norm_code) return out;
  const RegistryRow* exact =
      ref.absatz ? table.find(*ref.norm_code, ref.artikel, ref.absatz) : nullptr;
  const RegistryRow* section = table.find(*ref.norm_code, ref.artikel, std::nullopt);
  const RegistryRow* row = exact != nullptr ? exact : section;
  if (row == nullptr) return out;

  out.matched = true;
  LawReference& r = out.ref;
  r.law_title = row->law_title;
  r.online_link_gesetzbuch = row->online_link_gesetzbuch;
  r.online_link_exakt = row->online_link_exakt;
  r.full_text = row->full_text;
  if (exact != nullptr) r.absatz_text = exact->absatz_text;
  if (!row->alt_spellings.empty()) r.alt_spelling_1 = row->alt_spellings[0];
  if (row->alt_spellings.size() > 1) r.alt_spelling_2 = row->alt_spellings[1];
  // Section-level values fill what the Absatz row leaves open.
  if (exact != nullptr && section != nullptr) {
    if (!r.law_title) r.law_title = section->law_title;
    if (!r.online_link_gesetzbuch) r.online_link_gesetzbuch = section->online_link_gesetzbuch;
    if (!r.online_link_exakt) r.online_link_exakt = section->online_link_exakt;
    if (!r.full_text) r.full_text = section->full_text;
    if (!r.alt_spelling_1 && !section->alt_spellings.empty()) {
      r.alt_spelling_1 = section->alt_spellings[0];
    }
    if (!r.alt_spelling_2 && section->alt_spellings.size() > 1) {
      r.alt_spelling_2 = section->alt_spellings[1];
    }
  }
  return out;
}

std::string canonical(const LawReference& ref) {
  std::string out = ref.marker == Marker::artikel ? "Art. " : "§ ";
  out += ref.artikel;
  const auto add = [&out](const char* prefix, const std::optional<std::string>& v) {
    if (v) {
      out += prefix;
      out += *v;
    }
  };
  add(" Abs. ", ref.absatz);
  add(" Unterabs. ", ref.unterabsatz);
  add(" Satz ", ref.satz);
  add(" Nr. ", ref.nummer);
  add(" lit. ", ref.buchstabe);
  const auto division = [&out](const std::optional<std::string>& v, const char* name) {
    if (v) {
      out += ' ';
      out += *v;
      out += ". ";
      out += name;
    }
  };
  division(ref.buch, "Buch");
  division(ref.teil, "Teil");
  division(ref.abschnitt, "Abschnitt");
  division(ref.titel, "Titel");
  division(ref.untertitel, "Untertitel");
  division(ref.kapitel, "Kapitel");
  add(" ", ref.norm_code);
  return out;
}

nlohmann::ordered_json to_json(const LawReference& ref) {
  using json = nlohmann::ordered_json;
  const auto v = [](const std::optional<std::string>& s) -> json {
    return s ? json(*s) : json(nullptr);
  };
  return json{
      {"norm_code", v(ref.norm_code)},
      {"buch", v(ref.buch)},
      {"teil", v(ref.teil)},
      {"abschnitt", v(ref.abschnitt)},
      {"titel", v(ref.titel)},
      {"untertitel", v(ref.untertitel)},
      {"kapitel", v(ref.kapitel)},
      {"artikel", ref.artikel},
      {"absatz", v(ref.absatz)},
      {"unterabsatz", v(ref.unterabsatz)},
      {"satz", v(ref.satz)},
      {"nummer", v(ref.nummer)},
      {"buchstabe", v(ref.buchstabe)},
      {"online_link_gesetzbuch", v(ref.online_link_gesetzbuch)},
      {"online_link_exakt", v(ref.online_link_exakt)},
      {"alt_spelling_1", v(ref.alt_spelling_1)},
      {"alt_spelling_2", v(ref.alt_spelling_2)},
      {"law_title", v(ref.law_title)},
      {"full_text", v(ref.full_text)},
      {"absatz_text", v(ref.absatz_text)},
      {"marker", std::string(to_string(ref.marker))},
      {"span", json::array({ref.span_start, ref.span_end})},
  };
}

}  // namespace lexannot::citation
