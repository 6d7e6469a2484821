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
#include <random>

#include "doctest.h"
#include "lexannot/error.h"
#include "support/oracles.h"

using namespace lexannot;
using namespace lexannot::conll;

namespace {

std::vector<std::string> texts(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(t.text);
  return out;
}

std::vector<std::string> tags(const RowSentence& s) {
  std::vector<std::string> out;
  for (const auto& r : s) out.push_back(r.tag);
  return out;
}

AnnotatedSpan span(size_t start, size_t end, std::string label, std::string id) {
  AnnotatedSpan s;
  s.start = start;
  s.end = end;
  s.label = std::move(label);
  s.annotator = "a";
  s.span_id = std::move(id);
  return s;
}

}  // namespace

TEST_CASE("tokenize keeps abbreviations whole") {
  const auto s = tokenize("§ 14 Abs. 3");
  REQUIRE(s.size() == 1);
  CHECK(texts(s[0]) == std::vector<std::string>{"§", "14", "Abs.", "3"});
  CHECK(s[0][2].start == 5);
  CHECK(s[0][2].end == 9);
}

TEST_CASE("tokenize peels punctuation") {
  const auto s = tokenize("(§ 256 Abs. 1 ZPO),");
  REQUIRE(s.size() == 1);
  CHECK(texts(s[0]) ==
        std::vector<std::string>{"(", "§", "256", "Abs.", "1", "ZPO", ")", ","});
  const auto t = tokenize("§§47 Ende.\nZweite Zeile");
  REQUIRE(t.size() == 2);
  CHECK(texts(t[0]) == std::vector<std::string>{"§", "§", "47", "Ende", "."});
  CHECK(t[1][0].start == 11);
}

TEST_CASE("tokenize of nothing") {
  CHECK(tokenize("").empty());
  CHECK(tokenize(" \n\t\n").empty());
}

TEST_CASE("a span becomes a B-/I- run") {
  const std::string text = "Die Klägerin gemäß § 14 hat";
  const auto sentences = tokenize(text);
  const auto r = spans_to_bio(sentences, {span(19, 23, "GS", "x")});
  REQUIRE(r.rows.size() == 1);
  CHECK(tags(r.rows[0]) == std::vector<std::string>{"O", "O", "O", "B-GS", "I-GS", "O"});
  CHECK(r.dropped.empty());
  CHECK(r.emitted.size() == 1);
}

TEST_CASE("no spans means all O") {
  const auto r = spans_to_bio(tokenize("a b c"), {});
  CHECK(tags(r.rows[0]) == std::vector<std::string>{"O", "O", "O"});
}

TEST_CASE("overlap resolution prefers earlier then longer spans") {
  // Tokens: 0..9 single letters separated by spaces.
  const std::string text = "a b c d e f g h i j";
  const auto sentences = tokenize(text);
  const auto r = spans_to_bio(sentences, {span(4, 9, "A", "short"),   // c d e
                                          span(4, 13, "B", "long"),   // c..g
                                          span(14, 15, "C", "after"),
                                          span(1, 2, "D", "blank")});
  CHECK(tags(r.rows[0]) == std::vector<std::string>{"O", "O", "B-B", "I-B", "I-B", "I-B",
                                                    "I-B", "B-C", "O", "O"});
  REQUIRE(r.dropped.size() == 2);
  CHECK(r.dropped[0].span.span_id == "blank");
  CHECK(r.dropped[0].reason == DropReason::out_of_tokens);
  CHECK(r.dropped[1].span.span_id == "short");
  CHECK(r.dropped[1].reason == DropReason::overlap_loser);
  REQUIRE(r.emitted.size() == 2);
  CHECK(r.emitted[0].span_id == "long");
  CHECK(r.emitted[1].span_id == "after");
}

TEST_CASE("input order of spans does not matter") {
  std::mt19937 rng(11);
  const std::string text = "eins zwei drei vier fünf sechs sieben acht neun zehn";
  const auto sentences = tokenize(text);
  const size_t n = unicode::length(text);
  for (int round = 0; round < 40; ++round) {
    std::vector<AnnotatedSpan> spans;
    const size_t count = 3 + round % 3;
    for (size_t i = 0; i < count; ++i) {
      size_t a = rng() % n;
      size_t b = a + 1 + rng() % 20;
      spans.push_back(span(a, std::min(b, n), i % 2 ? "GS" : "PER", "s" + std::to_string(i)));
    }
    const auto reference = spans_to_bio(sentences, spans);
    std::sort(spans.begin(), spans.end(),
              [](const auto& x, const auto& y) { return x.span_id < y.span_id; });
    do {
      const auto other = spans_to_bio(sentences, spans);
      CHECK(other.rows == reference.rows);
      CHECK(other.emitted == reference.emitted);
      CHECK(other.dropped.size() == reference.dropped.size());
    } while (std::next_permutation(
        spans.begin(), spans.end(),
        [](const auto& x, const auto& y) { return x.span_id < y.span_id; }));
    CHECK(bio_violations(reference.rows).empty());
    CHECK(reference.dropped.size() + reference.emitted.size() == spans.size());
  }
}

TEST_CASE("a span across sentences restarts with B-") {
  const auto r = spans_to_bio(tokenize("a b\nc d"), {span(2, 5, "X", "s")});
  REQUIRE(r.rows.size() == 2);
  CHECK(tags(r.rows[0]) == std::vector<std::string>{"O", "B-X"});
  CHECK(tags(r.rows[1]) == std::vector<std::string>{"B-X", "O"});
  CHECK(bio_runs(r.rows).size() == 2);
}

TEST_CASE("writing and parsing") {
  const auto r = spans_to_bio(tokenize("§ 14"), {span(0, 4, "GS", "s")});
  CHECK(write_conll(r.rows) == "§\tB-GS\n14\tI-GS\n");
  CHECK(write_conll(r.rows, Dialect::space) == "§ B-GS\n14 I-GS\n");
  const auto two = spans_to_bio(tokenize("a b\nc"), {span(2, 5, "X", "s")});
  const std::string written = write_conll(two.rows);
  CHECK(written == "a\tO\nb\tB-X\n\nc\tB-X\n");
  const auto parsed = parse_conll(written);
  CHECK(write_conll(parsed) == written);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0][1].token.start == 2);
  CHECK(parsed[0][1].token.synthetic);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_conll("a b c\n", Dialect::space), BadRow);
  CHECK_THROWS_AS(parse_conll("a b c\n"), BadRow);
  CHECK_THROWS_AS(parse_conll("a\n"), BadRow);
  CHECK_THROWS_AS(parse_conll("a\tO\nb\tI-X\n"), BadTag);
  CHECK_THROWS_AS(parse_conll("a\tX-Y\n"), BadTag);
  try {
    parse_conll("a\tO\n\nb\tO\tO\n");
    FAIL("expected BadRow");
  } catch (const BadRow& e) {
    CHECK(e.line_no() == 3);
  }
}

TEST_CASE("validator flags stray I- tags") {
  RowSentence s = {{{"a", 0, 1}, "I-X"}, {{"b", 2, 3}, "B-X"}, {{"c", 4, 5}, "I-Y"}};
  CHECK(bio_violations({s}).size() == 2);
}

TEST_CASE("project export counts every span once") {
  Project p;
  p.add_document(Document("d1", "Die Klägerin (§ 256 Abs. 1 ZPO) hat."));
  p.add_document(Document("d2", "Zweites Dokument"));
  p.add_span("d1", span(14, 30, "GS", "a"));
  p.add_span("d1", span(4, 12, "PER", "b"));
  p.add_span("d1", span(15, 18, "GS", "c"));
  auto other = span(0, 7, "PER", "d");
  other.annotator = "b";
  p.add_span("d2", other);
  const auto all = export_project(p);
  CHECK(all.input_spans == 4);
  CHECK(all.emitted_spans == 3);
  CHECK(all.dropped.size() == 1);
  CHECK(dropped_report(all) ==
        "{\"doc_id\":\"d1\",\"span_id\":\"c\",\"start\":15,\"end\":18,\"label\":\"GS\","
        "\"annotator\":\"a\",\"reason\":\"overlap_loser\"}\n");
  const auto only_a = export_project(p, std::string("a"));
  CHECK(only_a.input_spans == 3);
  CHECK(only_a.rows.size() == 2);
}
