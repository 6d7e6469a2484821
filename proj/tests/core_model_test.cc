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

#include <random>

#include "doctest.h"
#include "json.hpp"
#include "lexannot/error.h"

using namespace lexannot;

namespace {

AnnotatedSpan make_span(size_t start, size_t end, std::string label,
                        std::string id = "s") {
  AnnotatedSpan s;
  s.start = start;
  s.end = end;
  s.label = std::move(label);
  s.annotator = "a";
  s.span_id = std::move(id);
  return s;
}

}  // namespace

TEST_CASE("span_text returns the covered substring") {
  Document doc("d", "abcdef");
  CHECK(span_text(doc, make_span(1, 4, "GS")) == "bcd");
}

TEST_CASE("span_text counts scalar values, not bytes") {
  Document doc("d", "§ 14");
  CHECK(doc.length() == 4);
  CHECK(span_text(doc, make_span(0, 1, "GS")) == "§");
  Document umlaut("u", "Gründe");
  CHECK(span_text(umlaut, make_span(2, 4, "GS")) == "ün");
}

TEST_CASE("span_text rejects spans past the end") {
  Document doc("d", "abcde");
  CHECK_THROWS_AS(span_text(doc, make_span(3, 9, "GS")), OutOfBounds);
}

TEST_CASE("documents need an id") {
  CHECK_THROWS_AS(Document("", "x"), Error);
}

TEST_CASE("label sets") {
  const auto legal = LabelSet::legal_entities();
  CHECK(legal.labels().size() == 19);
  CHECK(legal.contains("GS"));
  CHECK(legal.contains("LIT"));
  CHECK_FALSE(legal.contains("Foo"));
  CHECK(LabelSet::user().empty());
  CHECK_THROWS_AS(LabelSet("x", {"A", "A"}), Error);
  CHECK_THROWS_AS(LabelSet("x", {""}), Error);
}

TEST_CASE("validate_annotation_set") {
  Document doc("d", "Die Klägerin hat ein Interesse.");
  const auto labels = LabelSet::legal_entities();

  SUBCASE("one in-bounds known span is valid") {
    auto report = validate_annotation_set(doc, {make_span(4, 12, "PER")}, labels);
    CHECK(report.valid());
    CHECK(report.violations.empty());
  }
  SUBCASE("end past text length") {
    auto report = validate_annotation_set(doc, {make_span(4, 500, "PER")}, labels);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::out_of_bounds);
  }
  SUBCASE("unknown label") {
    auto report = validate_annotation_set(doc, {make_span(4, 12, "Foo")}, labels);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::unknown_label);
  }
  SUBCASE("empty spans depend on policy") {
    auto strict = validate_annotation_set(doc, {make_span(4, 4, "PER")}, labels);
    REQUIRE(strict.violations.size() == 1);
    CHECK(strict.violations[0].kind == ViolationKind::empty_span);
    auto lenient = validate_annotation_set(doc, {make_span(4, 4, "PER")}, labels,
                                           ValidationPolicy{true});
    CHECK(lenient.valid());
  }
  SUBCASE("duplicate span ids") {
    auto report = validate_annotation_set(
        doc, {make_span(0, 3, "PER", "x"), make_span(4, 12, "PER", "x")}, labels);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::duplicate_span_id);
  }
  SUBCASE("report spans are sorted by start then longer first") {
    auto report = validate_annotation_set(
        doc, {make_span(5, 7, "PER", "c"), make_span(0, 2, "PER", "a"),
              make_span(5, 9, "PER", "b")},
        labels);
    REQUIRE(report.spans.size() == 3);
    CHECK(report.spans[0].span_id == "a");
    CHECK(report.spans[1].span_id == "b");
    CHECK(report.spans[2].span_id == "c");
  }
}

TEST_CASE("properties over random span sets") {
  std::mt19937 rng(7);
  Document doc("d", "Auf Feststellung des Bestehens oder Nichtbestehens eines Rechtsverhältnisses");
  const auto labels = LabelSet::legal_entities();
  for (int round = 0; round < 200; ++round) {
    std::vector<AnnotatedSpan> spans;
    const int n = std::uniform_int_distribution<int>(0, 8)(rng);
    for (int i = 0; i < n; ++i) {
      size_t a = std::uniform_int_distribution<size_t>(0, doc.length() + 3)(rng);
      size_t b = std::uniform_int_distribution<size_t>(0, doc.length() + 3)(rng);
      if (a > b) std::swap(a, b);
      spans.push_back(make_span(a, b, i % 3 ? "GS" : "Foo", "s" + std::to_string(i % 5)));
    }
    const auto first = validate_annotation_set(doc, spans, labels);
    // Idempotent: validating the reported (sorted) spans gives the same report.
    CHECK(validate_annotation_set(doc, first.spans, labels) == first);
    for (const auto& s : spans) {
      if (s.start < s.end && s.end <= doc.length()) {
        CHECK(Document("t", span_text(doc, s)).length() == s.end - s.start);
      }
    }
    // Sorting is total: any permutation sorts to the same sequence.
    auto shuffled = spans;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = spans;
    sort_spans(a);
    sort_spans(shuffled);
    CHECK(a == shuffled);
  }
}

TEST_CASE("project JSONL round trip") {
  Project p;
  p.add_document(Document("d1", "§ 256 Abs. 1 ZPO\nzweite Zeile", Source::docx,
                          {{"annotators", "a,b"}}));
  AnnotatedSpan s = make_span(0, 16, "GS", "x1");
  s.provenance = Provenance::comment;
  p.add_span("d1", s);
  p.add_document(Document("d2", "plain", Source::plain));

  const std::string data = write_project_jsonl(p);
  CHECK(nlohmann::json::parse(data.substr(0, data.find('\n')))["kind"] == "doc");
  const Project back = read_project_jsonl(data);
  REQUIRE(back.documents().size() == 2);
  CHECK(back.documents()[0].text() == p.documents()[0].text());
  CHECK(back.documents()[0].meta() == p.documents()[0].meta());
  CHECK(back.documents()[0].source() == Source::docx);
  CHECK(back.spans("d1") == p.spans("d1"));
  CHECK(back.spans("d2").empty());
  CHECK(write_project_jsonl(back) == data);
}

TEST_CASE("project JSONL errors") {
  CHECK_THROWS_AS(read_project_jsonl("{\"kind\":\"span\",\"doc_id\":\"x\",\"span_id\":\"s\","
                                     "\"start\":0,\"end\":1,\"label\":\"GS\","
                                     "\"annotator\":\"a\",\"provenance\":\"manual\"}\n"),
                  FormatError);
  CHECK_THROWS_AS(read_project_jsonl("not json\n"), FormatError);
  CHECK_THROWS_AS(read_project_jsonl("{\"kind\":\"blob\"}\n"), FormatError);
  const std::string doc = "{\"kind\":\"doc\",\"doc_id\":\"d\",\"text\":\"t\",\"source\":\"plain\",\"meta\":{}}\n";
  CHECK_THROWS_AS(read_project_jsonl(doc + doc), FormatError);
}
