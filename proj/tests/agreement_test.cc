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

#include "lexannot/agreement.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lexannot/error.h"

using namespace lexannot;
using namespace lexannot::agreement;

namespace {

RatingMatrix matrix(std::vector<std::vector<uint32_t>> rows, size_t raters) {
  std::vector<std::string> cats;
  for (size_t j = 0; j < rows[0].size(); ++j) cats.push_back("c" + std::to_string(j));
  std::vector<uint32_t> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return RatingMatrix(cats, raters, flat);
}

std::vector<std::vector<uint32_t>> random_rows(std::mt19937& rng, size_t items,
                                               size_t cats, uint32_t raters) {
  std::vector<std::vector<uint32_t>> rows(items, std::vector<uint32_t>(cats, 0));
  for (auto& row : rows) {
    for (uint32_t r = 0; r < raters; ++r) ++row[rng() % cats];
  }
  return rows;
}

AnnotatedSpan span(size_t start, size_t end, std::string label, std::string annotator) {
  AnnotatedSpan s;
  s.start = start;
  s.end = end;
  s.label = std::move(label);
  s.span_id = annotator + std::to_string(start);
  s.annotator = std::move(annotator);
  return s;
}

}  // namespace

TEST_CASE("perfect agreement is exactly one") {
  CHECK(fleiss_kappa(matrix({{3, 0}, {0, 3}, {3, 0}}, 3)) == 1.0);
  CHECK(fleiss_kappa(matrix({{2, 0}, {2, 0}}, 2)) == 1.0);
}

TEST_CASE("symmetric split is exactly minus one") {
  CHECK(fleiss_kappa(matrix({{1, 1}, {1, 1}}, 2)) == -1.0);
}

TEST_CASE("hand-computed three-rater fixture") {
  // P_i = 1, 1, 0, 1/3; P-bar = 7/12. p_j = 6/12, 4/12, 2/12; Pe = 56/144.
  // kappa = (7/12 - 7/18) / (1 - 7/18) = 7/22.
  const auto m = matrix({{3, 0, 0}, {0, 3, 0}, {1, 1, 1}, {2, 0, 1}}, 3);
  CHECK(fleiss_kappa(m) == doctest::Approx(7.0 / 22.0).epsilon(1e-9));
  CHECK(std::abs(fleiss_kappa(m) - 7.0 / 22.0) < 1e-9);
}

TEST_CASE("a single used category counts as perfect agreement") {
  CHECK(fleiss_kappa(matrix({{4, 0, 0}, {4, 0, 0}}, 4)) == 1.0);
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(RatingMatrix({"a", "b"}, 1, {1, 0}), InvalidMatrix);
  CHECK_THROWS_AS(RatingMatrix({"a"}, 2, {2}), InvalidMatrix);
  CHECK_THROWS_AS(RatingMatrix({"a", "b"}, 2, {}), InvalidMatrix);
  CHECK_THROWS_AS(RatingMatrix({"a", "b"}, 2, {1, 0}), InvalidMatrix);
  CHECK_THROWS_AS(RatingMatrix({"a", "b"}, 2, {1, 0, 1}), InvalidMatrix);
}

TEST_CASE("kappa is invariant under permutation and duplication") {
  std::mt19937 rng(3);
  for (int round = 0; round < 100; ++round) {
    const size_t items = 2 + rng() % 12;
    const size_t cats = 2 + rng() % 4;
    const uint32_t raters = 2 + rng() % 4;
    auto rows = random_rows(rng, items, cats, raters);
    double base;
    try {
      base = fleiss_kappa(matrix(rows, raters));
    } catch (const DegenerateMarginals&) {
      continue;
    }
    auto shuffled = rows;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<size_t> perm(cats);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& row : shuffled) {
      auto copy = row;
      for (size_t j = 0; j < cats; ++j) row[perm[j]] = copy[j];
    }
    CHECK(fleiss_kappa(matrix(shuffled, raters)) == doctest::Approx(base).epsilon(1e-12));
    auto doubled = rows;
    doubled.insert(doubled.end(), rows.begin(), rows.end());
    CHECK(fleiss_kappa(matrix(doubled, raters)) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("token alignment and diagnostic") {
  // Tokens: Die(0) Klägerin(4) Anna(13) Meier(18) klagt(24) .(29)
  Project p;
  p.add_document(Document("d", "Die Klägerin Anna Meier klagt."));
  p.add_span("d", span(13, 23, "PER", "a"));
  p.add_span("d", span(18, 23, "PER", "b"));
  p.add_span("d", span(24, 29, "GS", "b"));
  const auto al = align_items(p, {"a", "b"});
  CHECK(al.categories == std::vector<std::string>{"O", "GS", "PER"});
  REQUIRE(al.choices.size() == 6);
  const auto m = al.matrix();
  CHECK(m.items() == 6);
  CHECK(m.raters() == 2);
  const auto report = boundary_diagnostic(al);
  CHECK(report.total_disagreeing_tokens == 2);
  CHECK(report.boundary_only == 1);   // "Anna": b used PER later in the sentence
  CHECK(report.label_conflict == 1);  // "klagt": a never used GS
  CHECK(report.per_label.at("PER").boundary_only == 1);
  CHECK(report.per_label.at("GS").label_conflict == 1);

  AlignOptions seeded;
  seeded.labels = {"PER", "GS", "ORG"};
  CHECK(align_items(p, {"a", "b"}, seeded).categories ==
        std::vector<std::string>{"O", "PER", "GS", "ORG"});

  const auto j = report_json(0.5, m, report);
  CHECK(j["boundary_only"] == 1);
  CHECK(j["n_items"] == 6);
}

TEST_CASE("character unit") {
  Project p;
  p.add_document(Document("d", "ab cd"));
  p.add_span("d", span(0, 2, "X", "a"));
  p.add_span("d", span(1, 2, "X", "b"));
  AlignOptions opts;
  opts.unit = Unit::character;
  const auto al = align_items(p, {"a", "b"}, opts);
  CHECK(al.choices.size() == 4);
  CHECK(boundary_diagnostic(al).total_disagreeing_tokens == 1);
  CHECK(boundary_diagnostic(al).boundary_only == 1);
}

TEST_CASE("an annotator absent from a document") {
  Project p;
  p.add_document(Document("d", "a b"));
  p.add_span("d", span(0, 1, "X", "a"));
  CHECK_THROWS_AS(align(p, {"a", "b"}), AnnotatorMissing);
  CHECK_THROWS_AS(align(p, {"a"}), InvalidMatrix);

  Project listed;
  listed.add_document(Document("d", "a b", Source::docx, {{"annotators", "a, b"}}));
  listed.add_span("d", span(0, 1, "X", "a"));
  CHECK(align(listed, {"a", "b"}).items() == 2);
}

TEST_CASE("aligning CoNLL inputs") {
  const auto rows_a = conll::parse_conll("a\tB-X\nb\tO\n");
  const auto rows_b = conll::parse_conll("a\tO\nb\tO\n");
  const auto al = align_conll({"a", "b"}, {rows_a, rows_b});
  CHECK(al.matrix().items() == 2);
  CHECK(boundary_diagnostic(al).label_conflict == 1);
  const auto rows_c = conll::parse_conll("a\tO\nc\tO\n");
  CHECK_THROWS_AS(align_conll({"a", "c"}, {rows_a, rows_c}), TokenizationMismatch);
  CHECK_THROWS_AS(align_conll({"a", "b"}, {rows_a}), TokenizationMismatch);
}
