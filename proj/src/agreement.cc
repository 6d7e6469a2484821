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
#include <unordered_map>

#include "lexannot/error.h"
#include "lexannot/unicode.h"

namespace lexannot::agreement {

RatingMatrix::RatingMatrix(std::vector<std::string> categories, size_t raters,
                           std::vector<uint32_t> counts)
    : categories_(std::move(categories)), raters_(raters), counts_(std::move(counts)) {
  if (raters_ < 2) throw InvalidMatrix("need >= 2 raters");
  if (categories_.size() < 2) throw InvalidMatrix("need >= 2 categories");
  if (counts_.empty() || counts_.size() % categories_.size() != 0) {
    throw InvalidMatrix("counts must hold N x K entries with N >= 1");
  }
  for (size_t i = 0; i < items(); ++i) {
    uint64_t sum = 0;
    for (uint32_t c : row(i)) sum += c;
    if (sum != raters_) {
      throw InvalidMatrix("row " + std::to_string(i) + " sums to " +
                          std::to_string(sum) + ", expected " +
                          std::to_string(raters_));
    }
  }
}

double fleiss_kappa(const RatingMatrix& m) {
  const size_t n_items = m.items();
  const size_t k = m.categories().size();
  const uint64_t n = m.raters();
  // Integer sums keep the perfect-agreement and symmetric cases exact.
  uint64_t sum_squares = 0;
  std::vector<uint64_t> column(k, 0);
  for (size_t i = 0; i < n_items; ++i) {
    for (size_t j = 0; j < k; ++j) {
      const uint64_t c = m.count(i, j);
      sum_squares += c * c;
      column[j] += c;
    }
  }
  const double total = static_cast<double>(n_items) * static_cast<double>(n);
  const double p_bar = static_cast<double>(sum_squares - n_items * n) /
                       (static_cast<double>(n_items) * static_cast<double>(n * (n - 1)));
  double sum_col_sq = 0.0;
  for (uint64_t c : column) sum_col_sq += static_cast<double>(c) * static_cast<double>(c);
  const double p_e = sum_col_sq / (total * total);
  if (p_e == 1.0) {
    if (p_bar == 1.0) return 1.0;
    throw DegenerateMarginals();
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

RatingMatrix Alignment::matrix() const {
  std::vector<uint32_t> counts(choices.size() * categories.size(), 0);
  for (size_t i = 0; i < choices.size(); ++i) {
    for (uint32_t c : choices[i]) ++counts[i * categories.size() + c];
  }
  return RatingMatrix(categories, annotators.size(), std::move(counts));
}

namespace {

class CategoryIndex {
 public:
  explicit CategoryIndex(const std::vector<std::string>& seed) {
    add("O");
    for (const auto& label : seed) add(label);
    seeded_ = names_.size();
  }

  uint32_t operator()(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    return add(label);
  }

  // Appended labels sorted; returns the old->new index remapping.
  std::vector<std::string> finish(std::vector<uint32_t>& remap) const {
    std::vector<std::string> extras(names_.begin() + static_cast<long>(seeded_), names_.end());
    std::sort(extras.begin(), extras.end());
    std::vector<std::string> out(names_.begin(), names_.begin() + static_cast<long>(seeded_));
    out.insert(out.end(), extras.begin(), extras.end());
    remap.assign(names_.size(), 0);
    for (size_t i = 0; i < names_.size(); ++i) {
      remap[i] = static_cast<uint32_t>(
          std::find(out.begin(), out.end(), names_[i]) - out.begin());
    }
    return out;
  }

 private:
  uint32_t add(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<uint32_t>(names_.size()));
    if (inserted) names_.push_back(label);
    return it->second;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, uint32_t> index_;
  size_t seeded_ = 0;
};

void finalize(Alignment& a, const CategoryIndex& categories) {
  std::vector<uint32_t> remap;
  a.categories = categories.finish(remap);
  for (auto& item : a.choices) {
    for (auto& c : item) c = remap[c];
  }
}

bool listed_in_meta(const Document& doc, const std::string& annotator) {
  auto it = doc.meta().find("annotators");
  if (it == doc.meta().end()) return false;
  std::string_view list = it->second;
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view name = list.substr(pos, comma - pos);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name == annotator) return true;
    pos = comma + 1;
  }
  return false;
}

}  // namespace

Alignment align_items(const Project& project,
                      const std::vector<std::string>& annotators,
                      const AlignOptions& options) {
  if (annotators.size() < 2) throw InvalidMatrix("need >= 2 annotators");
  Alignment a;
  a.annotators = annotators;
  CategoryIndex categories(options.labels);
  size_t sentence_base = 0;

  for (const auto& doc : project.documents()) {
    const auto& doc_spans = project.spans(doc.doc_id());
    std::vector<std::vector<AnnotatedSpan>> per(annotators.size());
    for (size_t r = 0; r < annotators.size(); ++r) {
      bool present = listed_in_meta(doc, annotators[r]);
      for (const auto& span : doc_spans) {
        if (span.annotator == annotators[r]) {
          per[r].push_back(span);
          present = true;
        }
      }
      if (!present) throw AnnotatorMissing(annotators[r], doc.doc_id());
    }

    if (options.unit == Unit::token) {
      const auto sentences = conll::tokenize(doc.text(), options.abbreviations);
      const size_t first_item = a.choices.size();
      for (size_t si = 0; si < sentences.size(); ++si) {
        for (size_t ti = 0; ti < sentences[si].size(); ++ti) {
          a.choices.emplace_back(annotators.size(), 0);
          a.sentence.push_back(sentence_base + si);
        }
      }
      for (size_t r = 0; r < annotators.size(); ++r) {
        const auto bio = conll::spans_to_bio(sentences, per[r]);
        size_t item = first_item;
        for (const auto& sentence : bio.rows) {
          for (const auto& row : sentence) {
            a.choices[item++][r] = categories(conll::base_label(row.tag));
          }
        }
      }
      sentence_base += sentences.size();
    } else {
      const std::u32string& s = doc.scalars();
      std::vector<size_t> positions;
      size_t line = 0;
      for (size_t p = 0; p < s.size(); ++p) {
        if (s[p] == U'\n') {
          ++line;
          continue;
        }
        if (unicode::is_space(s[p])) continue;
        positions.push_back(p);
        a.sentence.push_back(sentence_base + line);
      }
      const size_t first_item = a.choices.size();
      a.choices.resize(first_item + positions.size(),
                       std::vector<uint32_t>(annotators.size(), 0));
      for (size_t r = 0; r < annotators.size(); ++r) {
        auto ordered = per[r];
        sort_spans(ordered);
        for (size_t k = 0; k < positions.size(); ++k) {
          for (const auto& span : ordered) {
            if (span.start > positions[k]) break;
            if (positions[k] < span.end) {
              a.choices[first_item + k][r] = categories(span.label);
              break;
            }
          }
        }
      }
      sentence_base += line + 1;
    }
  }
  finalize(a, categories);
  return a;
}

RatingMatrix align(const Project& project,
                   const std::vector<std::string>& annotators,
                   const AlignOptions& options) {
  return align_items(project, annotators, options).matrix();
}

Alignment align_conll(const std::vector<std::string>& annotators,
                      const std::vector<std::vector<conll::RowSentence>>& rows,
                      const std::vector<std::string>& labels) {
  if (annotators.size() < 2) throw InvalidMatrix("need >= 2 annotators");
  if (rows.size() != annotators.size()) {
    throw TokenizationMismatch("one CoNLL input per annotator required");
  }
  const auto& reference = rows.front();
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != reference.size()) {
      throw TokenizationMismatch("sentence counts differ for " + annotators[r]);
    }
    for (size_t si = 0; si < reference.size(); ++si) {
      if (rows[r][si].size() != reference[si].size()) {
        throw TokenizationMismatch("token counts differ in sentence " + std::to_string(si));
      }
      for (size_t ti = 0; ti < reference[si].size(); ++ti) {
        if (rows[r][si][ti].token.text != reference[si][ti].token.text) {
          throw TokenizationMismatch("token text differs in sentence " +
                                     std::to_string(si) + " at " + std::to_string(ti));
        }
      }
    }
  }
  Alignment a;
  a.annotators = annotators;
  CategoryIndex categories(labels);
  for (size_t si = 0; si < reference.size(); ++si) {
    for (size_t ti = 0; ti < reference[si].size(); ++ti) {
      std::vector<uint32_t> item(annotators.size());
      for (size_t r = 0; r < annotators.size(); ++r) {
        item[r] = categories(conll::base_label(rows[r][si][ti].tag));
      }
      a.choices.push_back(std::move(item));
      a.sentence.push_back(si);
    }
  }
  finalize(a, categories);
  return a;
}

DisagreementReport boundary_diagnostic(const Alignment& a) {
  DisagreementReport report;
  const size_t raters = a.annotators.size();
  // Labels each annotator used per sentence.
  std::map<std::pair<size_t, size_t>, std::set<uint32_t>> used;
  for (size_t i = 0; i < a.choices.size(); ++i) {
    for (size_t r = 0; r < raters; ++r) {
      if (a.choices[i][r] != 0) used[{a.sentence[i], r}].insert(a.choices[i][r]);
    }
  }

  for (size_t i = 0; i < a.choices.size(); ++i) {
    const auto& item = a.choices[i];
    if (std::all_of(item.begin(), item.end(), [&](uint32_t c) { return c == item[0]; })) {
      continue;
    }
    ++report.total_disagreeing_tokens;
    std::set<uint32_t> chosen;
    for (uint32_t c : item) {
      if (c != 0) chosen.insert(c);
    }
    bool boundary = false;
    if (chosen.size() == 1) {
      const uint32_t label = *chosen.begin();
      for (size_t r = 0; r < raters && !boundary; ++r) {
        if (item[r] != 0) continue;
        auto it = used.find({a.sentence[i], r});
        boundary = it != used.end() && it->second.count(label) != 0;
      }
    }
    if (boundary) {
      ++report.boundary_only;
      ++report.per_label[a.categories[*chosen.begin()]].boundary_only;
    } else {
      ++report.label_conflict;
      for (uint32_t c : chosen) ++report.per_label[a.categories[c]].label_conflict;
    }
  }
  return report;
}

DisagreementReport boundary_diagnostic(const Project& project,
                                       const std::vector<std::string>& annotators,
                                       const AlignOptions& options) {
  return boundary_diagnostic(align_items(project, annotators, options));
}

nlohmann::ordered_json report_json(double kappa, const RatingMatrix& matrix,
                                   const DisagreementReport& report) {
  nlohmann::ordered_json per_label = nlohmann::ordered_json::object();
  for (const auto& [label, b] : report.per_label) {
    per_label[label] = {{"boundary_only", b.boundary_only},
                        {"label_conflict", b.label_conflict}};
  }
  nlohmann::ordered_json out;
  out["kappa"] = kappa;
  out["n_raters"] = matrix.raters();
  out["n_items"] = matrix.items();
  out["categories"] = matrix.categories();
  out["total_disagreeing_tokens"] = report.total_disagreeing_tokens;
  out["boundary_only"] = report.boundary_only;
  out["label_conflict"] = report.label_conflict;
  out["per_label"] = std::move(per_label);
  return out;
}

}  // namespace lexannot::agreement
