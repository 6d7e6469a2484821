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

#ifndef LEXANNOT_AGREEMENT_H_
#define LEXANNOT_AGREEMENT_H_

// Inter-annotator agreement: Fleiss' kappa over per-item category choices,
// plus a split of disagreements into boundary-only versus label conflicts.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "lexannot/conll_export.h"
#include "lexannot/core_model.h"

namespace lexannot::agreement {

// N items x K categories of rater counts; every row sums to the number of
// raters.
class RatingMatrix {
 public:
  // Throws InvalidMatrix unless raters >= 2, K >= 2, N >= 1, counts has N*K
  // entries and each row sums to `raters`.
  RatingMatrix(std::vector<std::string> categories, size_t raters,
               std::vector<uint32_t> counts);

  size_t items() const { return counts_.size() / categories_.size(); }
  size_t raters() const { return raters_; }
  const std::vector<std::string>& categories() const { return categories_; }
  uint32_t count(size_t item, size_t category) const {
    return counts_[item * categories_.size() + category];
  }
  std::span<const uint32_t> row(size_t item) const {
    return std::span<const uint32_t>(counts_).subspan(
        item * categories_.size(), categories_.size());
  }

 private:
  std::vector<std::string> categories_;
  size_t raters_;
  std::vector<uint32_t> counts_;
};

// (P - Pe) / (1 - Pe). When Pe == 1, returns 1 for perfect agreement and
// throws DegenerateMarginals otherwise.
double fleiss_kappa(const RatingMatrix& matrix);

enum class Unit { token, character };

struct AlignOptions {
  Unit unit = Unit::token;
  // Seeds the category list after "O"; labels used but not listed are
  // appended in sorted order.
  std::vector<std::string> labels;
  std::set<std::string> abbreviations = conll::default_abbreviations();
};

// Per-item choices of each annotator plus the item's sentence, which bounds
// the window used by the boundary diagnostic.
struct Alignment {
  std::vector<std::string> annotators;
  std::vector<std::string> categories;
  // choices[item][annotator] indexes categories; 0 is "O".
  std::vector<std::vector<uint32_t>> choices;
  // Global sentence index of each item.
  std::vector<size_t> sentence;

  RatingMatrix matrix() const;
};

// Items are tokens (or non-space characters) of every document in project
// order. An annotator counts as present in a document if it owns a span there
// or is listed in the document's comma-separated "annotators" meta entry;
// otherwise AnnotatorMissing is thrown. Throws InvalidMatrix for fewer than
// two annotators.
Alignment align_items(const Project& project,
                      const std::vector<std::string>& annotators,
                      const AlignOptions& options = {});

RatingMatrix align(const Project& project,
                   const std::vector<std::string>& annotators,
                   const AlignOptions& options = {});

// Alignment of already tagged CoNLL data, one entry per annotator. Throws
// TokenizationMismatch if the token sequences differ.
Alignment align_conll(const std::vector<std::string>& annotators,
                      const std::vector<std::vector<conll::RowSentence>>& rows,
                      const std::vector<std::string>& labels = {});

struct LabelBreakdown {
  size_t boundary_only = 0;
  size_t label_conflict = 0;
  bool operator==(const LabelBreakdown&) const = default;
};

struct DisagreementReport {
  size_t total_disagreeing_tokens = 0;
  size_t boundary_only = 0;
  size_t label_conflict = 0;
  // boundary_only counts go to the shared label; label_conflict counts go to
  // every non-O label involved at the item.
  std::map<std::string, LabelBreakdown> per_label;
};

// An item where annotators disagree is boundary_only when every non-O choice
// is the same label L and at least one annotator that chose "O" used L
// elsewhere in the same sentence; otherwise it is a label_conflict.
DisagreementReport boundary_diagnostic(const Alignment& alignment);

DisagreementReport boundary_diagnostic(const Project& project,
                                       const std::vector<std::string>& annotators,
                                       const AlignOptions& options = {});

// {kappa, n_raters, n_items, categories, total_disagreeing_tokens,
//  boundary_only, label_conflict, per_label}
nlohmann::ordered_json report_json(double kappa, const RatingMatrix& matrix,
                                   const DisagreementReport& report);

}  // namespace lexannot::agreement

#endif  // LEXANNOT_AGREEMENT_H_
