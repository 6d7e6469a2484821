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

#include "lexannot/cli.h"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "lexannot/agreement.h"
#include "lexannot/case_cleaner.h"
#include "lexannot/citation_parser.h"
#include "lexannot/config.h"
#include "lexannot/conll_export.h"
#include "lexannot/core_model.h"
#include "lexannot/docx_comments.h"
#include "lexannot/error.h"
#include "lexannot/file_io.h"

namespace lexannot::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "lexannot 0.1.0";

void emit(const std::string& target, const std::string& data, std::ostream& out) {
  if (target == "-") {
    out << data;
    out.flush();
  } else {
    write_file_atomic(target, data);
  }
}

std::string dump_line(const ojson& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
}

LabelSet configured_labels(const Config& config) {
  return config.label_set ? load_label_set(*config.label_set) : LabelSet::legal_entities();
}

struct ExtractArgs {
  std::vector<std::string> files;
  std::string output;
  std::string mode;
  std::string annotator;
  std::string doc_id;
  bool strict = false;
  bool allow_empty = false;
};

int run_extract(const ExtractArgs& a, const Config& config, std::ostream& out,
                std::ostream& err) {
  docx::ExtractionMode mode = config.extraction_mode;
  if (!a.mode.empty()) mode = *parse_extraction_mode(a.mode);
  docx::ExtractionPolicy policy;
  policy.strict = config.strict || a.strict;
  policy.allow_empty = config.allow_empty || a.allow_empty;
  if (!a.annotator.empty()) policy.annotator_override = a.annotator;
  std::optional<LabelSet> labels;
  if (config.label_set) labels = load_label_set(*config.label_set);

  struct Pending {
    std::string text;
    std::set<std::string> annotators;
    std::vector<std::string> files;
    std::vector<AnnotatedSpan> spans;
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> docs;
  bool invalid = false;

  for (const auto& file : a.files) {
    const fs::path path(file);
    const std::string stem = path.stem().string();
    policy.default_annotator = stem;
    const std::string bytes = read_file(path);
    docx::Container container;
    docx::Extraction extraction;
    try {
      container = docx::read_container(bytes);
      extraction = docx::extract_container(container, mode, policy);
    } catch (const Error& e) {
      throw Error(file + ": " + e.what());
    }
    for (const auto& w : extraction.warnings) {
      err << file << ": warning: " << to_string(w.kind) << ": " << w.message << "\n";
    }
    const std::string doc_id = a.doc_id.empty() ? stem : a.doc_id;
    auto [it, fresh] = docs.try_emplace(doc_id);
    Pending& doc = it->second;
    if (fresh) {
      order.push_back(doc_id);
      doc.text = container.document.text;
    } else if (doc.text != container.document.text) {
      throw Error(file + ": text differs from earlier file for document " + doc_id);
    }
    doc.files.push_back(path.filename().string());
    if (policy.annotator_override) doc.annotators.insert(*policy.annotator_override);
    for (auto& span : extraction.spans) {
      span.span_id = stem + ":" + span.span_id;
      doc.annotators.insert(span.annotator);
      doc.spans.push_back(std::move(span));
    }
    if (labels) {
      const Document probe(doc_id, doc.text, Source::docx);
      ValidationPolicy vp{policy.allow_empty};
      for (const auto& v : validate_annotation_set(probe, doc.spans, *labels, vp).violations) {
        err << file << ": " << (policy.strict ? "error" : "warning") << ": "
            << to_string(v.kind) << ": " << v.message << "\n";
        invalid = invalid || policy.strict;
      }
    }
  }
  if (invalid) return kExitDataError;

  Project project;
  for (const auto& id : order) {
    Pending& doc = docs[id];
    Meta meta;
    std::string joined;
    for (const auto& name : doc.annotators) joined += (joined.empty() ? "" : ",") + name;
    meta["annotators"] = joined;
    std::string files;
    for (const auto& f : doc.files) files += (files.empty() ? "" : ",") + f;
    meta["files"] = files;
    project.add_document(Document(id, doc.text, Source::docx, std::move(meta)));
    for (auto& span : doc.spans) project.add_span(id, std::move(span));
  }
  emit(a.output, write_project_jsonl(project), out);
  err << "extracted " << project.span_count() << " spans from " << a.files.size()
      << " file(s)\n";
  return kExitOk;
}

struct RefsArgs {
  std::string project;
  std::string output;
  std::string registry;
  std::string gazetteer;
};

int run_refs(const RefsArgs& a, const Config& config, std::ostream& out,
             std::ostream& err) {
  const Project project = read_project_jsonl(read_file(a.project));
  citation::Gazetteer gazetteer = citation::Gazetteer::builtin();
  if (!a.gazetteer.empty()) {
    gazetteer = citation::Gazetteer::parse(read_file(a.gazetteer));
  } else if (config.gazetteer) {
    gazetteer = citation::Gazetteer::parse(read_file(*config.gazetteer));
  }
  std::optional<citation::RegistryTable> registry;
  if (!a.registry.empty()) {
    registry = citation::RegistryTable::parse_jsonl(read_file(a.registry));
  } else if (config.registry) {
    registry = citation::RegistryTable::parse_jsonl(read_file(*config.registry));
  }

  std::string lines;
  size_t count = 0;
  size_t matched = 0;
  for (const auto& doc : project.documents()) {
    for (const auto& hit : citation::scan_references(doc.text(), gazetteer)) {
      for (auto ref : citation::parse_reference(hit.raw, gazetteer)) {
        bool found = false;
        if (registry) {
          auto enriched = citation::enrich(ref, *registry);
          ref = std::move(enriched.ref);
          found = enriched.matched;
        }
        ojson row;
        row["doc_id"] = doc.doc_id();
        row["span"] = {hit.start + ref.span_start, hit.start + ref.span_end};
        row["raw"] = hit.raw;
        row["canonical"] = citation::canonical(ref);
        const ojson fields = citation::to_json(ref);
        for (const auto& [k, v] : fields.items()) {
          if (k != "span") row[k] = v;
        }
        if (registry) row["registry_match"] = found;
        lines += dump_line(row);
        ++count;
        matched += found ? 1 : 0;
      }
    }
  }
  emit(a.output, lines, out);
  err << "found " << count << " references";
  if (registry) err << ", " << matched << " matched in registry";
  err << "\n";
  return kExitOk;
}

struct CleanArgs {
  std::string input;
  std::string meta;
  std::string output;
  long long max_raw_length = 0;
  int heading_level = 0;
};

Meta meta_from(const json& row, std::initializer_list<std::string_view> skip) {
  Meta meta;
  for (const auto& [k, v] : row.items()) {
    bool skipped = false;
    for (auto s : skip) skipped = skipped || k == s;
    if (skipped || v.is_null()) continue;
    meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return meta;
}

int run_clean(const CleanArgs& a, const Config& config, std::ostream& out,
              std::ostream& err) {
  cases::HeadingRule rule = config.heading_rule;
  if (a.max_raw_length != 0) {
    if (a.max_raw_length < 0) throw BadValue("max_raw_length", "must be positive");
    rule.max_raw_length = static_cast<size_t>(a.max_raw_length);
  }
  if (a.heading_level != 0) rule.heading_level = a.heading_level;
  rule.validate();

  const fs::path input(a.input);
  const bool from_dir = fs::is_directory(input);
  if (from_dir && a.meta.empty()) throw Error("clean: a directory input needs --meta");
  const std::string table = read_file(from_dir ? fs::path(a.meta) : input);

  std::string lines;
  size_t line_no = 0;
  size_t records = 0;
  size_t pos = 0;
  while (pos < table.size()) {
    size_t eol = table.find('\n', pos);
    if (eol == std::string::npos) eol = table.size();
    const std::string_view line = std::string_view(table).substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = (from_dir ? a.meta : a.input) + ":" + std::to_string(line_no);
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + ": " + e.what());
    }
    std::string html;
    if (from_dir) {
      if (!row.contains("file") || !row["file"].is_string()) {
        throw FormatError(where + ": metadata row lacks 'file'");
      }
      html = read_file(input / row["file"].get<std::string>());
    } else {
      if (!row.contains("html") || !row["html"].is_string()) {
        throw FormatError(where + ": row lacks inline 'html'");
      }
      html = row["html"].get<std::string>();
    }
    std::vector<std::string> warnings;
    cases::CaseRecord record;
    try {
      record = cases::build_case_record(meta_from(row, {"file", "html"}), html, rule, &warnings);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    for (const auto& w : warnings) err << where << ": warning: " << w << "\n";
    lines += dump_line(cases::to_json(record));
    ++records;
  }
  emit(a.output, lines, out);
  err << "cleaned " << records << " case(s)\n";
  return kExitOk;
}

struct ConllArgs {
  std::string project;
  std::string output;
  std::string annotator;
  std::string dialect;
  std::string dropped;
};

int run_conll(const ConllArgs& a, const Config& config, std::ostream& out,
              std::ostream& err) {
  const Project project = read_project_jsonl(read_file(a.project));
  conll::Dialect dialect = config.conll_dialect;
  if (!a.dialect.empty()) dialect = *parse_dialect(a.dialect);
  std::optional<std::string> annotator;
  if (!a.annotator.empty()) annotator = a.annotator;
  const auto result = conll::export_project(project, annotator);
  emit(a.output, conll::write_conll(result.rows, dialect), out);
  if (!a.dropped.empty()) write_file_atomic(a.dropped, conll::dropped_report(result));
  for (size_t i = 0; i < result.dropped.size(); ++i) {
    const auto& d = result.dropped[i];
    err << result.dropped_doc_ids[i] << ": dropped " << d.span.span_id << " ("
        << to_string(d.reason) << ")\n";
  }
  err << "emitted " << result.emitted_spans << " of " << result.input_spans
      << " spans\n";
  return kExitOk;
}

struct KappaArgs {
  std::string project;
  std::vector<std::string> annotators;
  std::string output;
  std::string unit;
};

int run_kappa(const KappaArgs& a, const Config& config, std::ostream& out,
              std::ostream& err) {
  if (a.annotators.size() < 2) {
    err << "error: need ≥2 annotators\n";
    return kExitDataError;
  }
  const Project project = read_project_jsonl(read_file(a.project));
  agreement::AlignOptions options;
  options.unit = a.unit == "char" ? agreement::Unit::character : agreement::Unit::token;
  options.labels = configured_labels(config).labels();
  const auto alignment = agreement::align_items(project, a.annotators, options);
  const auto matrix = alignment.matrix();
  const double kappa = agreement::fleiss_kappa(matrix);
  const auto report = agreement::boundary_diagnostic(alignment);
  emit(a.output, agreement::report_json(kappa, matrix, report).dump(2) + "\n", out);
  err << "kappa " << kappa << " over " << matrix.items() << " items\n";
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Legal annotation data toolkit", "lexannot"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "Config file (default: $LEXANNOT_CONFIG)");

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Comment-anchored spans from .docx files");
  extract->add_option("files", ex.files, "Input .docx files")->required();
  extract->add_option("-o,--output", ex.output, "Project JSONL ('-' for stdout)")->required();
  extract->add_option("--mode", ex.mode, "full or paper")
      ->check(CLI::IsMember({"full", "paper", "paper_faithful"}));
  extract->add_option("--annotator", ex.annotator, "Annotator for all spans");
  extract->add_option("--doc-id", ex.doc_id, "Shared document id for all files");
  extract->add_flag("--strict", ex.strict, "Unpaired ranges are errors");
  extract->add_flag("--allow-empty", ex.allow_empty, "Keep zero-length spans");

  RefsArgs rf;
  auto* refs = app.add_subcommand("refs", "Statute citations found in project texts");
  refs->add_option("project", rf.project, "Project JSONL")->required();
  refs->add_option("-o,--output", rf.output, "References JSONL")->required();
  refs->add_option("--registry", rf.registry, "Registry JSONL for enrichment");
  refs->add_option("--gazetteer", rf.gazetteer, "Extra statute codes, one per line");

  CleanArgs cl;
  auto* clean = app.add_subcommand("clean", "Case records from HTML decisions");
  clean->add_option("input", cl.input, "Directory of .html files or combined JSONL")->required();
  clean->add_option("--meta", cl.meta, "Metadata JSONL keyed by 'file'");
  clean->add_option("-o,--output", cl.output, "Case record JSONL")->required();
  clean->add_option("--max-raw-length", cl.max_raw_length, "Longest heading accepted");
  clean->add_option("--heading-level", cl.heading_level, "Heading level of section titles")
      ->check(CLI::Range(1, 6));

  ConllArgs co;
  auto* conll_cmd = app.add_subcommand("conll", "CoNLL export of project spans");
  conll_cmd->add_option("project", co.project, "Project JSONL")->required();
  conll_cmd->add_option("-o,--output", co.output, "CoNLL output")->required();
  conll_cmd->add_option("--annotator", co.annotator, "Only this annotator's spans");
  conll_cmd->add_option("--dialect", co.dialect, "tab or space")
      ->check(CLI::IsMember({"tab", "space"}));
  conll_cmd->add_option("--dropped", co.dropped, "Dropped-span report JSONL");

  KappaArgs ka;
  auto* kappa = app.add_subcommand("kappa", "Fleiss' kappa and disagreement report");
  kappa->add_option("project", ka.project, "Project JSONL")->required();
  kappa->add_option("--annotators", ka.annotators, "Comma-separated annotators")
      ->required()
      ->delimiter(',');
  kappa->add_option("-o,--output", ka.output, "Report JSON")->required();
  kappa->add_option("--unit", ka.unit, "token or char")
      ->check(CLI::IsMember({"token", "char"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    Config config;
    if (config_path.empty()) {
      if (const char* env = std::getenv("LEXANNOT_CONFIG"); env != nullptr && *env != '\0') {
        config_path = env;
      }
    }
    if (!config_path.empty()) config = load_config(config_path);

    if (extract->parsed()) return run_extract(ex, config, out, err);
    if (refs->parsed()) return run_refs(rf, config, out, err);
    if (clean->parsed()) return run_clean(cl, config, out, err);
    if (conll_cmd->parsed()) return run_conll(co, config, out, err);
    if (kappa->parsed()) return run_kappa(ka, config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  err << app.help();
  return kExitUsage;
}

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace lexannot::cli
