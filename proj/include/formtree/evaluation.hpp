#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "formtree/clustering.hpp"
#include "formtree/tree.hpp"

namespace formtree {

struct EvalCase {
  std::string name;
  Layout layout;
  QueryTree gold;
  std::string domain;
  /// Re-sort the gold sibling lists into reading order before comparing.
  bool normalize_gold_order = false;
};

struct Verdict {
  std::string name;
  std::string domain;
  bool matched = false;
  bool errored = false;
  std::string error;
  std::string extracted;  // serialized tree document, empty when errored
  std::string gold;
  /// First differing node path; debugging only, never scored.
  std::optional<std::string> first_mismatch;
};

struct ReportRow {
  std::string domain;
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t errors = 0;
  double precision = 0.0;
};

struct EvalReport {
  std::vector<ReportRow> rows;  // domain ascending
  ReportRow overall;
  std::vector<Verdict> cases;  // name ascending
};

Verdict evaluate_case(const EvalCase& c, const ClusterConfig& cfg = {});

/// Verdict for a case that could not be loaded. Counts as an error.
Verdict errored_verdict(std::string name, std::string domain, std::string error);

/// Aggregates verdicts into per-domain rows and an overall row. Throws
/// InputError on an empty list.
EvalReport make_report(std::vector<Verdict> verdicts);

/// Evaluates cases concurrently; the report is independent of scheduling.
EvalReport evaluate_corpus(std::span<const EvalCase> cases, const ClusterConfig& cfg = {});

/// Single-threaded reference for evaluate_corpus.
EvalReport evaluate_corpus_serial(std::span<const EvalCase> cases, const ClusterConfig& cfg = {});

nlohmann::json report_to_json(const EvalReport& report);

/// Text table with one column per domain plus "overall", and rows total,
/// #correct queries, #errors, Precision.
std::string render_table(const EvalReport& report);

}  // namespace formtree
