#include "formtree/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "formtree/document.hpp"
#include "formtree/error.hpp"

namespace formtree {

Verdict evaluate_case(const EvalCase& c, const ClusterConfig& cfg) {
  Verdict v;
  v.name = c.name;
  v.domain = c.domain;
  try {
    QueryTree gold = c.gold;
    if (c.normalize_gold_order) gold.root = normalize_order(gold.root, c.layout, cfg.geometry);
    v.gold = serialize_tree(gold).dump();
    const QueryTree extracted = extract_tree(c.layout, cfg);
    v.extracted = serialize_tree(extracted).dump();
    v.matched = tree_equals(extracted, gold);
    if (!v.matched) v.first_mismatch = first_mismatch(extracted.root, gold.root);
  } catch (const std::exception& e) {
    v.matched = false;
    v.errored = true;
    v.error = e.what();
  }
  return v;
}

Verdict errored_verdict(std::string name, std::string domain, std::string error) {
  Verdict v;
  v.name = std::move(name);
  v.domain = std::move(domain);
  v.errored = true;
  v.error = std::move(error);
  return v;
}

namespace {

void finish(ReportRow& row) {
  row.errors = row.total - row.correct;
  row.precision = row.total ? static_cast<double>(row.correct) / static_cast<double>(row.total) : 0.0;
}

}  // namespace

EvalReport make_report(std::vector<Verdict> verdicts) {
  if (verdicts.empty()) throw InputError("evaluation needs at least one case");
  std::sort(verdicts.begin(), verdicts.end(), [](const Verdict& a, const Verdict& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.domain < b.domain;
  });

  std::map<std::string, ReportRow> by_domain;
  for (const auto& v : verdicts) {
    auto& row = by_domain[v.domain];
    row.domain = v.domain;
    ++row.total;
    if (v.matched) ++row.correct;
  }

  EvalReport report;
  report.overall.domain = "overall";
  for (auto& [_, row] : by_domain) {
    finish(row);
    report.overall.total += row.total;
    report.overall.correct += row.correct;
    report.rows.push_back(row);
  }
  finish(report.overall);
  report.cases = std::move(verdicts);
  return report;
}

EvalReport evaluate_corpus_serial(std::span<const EvalCase> cases, const ClusterConfig& cfg) {
  if (cases.empty()) throw InputError("evaluation needs at least one case");
  std::vector<Verdict> verdicts;
  verdicts.reserve(cases.size());
  for (const auto& c : cases) verdicts.push_back(evaluate_case(c, cfg));
  return make_report(std::move(verdicts));
}

EvalReport evaluate_corpus(std::span<const EvalCase> cases, const ClusterConfig& cfg) {
  if (cases.empty()) throw InputError("evaluation needs at least one case");
  std::vector<Verdict> verdicts(cases.size());
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
  // evaluate_case never throws, so nothing escapes the parallel region.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) verdicts[i] = evaluate_case(cases[i], cfg);
  return make_report(std::move(verdicts));
}

nlohmann::json report_to_json(const EvalReport& report) {
  auto row_json = [](const ReportRow& r) {
    return nlohmann::json{{"domain", r.domain},
                          {"total", r.total},
                          {"correct", r.correct},
                          {"errors", r.errors},
                          {"precision", r.precision}};
  };
  nlohmann::json doc;
  doc["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) doc["rows"].push_back(row_json(r));
  doc["overall"] = row_json(report.overall);
  doc["cases"] = nlohmann::json::array();
  for (const auto& v : report.cases) {
    nlohmann::json jc{{"name", v.name}, {"matched", v.matched}, {"errored", v.errored}};
    if (v.errored) jc["error"] = v.error;
    if (v.first_mismatch) jc["first_mismatch"] = *v.first_mismatch;
    doc["cases"].push_back(std::move(jc));
  }
  return doc;
}

std::string render_table(const EvalReport& report) {
  std::vector<const ReportRow*> columns;
  for (const auto& r : report.rows) columns.push_back(&r);
  columns.push_back(&report.overall);

  std::size_t width = 9;
  for (const auto* c : columns) width = std::max(width, c->domain.size() + 2);
  constexpr int kLabelWidth = 18;

  std::ostringstream out;
  auto cell = [&](const std::string& s) {
    out << std::string(width - std::min(width, s.size()), ' ') << s;
  };
  auto line = [&](const char* label, auto value_of) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%-*s", kLabelWidth, label);
    out << buf;
    for (const auto* c : columns) cell(value_of(*c));
    out << '\n';
  };

  line("", [](const ReportRow& r) { return r.domain; });
  line("total", [](const ReportRow& r) { return std::to_string(r.total); });
  line("#correct queries", [](const ReportRow& r) { return std::to_string(r.correct); });
  line("#errors", [](const ReportRow& r) { return std::to_string(r.errors); });
  line("Precision", [](const ReportRow& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", r.precision);
    return std::string(buf);
  });
  return out.str();
}

}  // namespace formtree
