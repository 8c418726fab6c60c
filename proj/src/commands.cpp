#include "formtree/commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include "formtree/document.hpp"
#include "formtree/error.hpp"
#include "formtree/evaluation.hpp"

namespace formtree::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Loaded {
  Layout layout;
  int status = kOk;
};

// Reads and validates a layout, reporting problems on `err`.
Loaded load_layout(const fs::path& path, std::ostream& err) {
  Loaded out;
  try {
    out.layout = layout_from_json(read_json_file(path));
  } catch (const std::exception& e) {
    err << "error: " << path.string() << ": " << e.what() << '\n';
    out.status = kInputError;
    return out;
  }
  auto violations = validate_layout(out.layout);
  if (!violations.empty()) {
    err << "error: " << path.string() << ": layout violates " << violations.size()
        << " constraint(s):\n";
    for (const auto& v : violations) err << "  " << v.message << '\n';
    out.status = kValidationError;
  }
  return out;
}

json round_to_json(const RoundTrace& r, std::size_t index) {
  json labels = json::array();
  for (const auto& e : r.elements) labels.push_back(e.node.to_brackets());
  json matrix = json::array();
  for (std::size_t i = 0; i < r.matrix.size(); ++i) {
    json row = json::array();
    for (double d : r.matrix.row(i)) row.push_back(d);
    matrix.push_back(std::move(row));
  }
  return json{{"round", index + 1},
              {"elements", std::move(labels)},
              {"epsilon", r.epsilon},
              {"matrix", std::move(matrix)},
              {"components", r.components}};
}

}  // namespace

int cmd_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    require_valid(opts.config);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  auto loaded = load_layout(opts.layout_path, err);
  if (loaded.status != kOk) return loaded.status;

  Extraction result;
  try {
    result = extract_tree_traced(loaded.layout, opts.config);
  } catch (const std::exception& e) {
    err << "error: extraction failed: " << e.what() << '\n';
    return 1;
  }
  if (auto violations = validate_tree(result.tree, loaded.layout); !violations.empty()) {
    err << "error: extracted tree violates " << violations.size() << " constraint(s):\n";
    for (const auto& v : violations) err << "  " << to_string(v.kind) << " " << v.where << '\n';
    return kValidationError;
  }

  try {
    const auto text = to_text(serialize_tree(result.tree));
    if (opts.out_path)
      write_text_file(*opts.out_path, text);
    else
      out << text;
    if (opts.dump_distances) {
      json dump{{"layout", loaded.layout.name}, {"rounds", json::array()}};
      for (std::size_t i = 0; i < result.rounds.size(); ++i)
        dump["rounds"].push_back(round_to_json(result.rounds[i], i));
      write_text_file(*opts.dump_distances, to_text(dump));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  json manifest;
  try {
    require_valid(opts.config);
    manifest = read_json_file(opts.manifest_path);
    if (!manifest.is_object() || !manifest.contains("cases") || !manifest["cases"].is_array())
      throw ParseError(ParseError::Code::Malformed, "/cases", "manifest needs a \"cases\" array");
    if (manifest["cases"].empty()) throw InputError("manifest lists no cases");
  } catch (const std::exception& e) {
    err << "error: " << opts.manifest_path.string() << ": " << e.what() << '\n';
    return kInputError;
  }

  const fs::path base = opts.manifest_path.parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  std::vector<EvalCase> cases;
  std::vector<Verdict> failed;
  std::set<std::string> names;
  const json& entries = manifest["cases"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const json& entry = entries[i];
    const std::string where = "/cases/" + std::to_string(i);
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
      err << "error: " << opts.manifest_path.string() << ": " << where << " needs a string \"name\"\n";
      return kInputError;
    }
    EvalCase c;
    c.name = entry["name"].get<std::string>();
    if (!names.insert(c.name).second) {
      err << "error: " << opts.manifest_path.string() << ": duplicate case name '" << c.name << "'\n";
      return kInputError;
    }
    try {
      c.domain = entry.value("domain", std::string("unknown"));
      c.normalize_gold_order = entry.value("normalize_gold_order", false);
      c.layout = layout_from_json(read_json_file(resolve(entry.at("layout_path").get<std::string>())));
      require_valid(c.layout);
      c.gold = parse_tree(read_json_file(resolve(entry.at("gold_path").get<std::string>())));
      if (auto v = validate_tree(c.gold, c.layout); !v.empty())
        throw InputError("gold tree does not match its layout (" + std::string(to_string(v.front().kind)) +
                         " " + v.front().where + ")");
      cases.push_back(std::move(c));
    } catch (const std::exception& e) {
      err << "warning: case '" << c.name << "' not evaluated: " << e.what() << '\n';
      failed.push_back(errored_verdict(c.name, c.domain.empty() ? "unknown" : c.domain, e.what()));
    }
  }

  std::vector<Verdict> verdicts = std::move(failed);
  if (!cases.empty()) {
    auto partial = evaluate_corpus(cases, opts.config);
    for (auto& v : partial.cases) verdicts.push_back(std::move(v));
  }
  const EvalReport report = make_report(std::move(verdicts));

  out << render_table(report);
  for (const auto& v : report.cases) {
    if (v.errored)
      out << "errored  " << v.name << ": " << v.error << '\n';
    else if (!v.matched)
      out << "mismatch " << v.name << " at " << v.first_mismatch.value_or("/") << '\n';
  }
  if (opts.report_path) {
    try {
      write_text_file(*opts.report_path, to_text(report_to_json(report)));
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    }
  }
  return kOk;
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.depths.empty()) {
    err << "error: at least one nesting depth is required\n";
    return kInputError;
  }
  try {
    fs::create_directories(opts.out_dir);
  } catch (const std::exception& e) {
    err << "error: cannot create '" << opts.out_dir.string() << "': " << e.what() << '\n';
    return kInputError;
  }

  json entries = json::array();
  try {
    for (std::size_t i = 0; i < opts.count; ++i) {
      SynthSpec spec = opts.spec;
      spec.seed = splitmix64(opts.spec.seed + i);
      spec.nesting_depth = opts.depths[i % opts.depths.size()];
      const SynthCase generated = generate(spec);

      char stem[32];
      std::snprintf(stem, sizeof stem, "case-%04zu", i);
      const std::string layout_file = std::string(stem) + ".layout.json";
      const std::string gold_file = std::string(stem) + ".gold.json";
      write_text_file(opts.out_dir / layout_file, to_text(layout_to_json(generated.layout)));
      write_text_file(opts.out_dir / gold_file, to_text(serialize_tree(generated.gold)));

      json entry{{"name", stem},
                 {"layout_path", layout_file},
                 {"gold_path", gold_file},
                 {"domain", *generated.layout.domain},
                 {"normalize_gold_order", false}};
      if (std::isfinite(generated.certificate.ratio()))
        entry["separation_ratio"] = generated.certificate.ratio();
      entries.push_back(std::move(entry));
    }
    write_text_file(opts.out_dir / "manifest.json", to_text(json{{"cases", std::move(entries)}}));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  out << "wrote " << opts.count << " case(s) to " << opts.out_dir.string() << '\n';
  return kOk;
}

int cmd_distances(const DistancesOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    require_valid(opts.config);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  auto loaded = load_layout(opts.layout_path, err);
  if (loaded.status != kOk) return loaded.status;

  const auto fields = reading_order(loaded.layout.fields, opts.config.geometry);
  std::vector<BoundingBox> boxes;
  std::size_t width = 8;
  for (const auto& f : fields) {
    boxes.push_back(f.bbox);
    width = std::max(width, f.id.size() + 1);
  }
  const auto matrix = distance_matrix(boxes, opts.config.geometry);

  auto pad = [width](const std::string& s) { return std::string(width - std::min(width, s.size()), ' ') + s; };
  auto header = [&](const char* title) {
    out << title << '\n' << pad("");
    for (const auto& f : fields) out << pad(f.id);
    out << '\n';
  };

  header("distance");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << pad(fields[i].id);
    for (std::size_t j = 0; j < fields.size(); ++j) out << pad(fixed(matrix(i, j)));
    out << '\n';
  }
  header("alignment");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << pad(fields[i].id);
    for (std::size_t j = 0; j < fields.size(); ++j)
      out << pad(std::to_string(alignment_score(boxes[i], boxes[j], opts.config.geometry)));
    out << '\n';
  }
  if (fields.size() < 2)
    out << "epsilon undefined (fewer than 2 fields)\n";
  else
    out << "epsilon " << fixed(compute_epsilon(matrix)) << '\n';
  return kOk;
}

}  // namespace formtree::cli
