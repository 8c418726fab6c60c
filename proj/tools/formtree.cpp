#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "formtree/commands.hpp"

namespace {

using formtree::ClusterConfig;
using formtree::Range;

void add_config_flags(CLI::App* cmd, ClusterConfig& cfg) {
  cmd->add_option("--align-tol", cfg.geometry.align_tolerance,
                  "max edge difference still counted as aligned")
      ->capture_default_str();
  cmd->add_option("--align-floor", cfg.geometry.align_floor,
                  "lower clamp of the alignment score in the distance denominator")
      ->capture_default_str();
  cmd->add_option("--epsilon-slack", cfg.epsilon_slack, "relative slack on the epsilon test")
      ->capture_default_str();
}

// "lo:hi" or a single value.
Range parse_range(const std::string& text) {
  Range r;
  const auto colon = text.find(':');
  r.min = std::stoll(text.substr(0, colon));
  r.max = colon == std::string::npos ? r.min : std::stoll(text.substr(colon + 1));
  return r;
}

void add_range(CLI::App* cmd, const std::string& name, Range& target, const std::string& help) {
  cmd->add_option_function<std::string>(
         name, [&target](const std::string& s) { target = parse_range(s); },
         help + " (lo:hi, default " + std::to_string(target.min) + ":" +
             std::to_string(target.max) + ")")
      ->check([](const std::string& s) -> std::string {
        try {
          parse_range(s);
          return {};
        } catch (const std::exception&) {
          return "expected lo:hi";
        }
      });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recovers the group hierarchy of a search form from its field boxes."};
  app.require_subcommand(1);

  formtree::cli::ExtractOptions extract;
  std::string extract_out, extract_dump;
  auto* cmd_extract = app.add_subcommand("extract", "extract the query tree of one layout");
  cmd_extract->add_option("layout", extract.layout_path, "layout document")->required();
  cmd_extract->add_option("-o,--out", extract_out, "write the tree here instead of stdout");
  cmd_extract->add_option("--dump-distances", extract_dump,
                          "write per-round distance matrices and epsilons here");
  add_config_flags(cmd_extract, extract.config);

  formtree::cli::EvalOptions eval;
  std::string eval_report;
  auto* cmd_eval = app.add_subcommand("eval", "score extraction against gold trees");
  cmd_eval->add_option("manifest", eval.manifest_path, "manifest document")->required();
  cmd_eval->add_option("--report", eval_report, "write the machine-readable report here");
  add_config_flags(cmd_eval, eval.config);

  formtree::cli::SynthOptions synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic corpus with planted trees");
  cmd_synth->add_option("out_dir", synth.out_dir, "output directory")->required();
  cmd_synth->add_option("--seed", synth.spec.seed)->capture_default_str();
  cmd_synth->add_option("--count", synth.count)->capture_default_str();
  cmd_synth->add_option("--gap-ratio", synth.spec.gap_ratio)->capture_default_str();
  cmd_synth->add_option("--jitter", synth.spec.jitter)->capture_default_str();
  cmd_synth->add_option("--depth", synth.depths, "nesting depth; several values alternate")
      ->delimiter(',')
      ->capture_default_str();
  add_range(cmd_synth, "--groups", synth.spec.n_groups, "children per block");
  add_range(cmd_synth, "--fields", synth.spec.fields_per_group, "fields per group");
  add_range(cmd_synth, "--intra-gap", synth.spec.intra_gap, "gap between fields of a group");
  add_range(cmd_synth, "--field-width", synth.spec.field_size, "field width");
  add_range(cmd_synth, "--field-height", synth.spec.field_height, "field height");

  formtree::cli::DistancesOptions distances;
  auto* cmd_distances = app.add_subcommand("distances", "print the field distance matrix");
  cmd_distances->add_option("layout", distances.layout_path, "layout document")->required();
  add_config_flags(cmd_distances, distances.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : formtree::cli::kInputError;
  }

  if (cmd_extract->parsed()) {
    if (!extract_out.empty()) extract.out_path = extract_out;
    if (!extract_dump.empty()) extract.dump_distances = extract_dump;
    return formtree::cli::cmd_extract(extract, std::cout, std::cerr);
  }
  if (cmd_eval->parsed()) {
    if (!eval_report.empty()) eval.report_path = eval_report;
    return formtree::cli::cmd_eval(eval, std::cout, std::cerr);
  }
  if (cmd_synth->parsed()) return formtree::cli::cmd_synth(synth, std::cout, std::cerr);
  return formtree::cli::cmd_distances(distances, std::cout, std::cerr);
}
