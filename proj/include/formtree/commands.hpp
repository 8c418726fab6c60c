#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "formtree/clustering.hpp"
#include "formtree/synth.hpp"

namespace formtree::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kValidationError = 3 };

struct ExtractOptions {
  std::filesystem::path layout_path;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> dump_distances;
  ClusterConfig config;
};

struct EvalOptions {
  std::filesystem::path manifest_path;
  std::optional<std::filesystem::path> report_path;
  ClusterConfig config;
};

struct SynthOptions {
  SynthSpec spec;
  std::size_t count = 10;
  /// Case i uses depths[i % depths.size()].
  std::vector<int> depths{1};
  std::filesystem::path out_dir;
};

struct DistancesOptions {
  std::filesystem::path layout_path;
  ClusterConfig config;
};

int cmd_extract(const ExtractOptions& opts, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);
int cmd_distances(const DistancesOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace formtree::cli
