#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "formtree/geometry.hpp"
#include "formtree/tree.hpp"

namespace formtree {

/// Inclusive integer range.
struct Range {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

struct SynthSpec {
  std::uint64_t seed = 0;
  /// Children per block at every nesting level.
  Range n_groups{2, 4};
  Range fields_per_group{2, 4};
  /// One draw per group; every link in the group uses it.
  Range intra_gap{4, 12};
  /// Realized min inter-group distance over max intra-group link distance.
  double gap_ratio = 3.0;
  /// Fields move by up to +/- jitter on each axis after placement.
  std::int64_t jitter = 0;
  /// 1 = flat groups under the root.
  int nesting_depth = 1;
  /// Field widths.
  Range field_size{40, 120};
  /// Field heights, one draw per group.
  Range field_height{18, 28};
};

/// Throws InputError when a range is empty or non-positive, gap_ratio <= 1,
/// jitter < 0 or nesting_depth < 1.
void require_valid(const SynthSpec& spec);

/// Realized separation of a generated instance, measured with pair_distance.
struct SeparationCertificate {
  double min_inter_group = 0.0;
  double max_intra_group = 0.0;
  double ratio() const;
};

struct SynthCase {
  Layout layout;
  QueryTree gold;
  SeparationCertificate certificate;
};

/// Deterministic per spec on every platform: std::mt19937_64 plus the
/// bounded-integer sampler below. Coordinates are whole page units.
/// Throws GenerationError when placement constraints cannot be met within the
/// retry budget.
SynthCase generate(const SynthSpec& spec, const GeometryConfig& geometry = {});

/// Uniform integer in [lo, hi] by rejection sampling on raw 64-bit output.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace formtree
