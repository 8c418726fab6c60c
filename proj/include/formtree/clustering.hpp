#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formtree/geometry.hpp"
#include "formtree/tree.hpp"

namespace formtree {

/// A top-level item of one clustering round: a field or an already built
/// group, with its box and its position in reading order.
struct Element {
  QueryNode node;
  BoundingBox bbox;
  std::size_t rank = 0;
};

struct ClusterConfig {
  GeometryConfig geometry;
  /// Relative slack on the `distance <= epsilon` test.
  double epsilon_slack = 1e-9;
  /// Round budget; 10 * field count when unset.
  std::optional<std::size_t> max_rounds;
};

void require_valid(const ClusterConfig& cfg);

/// Dense symmetric matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * n_, n_);
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Pairwise pair_distance between element boxes. Rows are filled in parallel
/// once the element count is large enough to pay for the threads.
DistanceMatrix distance_matrix(std::span<const Element> elements, const ClusterConfig& cfg);
DistanceMatrix distance_matrix(std::span<const BoundingBox> boxes, const GeometryConfig& cfg);

/// Single-threaded reference for distance_matrix.
DistanceMatrix distance_matrix_serial(std::span<const BoundingBox> boxes,
                                      const GeometryConfig& cfg);

/// Smallest off-diagonal entry. Throws PreconditionError below 2 elements.
double compute_epsilon(const DistanceMatrix& matrix);

/// Connected components of the graph joining i and j when
/// matrix(i, j) <= epsilon * (1 + slack). Indices are taken to be in rank
/// order: components come out ordered by their smallest index, and members
/// ascending.
std::vector<std::vector<std::size_t>> density_components(const DistanceMatrix& matrix,
                                                         double epsilon,
                                                         const ClusterConfig& cfg = {});

/// One round: merges every component of size two or more into a new group
/// element, passes singletons through, and returns the result ordered by rank.
/// Throws PreconditionError below 2 elements.
std::vector<Element> cluster_round(std::vector<Element> elements, const ClusterConfig& cfg);

/// Diagnostics for one round of extract_tree.
struct RoundTrace {
  std::vector<Element> elements;  // input to the round, rank order
  DistanceMatrix matrix;
  double epsilon = 0.0;
  std::vector<std::vector<std::size_t>> components;
};

struct Extraction {
  QueryTree tree;
  std::vector<RoundTrace> rounds;
};

/// Seeds one element per field in reading order and runs cluster_round until
/// a single root remains.
QueryTree extract_tree(const Layout& layout, const ClusterConfig& cfg = {});

/// extract_tree plus the per-round matrices, epsilons and components.
Extraction extract_tree_traced(const Layout& layout, const ClusterConfig& cfg = {});

}  // namespace formtree
