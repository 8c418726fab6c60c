#include "formtree/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "formtree/error.hpp"

namespace formtree {

namespace {

// Below this many elements the thread startup costs more than the rows.
constexpr std::size_t kParallelThreshold = 64;

std::vector<BoundingBox> boxes_of(std::span<const Element> elements) {
  std::vector<BoundingBox> boxes;
  boxes.reserve(elements.size());
  for (const auto& e : elements) boxes.push_back(e.bbox);
  return boxes;
}

// Smallest representative, so the root of each set is its smallest index.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

void require_valid(const ClusterConfig& cfg) {
  require_valid(cfg.geometry);
  if (!(cfg.epsilon_slack >= 0.0) || !std::isfinite(cfg.epsilon_slack))
    throw InputError("epsilon_slack must be finite and >= 0");
  if (cfg.max_rounds && *cfg.max_rounds == 0) throw InputError("max_rounds must be positive");
}

DistanceMatrix distance_matrix_serial(std::span<const BoundingBox> boxes,
                                      const GeometryConfig& cfg) {
  const std::size_t n = boxes.size();
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(boxes[i], boxes[j], cfg);
      m(i, j) = d;
      m(j, i) = d;
    }
  }
  return m;
}

DistanceMatrix distance_matrix(std::span<const BoundingBox> boxes, const GeometryConfig& cfg) {
  for (const auto& b : boxes) require_valid(b);
  const auto n = static_cast<std::ptrdiff_t>(boxes.size());
  DistanceMatrix m(boxes.size());
  // Row i writes (i, j) and (j, i) for j > i only, so no two iterations
  // touch the same entry.
#pragma omp parallel for schedule(dynamic, 8) if (boxes.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      const double d = pair_distance(boxes[i], boxes[j], cfg);
      m(i, j) = d;
      m(j, i) = d;
    }
  }
  return m;
}

DistanceMatrix distance_matrix(std::span<const Element> elements, const ClusterConfig& cfg) {
  const auto boxes = boxes_of(elements);
  return distance_matrix(boxes, cfg.geometry);
}

double compute_epsilon(const DistanceMatrix& matrix) {
  if (matrix.size() < 2)
    throw PreconditionError("compute_epsilon needs at least 2 elements, got " +
                            std::to_string(matrix.size()));
  double eps = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = i + 1; j < matrix.size(); ++j) eps = std::min(eps, matrix(i, j));
  return eps;
}

std::vector<std::vector<std::size_t>> density_components(const DistanceMatrix& matrix,
                                                         double epsilon,
                                                         const ClusterConfig& cfg) {
  if (!(epsilon >= 0.0)) throw PreconditionError("epsilon must be >= 0");
  const std::size_t n = matrix.size();
  const double reach = epsilon * (1.0 + cfg.epsilon_slack);
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (matrix(i, j) <= reach) sets.unite(i, j);

  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = components.size();
      components.emplace_back();
    }
    components[slot[root]].push_back(i);
  }
  return components;
}

namespace {

RoundTrace run_round(std::vector<Element> elements, const ClusterConfig& cfg,
                     std::vector<Element>& next) {
  if (elements.size() < 2)
    throw PreconditionError("cluster_round needs at least 2 elements, got " +
                            std::to_string(elements.size()));
  std::stable_sort(elements.begin(), elements.end(),
                   [](const Element& a, const Element& b) { return a.rank < b.rank; });
  RoundTrace trace;
  trace.matrix = distance_matrix(elements, cfg);
  trace.epsilon = compute_epsilon(trace.matrix);
  trace.components = density_components(trace.matrix, trace.epsilon, cfg);

  next.clear();
  for (const auto& component : trace.components) {
    if (component.size() == 1) {
      next.push_back(elements[component.front()]);
      continue;
    }
    std::vector<QueryNode> children;
    std::vector<BoundingBox> boxes;
    for (auto idx : component) {
      children.push_back(elements[idx].node);
      boxes.push_back(elements[idx].bbox);
    }
    // Components list members ascending, and elements are in rank order, so
    // the first member carries the smallest rank.
    next.push_back(Element{QueryNode::group(std::move(children)), union_bbox(boxes),
                           elements[component.front()].rank});
  }
  trace.elements = std::move(elements);
  return trace;
}

}  // namespace

std::vector<Element> cluster_round(std::vector<Element> elements, const ClusterConfig& cfg) {
  std::vector<Element> next;
  run_round(std::move(elements), cfg, next);
  return next;
}

Extraction extract_tree_traced(const Layout& layout, const ClusterConfig& cfg) {
  require_valid(layout);
  require_valid(cfg);
  const auto ordered = reading_order(layout.fields, cfg.geometry);

  std::vector<Element> elements;
  elements.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    elements.push_back(Element{QueryNode::leaf(ordered[i].id), ordered[i].bbox, i});

  Extraction result;
  const std::size_t budget = cfg.max_rounds.value_or(10 * ordered.size());
  while (elements.size() > 1) {
    if (result.rounds.size() >= budget)
      throw InternalError("extraction of '" + layout.name + "' exceeded " +
                          std::to_string(budget) + " rounds with " +
                          std::to_string(elements.size()) + " elements left");
    const std::size_t before = elements.size();
    std::vector<Element> next;
    result.rounds.push_back(run_round(std::move(elements), cfg, next));
    elements = std::move(next);
    if (elements.size() >= before)
      throw InternalError("clustering round made no progress on '" + layout.name + "'");
  }
  result.tree = QueryTree{std::move(elements.front().node), layout.name};
  return result;
}

QueryTree extract_tree(const Layout& layout, const ClusterConfig& cfg) {
  return extract_tree_traced(layout, cfg).tree;
}

}  // namespace formtree
