#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "formtree/geometry.hpp"
#include "formtree/tree.hpp"

namespace formtree::testing {

inline std::filesystem::path corpus_dir() { return FORMTREE_CORPUS_DIR; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("formtree-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Integer-valued boxes so translations and integer scalings are exact.
inline BoundingBox random_box(std::mt19937_64& rng, int span = 100, int max_extent = 40) {
  return BoundingBox{static_cast<double>(rand_int(rng, 0, span)),
                     static_cast<double>(rand_int(rng, 0, span)),
                     static_cast<double>(rand_int(rng, 1, max_extent)),
                     static_cast<double>(rand_int(rng, 1, max_extent))};
}

inline bool contains_point(const BoundingBox& b, double px, double py) {
  return px >= b.x && px <= b.x + b.w && py >= b.y && py <= b.y + b.h;
}

/// Points of an n-by-n lattice over the box that lie on its boundary.
inline std::vector<std::pair<double, double>> boundary_lattice(const BoundingBox& b, int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != 0 && i != n - 1 && j != 0 && j != n - 1) continue;
      pts.emplace_back(b.x + b.w * i / (n - 1), b.y + b.h * j / (n - 1));
    }
  }
  return pts;
}

/// Brute-force minimum distance between two filled rectangles: zero when a
/// sampled boundary point of one lies in the other, otherwise the minimum
/// over all pairs of sampled boundary points.
inline double brute_rect_distance(const BoundingBox& a, const BoundingBox& b, int n = 200) {
  const auto pa = boundary_lattice(a, n);
  const auto pb = boundary_lattice(b, n);
  for (const auto& [x, y] : pa)
    if (contains_point(b, x, y)) return 0.0;
  for (const auto& [x, y] : pb)
    if (contains_point(a, x, y)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [ax, ay] : pa) {
    for (const auto& [bx, by] : pb) {
      const double dx = ax - bx;
      const double dy = ay - by;
      best = std::min(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

/// Diagonal of one lattice cell of each box, summed.
inline double lattice_diagonal(const BoundingBox& a, const BoundingBox& b, int n = 200) {
  return std::hypot(a.w / (n - 1), a.h / (n - 1)) + std::hypot(b.w / (n - 1), b.h / (n - 1));
}

inline bool closed_boxes_intersect(const BoundingBox& a, const BoundingBox& b) {
  return !(a.x + a.w < b.x || b.x + b.w < a.x || a.y + a.h < b.y || b.y + b.h < a.y);
}

/// Connected components of the threshold graph by transitive closure.
/// Components ordered by smallest member, members ascending.
inline std::vector<std::vector<std::size_t>> closure_components(
    const std::vector<std::vector<double>>& dist, double threshold) {
  const std::size_t n = dist.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = (i == j) || dist[i][j] <= threshold;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) {
        comp.push_back(j);
        done[j] = true;
      }
    out.push_back(std::move(comp));
  }
  return out;
}

/// Random ordered tree over the given leaf ids; every group has >= 2
/// children.
inline QueryNode random_tree(std::mt19937_64& rng, std::vector<std::string> ids) {
  if (ids.size() == 1) return QueryNode::leaf(ids.front());
  const int parts = rand_int(rng, 2, static_cast<int>(std::min<std::size_t>(ids.size(), 4)));
  // Cut points split ids into `parts` nonempty runs.
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i < ids.size(); ++i) candidates.push_back(i);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  cuts.assign(candidates.begin(), candidates.begin() + (parts - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(ids.size());
  std::vector<QueryNode> children;
  std::size_t start = 0;
  for (auto cut : cuts) {
    children.push_back(random_tree(rng, std::vector<std::string>(ids.begin() + start, ids.begin() + cut)));
    start = cut;
  }
  return QueryNode::group(std::move(children));
}

inline std::vector<std::string> make_ids(std::size_t n, const std::string& prefix = "f") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

inline Layout random_layout(std::mt19937_64& rng, std::size_t n) {
  Layout layout;
  layout.name = "random";
  for (std::size_t i = 0; i < n; ++i) {
    Field f;
    f.id = "f" + std::to_string(i);
    f.kind = ControlKind::Text;
    f.bbox = random_box(rng, 300, 60);
    layout.fields.push_back(std::move(f));
  }
  return layout;
}

inline Layout translated(Layout layout, double dx, double dy) {
  for (auto& f : layout.fields) {
    f.bbox.x += dx;
    f.bbox.y += dy;
  }
  return layout;
}

inline Field make_field(std::string id, BoundingBox box) {
  Field f;
  f.id = std::move(id);
  f.kind = ControlKind::Text;
  f.bbox = box;
  return f;
}

}  // namespace formtree::testing
