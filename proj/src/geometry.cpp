#include "formtree/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "formtree/error.hpp"

namespace formtree {

bool is_valid(const BoundingBox& box) {
  return std::isfinite(box.x) && std::isfinite(box.y) && std::isfinite(box.w) &&
         std::isfinite(box.h) && box.w > 0.0 && box.h > 0.0;
}

void require_valid(const BoundingBox& box) {
  if (!is_valid(box)) {
    std::ostringstream msg;
    msg << "invalid bounding box (" << box.x << ", " << box.y << ", " << box.w << ", "
        << box.h << "): extent must be positive and coordinates finite";
    throw InputError(msg.str());
  }
}

void require_valid(const GeometryConfig& cfg) {
  if (!(cfg.align_tolerance >= 0.0) || !std::isfinite(cfg.align_tolerance))
    throw InputError("align_tolerance must be finite and >= 0");
  if (!(cfg.align_floor > 0.0) || !std::isfinite(cfg.align_floor))
    throw InputError("align_floor must be finite and > 0");
}

namespace {

// Gap between the closed intervals [a0, a1] and [b0, b1]; 0 when they meet.
double interval_gap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::max(a0, b0) - std::min(a1, b1));
}

}  // namespace

double rect_min_distance(const BoundingBox& a, const BoundingBox& b) {
  require_valid(a);
  require_valid(b);
  const double gx = interval_gap(a.left(), a.right(), b.left(), b.right());
  const double gy = interval_gap(a.top(), a.bottom(), b.top(), b.bottom());
  if (gx == 0.0) return gy;
  if (gy == 0.0) return gx;
  return std::hypot(gx, gy);
}

double edge(const BoundingBox& box, AlignmentAxis axis) {
  switch (axis) {
    case AlignmentAxis::Left: return box.left();
    case AlignmentAxis::Right: return box.right();
    case AlignmentAxis::Top: return box.top();
    case AlignmentAxis::Bottom: return box.bottom();
  }
  return 0.0;
}

bool aligned(const BoundingBox& a, const BoundingBox& b, AlignmentAxis axis,
             const GeometryConfig& cfg) {
  require_valid(a);
  require_valid(b);
  return std::abs(edge(a, axis) - edge(b, axis)) <= cfg.align_tolerance;
}

int alignment_score(const BoundingBox& a, const BoundingBox& b, const GeometryConfig& cfg) {
  return static_cast<int>(aligned(a, b, AlignmentAxis::Left, cfg)) +
         static_cast<int>(aligned(a, b, AlignmentAxis::Right, cfg)) +
         static_cast<int>(aligned(a, b, AlignmentAxis::Top, cfg)) +
         2 * static_cast<int>(aligned(a, b, AlignmentAxis::Bottom, cfg));
}

double pair_distance(const BoundingBox& a, const BoundingBox& b, const GeometryConfig& cfg) {
  const double euclid = rect_min_distance(a, b);
  if (euclid == 0.0) return 0.0;
  const double score = static_cast<double>(alignment_score(a, b, cfg));
  return euclid / std::max(score, cfg.align_floor);
}

BoundingBox union_bbox(std::span<const BoundingBox> boxes) {
  if (boxes.empty()) throw InputError("union_bbox of an empty list");
  double x0 = boxes.front().left();
  double y0 = boxes.front().top();
  double x1 = boxes.front().right();
  double y1 = boxes.front().bottom();
  for (const auto& box : boxes) {
    require_valid(box);
    x0 = std::min(x0, box.left());
    y0 = std::min(y0, box.top());
    x1 = std::max(x1, box.right());
    y1 = std::max(y1, box.bottom());
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace formtree
