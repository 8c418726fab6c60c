#pragma once

#include <span>

namespace formtree {

/// Axis-aligned rectangle in page coordinates. Origin is the top-left corner
/// of the page and y grows downward.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const { return x; }
  double right() const { return x + w; }
  double top() const { return y; }
  double bottom() const { return y + h; }

  bool operator==(const BoundingBox&) const = default;
};

enum class AlignmentAxis { Left, Right, Top, Bottom };

struct GeometryConfig {
  /// Largest edge-coordinate difference still counted as aligned.
  double align_tolerance = 2.0;
  /// Lower clamp for the alignment score in the denominator of pair_distance.
  double align_floor = 0.5;
};

bool is_valid(const BoundingBox& box);

/// Throws InputError unless the box has finite coordinates and positive extent.
void require_valid(const BoundingBox& box);

/// Throws InputError on a negative tolerance or non-positive floor.
void require_valid(const GeometryConfig& cfg);

/// Minimum Euclidean distance between two closed rectangles. Zero when they
/// intersect or touch.
double rect_min_distance(const BoundingBox& a, const BoundingBox& b);

double edge(const BoundingBox& box, AlignmentAxis axis);

bool aligned(const BoundingBox& a, const BoundingBox& b, AlignmentAxis axis,
             const GeometryConfig& cfg = {});

/// left + right + top + 2 * bottom, each alignment counted as 0 or 1.
/// Bottom alignment weighs double since fields on one line tend to belong
/// together. Range is {0, ..., 5}.
int alignment_score(const BoundingBox& a, const BoundingBox& b,
                    const GeometryConfig& cfg = {});

/// rect_min_distance / max(alignment_score, align_floor).
double pair_distance(const BoundingBox& a, const BoundingBox& b,
                     const GeometryConfig& cfg = {});

/// Tightest rectangle containing every box. Throws InputError when empty.
BoundingBox union_bbox(std::span<const BoundingBox> boxes);

}  // namespace formtree
