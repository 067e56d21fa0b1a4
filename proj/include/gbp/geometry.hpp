#pragma once

#include <cstdint>

namespace gbp {

/// Integer point of a straight-line embedding.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// All predicates are exact: products are evaluated in 128-bit arithmetic.

/// Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear.
int orientation(Point a, Point b, Point c);

/// True if p lies on the closed segment [a, b].
bool on_segment(Point p, Point a, Point b);

/// True if the closed segments [a, b] and [c, d] share at least one point.
bool segments_intersect(Point a, Point b, Point c, Point d);

/// True if p lies in the open interior of the non-degenerate triangle (a, b, c).
bool strictly_inside_triangle(Point p, Point a, Point b, Point c);

}  // namespace gbp
