#include "gbp/geometry.hpp"

#include <algorithm>

namespace gbp {

int orientation(Point a, Point b, Point c) {
  const __int128 abx = b.x - a.x;
  const __int128 aby = b.y - a.y;
  const __int128 acx = c.x - a.x;
  const __int128 acy = c.y - a.y;
  const __int128 cross = abx * acy - aby * acx;
  return (cross > 0) - (cross < 0);
}

bool on_segment(Point p, Point a, Point b) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) ||
         on_segment(b, c, d);
}

bool strictly_inside_triangle(Point p, Point a, Point b, Point c) {
  const int o = orientation(a, b, c);
  if (o == 0) return false;
  return orientation(a, b, p) == o && orientation(b, c, p) == o && orientation(c, a, p) == o;
}

}  // namespace gbp
