#include "gentrack/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace gentrack {

double iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double ih = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double diagonal(const BBox& b) { return std::hypot(b.w, b.h); }

double center_distance(const BBox& a, const BBox& b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

namespace {

// Clips [lo,hi] to [0,limit], keeping at least 1 px (or the whole axis when
// the axis itself is shorter).
std::pair<double, double> clip_axis(double lo, double hi, double limit) {
  lo = std::clamp(lo, 0.0, limit);
  hi = std::clamp(hi, 0.0, limit);
  const double min_len = std::min(1.0, limit);
  if (hi - lo < min_len) {
    if (lo + min_len <= limit) {
      hi = lo + min_len;
    } else {
      hi = limit;
      lo = limit - min_len;
    }
  }
  return {lo, hi};
}

}  // namespace

BBox clamp_to_image(const BBox& b, double width, double height) {
  const auto [x0, x1] = clip_axis(b.left(), b.right(), width);
  const auto [y0, y1] = clip_axis(b.top(), b.bottom(), height);
  if (x0 == b.left() && x1 == b.right() && y0 == b.top() && y1 == b.bottom()) {
    return b;
  }
  return BBox::from_corner(x0, y0, x1 - x0, y1 - y0);
}

bool in_entrance_area(const BBox& b, double width, double height, double margin) {
  return b.u <= margin || b.v <= margin || b.u >= width - margin ||
         b.v >= height - margin;
}

}  // namespace gentrack
