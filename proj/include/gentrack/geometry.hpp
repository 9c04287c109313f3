#pragma once

#include <array>
#include <optional>

namespace gentrack {

/// Center-parameterized bounding box in pixels.
struct BBox {
  double u = 0.0;  // center x
  double v = 0.0;  // center y
  double w = 1.0;
  double h = 1.0;

  double left() const { return u - w / 2.0; }
  double top() const { return v - h / 2.0; }
  double right() const { return u + w / 2.0; }
  double bottom() const { return v + h / 2.0; }
  double area() const { return w * h; }
  bool valid() const { return w > 0.0 && h > 0.0; }

  static BBox from_corner(double left, double top, double width, double height) {
    return {left + width / 2.0, top + height / 2.0, width, height};
  }

  double& operator[](int i) { return i == 0 ? u : i == 1 ? v : i == 2 ? w : h; }
  double operator[](int i) const { return i == 0 ? u : i == 1 ? v : i == 2 ? w : h; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Per-frame rates for each BBox coordinate (px/frame).
struct Velocity4 {
  double du = 0.0;
  double dv = 0.0;
  double dw = 0.0;
  double dh = 0.0;

  double& operator[](int i) { return i == 0 ? du : i == 1 ? dv : i == 2 ? dw : dh; }
  double operator[](int i) const { return i == 0 ? du : i == 1 ? dv : i == 2 ? dw : dh; }

  friend bool operator==(const Velocity4&, const Velocity4&) = default;
};

struct Detection {
  BBox bbox;
  double conf = 1.0;
  std::optional<int> class_id;
};

double iou(const BBox& a, const BBox& b);
double diagonal(const BBox& b);
double center_distance(const BBox& a, const BBox& b);

/// Shrinks the box to its intersection with [0,width]x[0,height]. Sides that
/// end up thinner than 1 px are widened back to 1 px inside the image.
BBox clamp_to_image(const BBox& b, double width, double height);

/// True when the box center lies within `margin` px of any image border.
bool in_entrance_area(const BBox& b, double width, double height, double margin);

}  // namespace gentrack
