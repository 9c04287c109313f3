#include "gentrack/image.hpp"

#include <algorithm>

namespace gentrack {

void GrayImage::fill_rect(int x0, int y0, int x1, int y1, std::uint8_t value) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width_);
  y1 = std::min(y1, height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) at(x, y) = value;
  }
}

}  // namespace gentrack
