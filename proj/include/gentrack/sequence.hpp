#pragma once

#include <map>
#include <vector>

#include "gentrack/geometry.hpp"

namespace gentrack {

/// An identified box in one frame (ground truth or tracker hypothesis).
struct LabeledBox {
  long id = -1;
  BBox box;
  double conf = 1.0;
};

/// Frame index (0-based) to the boxes present in that frame.
using Sequence = std::map<int, std::vector<LabeledBox>>;

}  // namespace gentrack
