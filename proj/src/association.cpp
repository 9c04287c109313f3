#include "gentrack/association.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace gentrack {

namespace {

constexpr double kPadCost = 1.0;

}  // namespace

double Assignment::total_cost() const {
  return std::accumulate(pairs.begin(), pairs.end(), 0.0,
                         [](double acc, const AssignedPair& p) { return acc + p.cost; });
}

double motion_cost(const BBox& particle, const BBox& det) {
  const double d_max = diagonal(particle) + diagonal(det);
  const double c_iou = 1.0 - iou(particle, det);
  const double c_dist = d_max > 0.0 ? std::min(center_distance(particle, det), d_max) / d_max : 1.0;
  return std::clamp(c_iou * c_dist, 0.0, 1.0);
}

CostMatrix cost_matrix(std::span<const Track> tracks,
                       std::span<const Detection> detections,
                       const TrackerConfig& cfg) {
  CostMatrix m(tracks.size(), detections.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const Track& t = tracks[i];
    for (std::size_t j = 0; j < detections.size(); ++j) {
      const Detection& d = detections[j];
      double motion = 0.0;
      if (t.particles.empty()) {
        motion = motion_cost(t.state, d.bbox);
      } else {
        for (const auto& p : t.particles) motion += motion_cost(p.state, d.bbox);
        motion /= static_cast<double>(t.particles.size());
      }
      const double conf = std::clamp(d.conf, 0.0, 1.0);
      const double c = cfg.lambda_p * motion + cfg.lambda_d * (1.0 - conf) +
                       cfg.lambda_h * t.penalty;
      m(i, j) = std::clamp(c, 0.0, 1.0);
    }
  }
  return m;
}

// Shortest augmenting path Hungarian on the square padding of the matrix,
// with row/column potentials (O(n^3)). Rows are inserted in index order.
std::vector<int> min_cost_assignment(const CostMatrix& matrix) {
  const std::size_t rows = matrix.rows();
  const std::size_t cols = matrix.cols();
  const std::size_t n = std::max(rows, cols);
  std::vector<int> result(rows, -1);
  if (rows == 0 || cols == 0) return result;

  auto cost = [&](std::size_t r, std::size_t c) {
    return (r < rows && c < cols) ? matrix(r, c) : kPadCost;
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based internally; index 0 is the virtual root.
  std::vector<double> row_pot(n + 1, 0.0);
  std::vector<double> col_pot(n + 1, 0.0);
  std::vector<std::size_t> col_match(n + 1, 0);
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t r = 1; r <= n; ++r) {
    col_match[0] = r;
    std::size_t c0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[c0] = true;
      const std::size_t r0 = col_match[c0];
      double delta = inf;
      std::size_t c1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double slack = cost(r0 - 1, c - 1) - row_pot[r0] - col_pot[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = c0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          c1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          row_pot[col_match[c]] += delta;
          col_pot[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      c0 = c1;
    } while (col_match[c0] != 0);
    do {
      const std::size_t c1 = way[c0];
      col_match[c0] = col_match[c1];
      c0 = c1;
    } while (c0 != 0);
  }
  for (std::size_t c = 1; c <= n; ++c) {
    const std::size_t r = col_match[c];
    if (r >= 1 && r <= rows && c <= cols) result[r - 1] = static_cast<int>(c - 1);
  }
  return result;
}

Assignment solve(const CostMatrix& matrix, double gate) {
  Assignment out;
  const auto assigned = min_cost_assignment(matrix);
  std::vector<bool> det_used(matrix.cols(), false);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const int c = assigned[r];
    if (c >= 0 && matrix(r, static_cast<std::size_t>(c)) <= gate) {
      out.pairs.push_back({r, static_cast<std::size_t>(c), matrix(r, static_cast<std::size_t>(c))});
      det_used[static_cast<std::size_t>(c)] = true;
    } else {
      out.unmatched_tracks.push_back(r);
    }
  }
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    if (!det_used[c]) out.unmatched_detections.push_back(c);
  }
  return out;
}

}  // namespace gentrack
