#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gentrack/config.hpp"
#include "gentrack/geometry.hpp"
#include "gentrack/track.hpp"

namespace gentrack {

/// Dense row-major T x D matrix; rows are tracks, columns detections.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct AssignedPair {
  std::size_t track;
  std::size_t detection;
  double cost;
};

struct Assignment {
  std::vector<AssignedPair> pairs;
  std::vector<std::size_t> unmatched_tracks;
  std::vector<std::size_t> unmatched_detections;

  double total_cost() const;
};

/// (1 - IoU) * min(d, d_max)/d_max with d_max the sum of both diagonals.
double motion_cost(const BBox& particle, const BBox& det);

/// Target-oriented cost: particle-mean motion cost, detection confidence and
/// track penalty mixed by (lambda_p, lambda_d, lambda_h).
CostMatrix cost_matrix(std::span<const Track> tracks,
                       std::span<const Detection> detections,
                       const TrackerConfig& cfg);

/// Minimum-cost one-to-one assignment of a rectangular matrix. Returns, for
/// each row, the assigned column or -1. Exposed for testing the solver alone.
std::vector<int> min_cost_assignment(const CostMatrix& matrix);

/// Hungarian assignment followed by gating: pairs costing more than `gate`
/// are split back into unmatched rows/columns.
Assignment solve(const CostMatrix& matrix, double gate);

}  // namespace gentrack
