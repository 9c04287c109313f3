#pragma once

#include <optional>
#include <ostream>
#include <utility>

#include "gentrack/sequence.hpp"

namespace gentrack {

struct MetricsReport {
  double mota = 0.0;  // percent, unclamped
  double idf1 = 0.0;  // percent
  long idsw = 0;
  long gt_total = 0;
  long hyp_total = 0;
  long tp = 0;
  long fn = 0;
  long fp = 0;
  long idtp = 0;
  long idfp = 0;
  long idfn = 0;
  int frames = 0;

  bool mota_negative() const { return mota < 0.0; }
};

struct EvalOptions {
  double iou_threshold = 0.5;
  /// Inclusive frame range; hypotheses outside it are an error.
  std::optional<std::pair<int, int>> frame_range;
};

/// CLEAR-MOT (MOTA, IDSW) and identity (IDF1) metrics.
MetricsReport evaluate(const Sequence& gt, const Sequence& hyp,
                       const EvalOptions& options = {});

void print_report(std::ostream& out, const MetricsReport& r);
void write_report_csv(std::ostream& out, const MetricsReport& r);

}  // namespace gentrack
