#include "gentrack/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>

#include "gentrack/association.hpp"
#include "gentrack/error.hpp"

namespace gentrack {

namespace {

// Cost assigned to pairs below the IoU threshold; any such pair the solver
// returns is dropped.
constexpr double kForbidden = 1e6;

std::vector<LabeledBox> sorted_by_id(const Sequence& seq, int frame) {
  const auto it = seq.find(frame);
  if (it == seq.end()) return {};
  auto boxes = it->second;
  std::stable_sort(boxes.begin(), boxes.end(),
                   [](const LabeledBox& a, const LabeledBox& b) { return a.id < b.id; });
  return boxes;
}

void check_range(const Sequence& seq, std::pair<int, int> range, const char* what) {
  for (const auto& [frame, boxes] : seq) {
    if (!boxes.empty() && (frame < range.first || frame > range.second)) {
      throw Error(std::string(what) + " frame " + std::to_string(frame + 1) +
                  " lies outside the evaluated range");
    }
  }
}

}  // namespace

MetricsReport evaluate(const Sequence& gt, const Sequence& hyp,
                       const EvalOptions& options) {
  if (options.frame_range) {
    check_range(gt, *options.frame_range, "ground-truth");
    check_range(hyp, *options.frame_range, "hypothesis");
  }
  std::set<int> frames;
  for (const auto& [f, unused] : gt) frames.insert(f);
  for (const auto& [f, unused] : hyp) frames.insert(f);

  MetricsReport r;
  r.frames = static_cast<int>(frames.size());
  std::map<long, long> last_match;                       // gt id -> hyp id
  std::map<std::pair<long, long>, long> overlap_frames;  // (gt, hyp) -> count
  std::set<long> gt_ids;
  std::set<long> hyp_ids;

  for (int frame : frames) {
    const auto g = sorted_by_id(gt, frame);
    const auto h = sorted_by_id(hyp, frame);
    r.gt_total += static_cast<long>(g.size());
    r.hyp_total += static_cast<long>(h.size());
    for (const auto& b : g) gt_ids.insert(b.id);
    for (const auto& b : h) hyp_ids.insert(b.id);

    CostMatrix ious(g.size(), h.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < h.size(); ++j) {
        ious(i, j) = iou(g[i].box, h[j].box);
        if (ious(i, j) >= options.iou_threshold) ++overlap_frames[{g[i].id, h[j].id}];
      }
    }

    std::vector<int> match(g.size(), -1);
    std::vector<bool> hyp_taken(h.size(), false);
    // Keep last pairings that still overlap enough.
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto prev = last_match.find(g[i].id);
      if (prev == last_match.end()) continue;
      for (std::size_t j = 0; j < h.size(); ++j) {
        if (!hyp_taken[j] && h[j].id == prev->second &&
            ious(i, j) >= options.iou_threshold) {
          match[i] = static_cast<int>(j);
          hyp_taken[j] = true;
          break;
        }
      }
    }
    // Assign the rest by minimum total (1 - IoU).
    std::vector<std::size_t> free_g;
    std::vector<std::size_t> free_h;
    for (std::size_t i = 0; i < g.size(); ++i) if (match[i] < 0) free_g.push_back(i);
    for (std::size_t j = 0; j < h.size(); ++j) if (!hyp_taken[j]) free_h.push_back(j);
    if (!free_g.empty() && !free_h.empty()) {
      CostMatrix cost(free_g.size(), free_h.size());
      for (std::size_t a = 0; a < free_g.size(); ++a) {
        for (std::size_t b = 0; b < free_h.size(); ++b) {
          const double o = ious(free_g[a], free_h[b]);
          cost(a, b) = o >= options.iou_threshold ? 1.0 - o : kForbidden;
        }
      }
      const auto assigned = min_cost_assignment(cost);
      for (std::size_t a = 0; a < free_g.size(); ++a) {
        const int b = assigned[a];
        if (b < 0 || cost(a, static_cast<std::size_t>(b)) >= kForbidden) continue;
        match[free_g[a]] = static_cast<int>(free_h[static_cast<std::size_t>(b)]);
      }
    }

    long matched = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (match[i] < 0) continue;
      ++matched;
      const long hid = h[static_cast<std::size_t>(match[i])].id;
      const auto prev = last_match.find(g[i].id);
      if (prev != last_match.end() && prev->second != hid) ++r.idsw;
      last_match[g[i].id] = hid;
    }
    r.tp += matched;
    r.fn += static_cast<long>(g.size()) - matched;
    r.fp += static_cast<long>(h.size()) - matched;
  }

  if (r.gt_total > 0) {
    r.mota = 100.0 * (1.0 - static_cast<double>(r.fn + r.fp + r.idsw) /
                                static_cast<double>(r.gt_total));
  } else {
    r.mota = r.fp == 0 ? 100.0 : -100.0 * static_cast<double>(r.fp);
  }

  // Identity matching: one hypothesis id per ground-truth id, maximizing the
  // number of frames in which the pair overlaps.
  const std::vector<long> gids(gt_ids.begin(), gt_ids.end());
  const std::vector<long> hids(hyp_ids.begin(), hyp_ids.end());
  if (!gids.empty() && !hids.empty()) {
    CostMatrix cost(gids.size(), hids.size());
    for (std::size_t a = 0; a < gids.size(); ++a) {
      for (std::size_t b = 0; b < hids.size(); ++b) {
        const auto it = overlap_frames.find({gids[a], hids[b]});
        cost(a, b) = it == overlap_frames.end() ? 0.0 : -static_cast<double>(it->second);
      }
    }
    const auto assigned = min_cost_assignment(cost);
    for (std::size_t a = 0; a < gids.size(); ++a) {
      if (assigned[a] >= 0) {
        r.idtp += static_cast<long>(-cost(a, static_cast<std::size_t>(assigned[a])));
      }
    }
  }
  r.idfn = r.gt_total - r.idtp;
  r.idfp = r.hyp_total - r.idtp;
  const long denom = r.gt_total + r.hyp_total;
  r.idf1 = denom > 0 ? 100.0 * 2.0 * static_cast<double>(r.idtp) / static_cast<double>(denom)
                     : 100.0;
  return r;
}

void print_report(std::ostream& out, const MetricsReport& r) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(3);
  out << "  MOTA    " << std::setw(10) << r.mota
      << (r.mota_negative() ? "  (negative)" : "") << '\n'
      << "  IDF1    " << std::setw(10) << r.idf1 << '\n'
      << "  IDSW    " << std::setw(10) << r.idsw << '\n'
      << "  GT      " << std::setw(10) << r.gt_total << '\n'
      << "  HYP     " << std::setw(10) << r.hyp_total << '\n'
      << "  TP      " << std::setw(10) << r.tp << '\n'
      << "  FN      " << std::setw(10) << r.fn << '\n'
      << "  FP      " << std::setw(10) << r.fp << '\n'
      << "  IDTP    " << std::setw(10) << r.idtp << '\n'
      << "  frames  " << std::setw(10) << r.frames << '\n';
  out.flags(flags);
}

void write_report_csv(std::ostream& out, const MetricsReport& r) {
  out << "mota,idf1,idsw,gt,hyp,tp,fn,fp,idtp,idfp,idfn,frames\n"
      << r.mota << ',' << r.idf1 << ',' << r.idsw << ',' << r.gt_total << ','
      << r.hyp_total << ',' << r.tp << ',' << r.fn << ',' << r.fp << ',' << r.idtp
      << ',' << r.idfp << ',' << r.idfn << ',' << r.frames << '\n';
}

}  // namespace gentrack
