#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gentrack/error.hpp"
#include "gentrack/eval.hpp"
#include "gentrack/io.hpp"
#include "gentrack/synth.hpp"
#include "gentrack/tracker.hpp"

namespace fs = std::filesystem;
using namespace gentrack;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

// Gray levels for annotated frames.
constexpr std::uint8_t kShadeStrong = 255;
constexpr std::uint8_t kShadeNew = 200;
constexpr std::uint8_t kShadeWeak = 150;
constexpr std::uint8_t kShadeRecovering = 90;
constexpr std::uint8_t kShadeUnmatched = 0;

std::string frame_name(std::size_t index) {
  std::string digits = std::to_string(index + 1);
  return std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits + ".pgm";
}

void draw_box(GrayImage& img, const BBox& box, std::uint8_t shade, int thickness) {
  const int x0 = static_cast<int>(std::floor(box.left()));
  const int y0 = static_cast<int>(std::floor(box.top()));
  const int x1 = static_cast<int>(std::ceil(box.right()));
  const int y1 = static_cast<int>(std::ceil(box.bottom()));
  img.fill_rect(x0, y0, x1, y0 + thickness, shade);
  img.fill_rect(x0, y1 - thickness, x1, y1, shade);
  img.fill_rect(x0, y0, x0 + thickness, y1, shade);
  img.fill_rect(x1 - thickness, y0, x1, y1, shade);
}

std::uint8_t status_shade(const TrackOutput& t) {
  if (t.recovering) return kShadeRecovering;
  switch (t.status) {
    case TrackStatus::Strong: return kShadeStrong;
    case TrackStatus::New: return kShadeNew;
    case TrackStatus::Weak: return kShadeWeak;
  }
  return kShadeWeak;
}

struct TrackArgs {
  std::string frames;
  std::string dets;
  std::string config;
  std::string out;
  std::string variant;
  std::optional<std::uint64_t> seed;
  std::string annotate;
  std::optional<int> threads;
};

int cmd_track(const TrackArgs& a) {
  std::optional<Variant> variant;
  if (!a.variant.empty()) variant = parse_variant(a.variant);
  TrackerConfig cfg = a.config.empty() ? TrackerConfig::defaults(variant.value_or(Variant::PSOSocial))
                                       : io::read_config(a.config, variant);
  if (a.seed) cfg.seed = *a.seed;
  if (a.threads) cfg.threads = *a.threads;
  cfg.validate();

  std::vector<std::string> warnings;
  const auto dets = io::read_detections(a.dets, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const io::FrameDirectory frames(a.frames);
  if (!dets.empty() && dets.rbegin()->first >= static_cast<int>(frames.size())) {
    throw IoError("detections reference frame " + std::to_string(dets.rbegin()->first + 1) +
                  " but only " + std::to_string(frames.size()) + " frames exist");
  }
  if (!a.annotate.empty()) fs::create_directories(a.annotate);

  Tracker tracker(cfg);
  std::vector<std::vector<TrackOutput>> results;
  results.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    FrameInput input;
    input.index = static_cast<int>(i);
    input.image = frames.load(i);
    if (const auto it = dets.find(input.index); it != dets.end()) input.detections = it->second;
    results.push_back(tracker.step(input));

    if (!a.annotate.empty()) {
      GrayImage canvas = input.image;
      for (const auto& t : results.back()) draw_box(canvas, t.bbox, status_shade(t), 2);
      for (const auto d : tracker.unmatched_detections()) {
        draw_box(canvas, input.detections[d].bbox, kShadeUnmatched, 1);
      }
      io::write_pgm(fs::path(a.annotate) / frame_name(i), canvas);
    }
  }
  io::write_results(a.out, results);
  return 0;
}

int cmd_synth(const std::string& preset, const std::string& out, std::uint64_t seed) {
  const auto scenario = synth::preset(preset, seed);
  const auto generated = synth::generate(scenario);
  const fs::path root(out);
  fs::create_directories(root / "frames");
  for (std::size_t i = 0; i < generated.frames.size(); ++i) {
    io::write_pgm(root / "frames" / frame_name(i), generated.frames[i]);
  }
  io::write_sequence(root / "gt.txt", generated.ground_truth);
  io::DetectionMap dets;
  for (std::size_t i = 0; i < generated.detections.size(); ++i) {
    if (!generated.detections[i].empty()) dets[static_cast<int>(i)] = generated.detections[i];
  }
  io::write_detections(root / "det.txt", dets);
  return 0;
}

struct EvalArgs {
  std::string gt;
  std::string hyp;
  double iou = 0.5;
  std::string csv;
  std::optional<double> min_mota;
  std::optional<double> min_idf1;
  std::optional<long> max_idsw;
};

int cmd_eval(const EvalArgs& a) {
  EvalOptions opts;
  opts.iou_threshold = a.iou;
  const auto report = evaluate(io::read_tracks(a.gt), io::read_tracks(a.hyp), opts);
  print_report(std::cout, report);
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw IoError("cannot write " + a.csv);
    write_report_csv(csv, report);
  }
  bool ok = true;
  if (a.min_mota && report.mota < *a.min_mota) {
    std::cerr << "assertion failed: MOTA " << report.mota << " < " << *a.min_mota << '\n';
    ok = false;
  }
  if (a.min_idf1 && report.idf1 < *a.min_idf1) {
    std::cerr << "assertion failed: IDF1 " << report.idf1 << " < " << *a.min_idf1 << '\n';
    ok = false;
  }
  if (a.max_idsw && report.idsw > *a.max_idsw) {
    std::cerr << "assertion failed: IDSW " << report.idsw << " > " << *a.max_idsw << '\n';
    ok = false;
  }
  return ok ? 0 : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GenTrack multi-object tracker"};
  app.require_subcommand(1);

  TrackArgs track;
  auto* track_cmd = app.add_subcommand("track", "Track detections over a frame directory");
  track_cmd->add_option("--frames", track.frames, "Directory of numbered PGM/PPM frames")->required();
  track_cmd->add_option("--dets", track.dets, "Detections file")->required();
  track_cmd->add_option("--config", track.config, "Tracker configuration file");
  track_cmd->add_option("--out", track.out, "Results file")->required();
  track_cmd->add_option("--variant", track.variant, "basic, pso or pso-social");
  track_cmd->add_option("--seed", track.seed, "Random seed");
  track_cmd->add_option("--threads", track.threads, "Worker threads");
  track_cmd->add_option("--annotate", track.annotate, "Write annotated frames here");

  std::string preset;
  std::string synth_out;
  std::uint64_t synth_seed = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic sequence");
  synth_cmd->add_option("--preset", preset, "crossing, occlusion5 or churn10")->required();
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "Random seed");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score a results file against ground truth");
  eval_cmd->add_option("--gt", ev.gt, "Ground-truth file")->required();
  eval_cmd->add_option("--hyp", ev.hyp, "Results file")->required();
  eval_cmd->add_option("--iou-thresh", ev.iou, "Match threshold")->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--csv", ev.csv, "Also write metrics as CSV");
  eval_cmd->add_option("--assert-mota", ev.min_mota, "Exit 1 if MOTA is below this");
  eval_cmd->add_option("--assert-idf1", ev.min_idf1, "Exit 1 if IDF1 is below this");
  eval_cmd->add_option("--assert-idsw", ev.max_idsw, "Exit 1 if IDSW is above this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*track_cmd) return cmd_track(track);
    if (*synth_cmd) return cmd_synth(preset, synth_out, synth_seed);
    if (*eval_cmd) return cmd_eval(ev);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
