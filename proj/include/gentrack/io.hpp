#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gentrack/config.hpp"
#include "gentrack/geometry.hpp"
#include "gentrack/image.hpp"
#include "gentrack/sequence.hpp"
#include "gentrack/tracker.hpp"

namespace gentrack::io {

using DetectionMap = std::map<int, std::vector<Detection>>;

/// MOT-Challenge style rows `frame,id,left,top,width,height,conf,x,y,z`.
/// Frames are 1-based on disk and 0-based in memory. Out-of-range
/// confidences are clamped and reported through `warnings` when given.
DetectionMap parse_detections(std::istream& in,
                              std::vector<std::string>* warnings = nullptr);
DetectionMap read_detections(const std::filesystem::path& path,
                             std::vector<std::string>* warnings = nullptr);

/// Same schema, keeping the id column (ground truth or results files).
Sequence parse_tracks(std::istream& in);
Sequence read_tracks(const std::filesystem::path& path);

/// Emits one row per track output sorted by (frame, id); conf = 1 - penalty.
void write_results(std::ostream& out,
                   const std::vector<std::vector<TrackOutput>>& per_frame);
void write_results(const std::filesystem::path& path,
                   const std::vector<std::vector<TrackOutput>>& per_frame);

void write_sequence(std::ostream& out, const Sequence& seq);
void write_sequence(const std::filesystem::path& path, const Sequence& seq);
void write_detections(const std::filesystem::path& path, const DetectionMap& dets);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

// Rasters. Binary and ASCII PGM plus binary PPM (converted to luminance).
GrayImage read_pnm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// Numbered image files of a directory, loaded on demand in numeric order.
class FrameDirectory {
 public:
  /// Throws IoError if the directory is missing or the numbering has gaps.
  explicit FrameDirectory(const std::filesystem::path& dir);

  std::size_t size() const { return paths_.size(); }
  GrayImage load(std::size_t i) const { return read_pnm(paths_.at(i)); }
  const std::filesystem::path& path(std::size_t i) const { return paths_.at(i); }

 private:
  std::vector<std::filesystem::path> paths_;
};

std::vector<GrayImage> load_frames(const std::filesystem::path& dir);

/// `key = value` lines, `#` comments, case-insensitive keys. Unknown keys
/// and failed validation throw ConfigError naming the key. A `variant`
/// argument takes precedence over the file's own variant line.
TrackerConfig parse_config(std::istream& in, std::optional<Variant> variant = std::nullopt);
TrackerConfig read_config(const std::filesystem::path& path,
                          std::optional<Variant> variant = std::nullopt);

}  // namespace gentrack::io
