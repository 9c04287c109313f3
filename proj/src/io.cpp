#include "gentrack/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

#include "gentrack/error.hpp"

namespace gentrack::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct Row {
  int frame;
  long id;
  BBox box;
  double conf;
};

// Parses one `frame,id,left,top,width,height,conf[,x,y,z]` row; returns
// nullopt for blank lines.
std::optional<Row> parse_row(std::string_view raw, int line_no) {
  const auto line = trim(raw);
  if (line.empty()) return std::nullopt;
  const auto fields = split(line, ',');
  if (fields.size() < 7) {
    throw ParseError("expected at least 7 comma-separated fields", line_no);
  }
  std::array<double, 7> v{};
  for (std::size_t i = 0; i < 7; ++i) {
    const auto parsed = to_double(fields[i]);
    if (!parsed || !std::isfinite(*parsed)) {
      throw ParseError("field " + std::to_string(i + 1) + " is not a number: '" +
                           std::string(fields[i]) + "'",
                       line_no);
    }
    v[i] = *parsed;
  }
  if (v[0] < 1.0 || v[0] != std::floor(v[0])) {
    throw ParseError("frame must be a positive integer", line_no);
  }
  if (v[4] <= 0.0 || v[5] <= 0.0) {
    throw ParseError("box width and height must be positive", line_no);
  }
  return Row{static_cast<int>(v[0]) - 1, static_cast<long>(v[1]),
             BBox::from_corner(v[2], v[3], v[4], v[5]), v[6]};
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void write_row(std::ostream& out, int frame, long id, const BBox& b, double conf) {
  out << (frame + 1) << ',' << id << ',' << format_number(b.left()) << ','
      << format_number(b.top()) << ',' << format_number(b.w) << ','
      << format_number(b.h) << ',' << format_number(conf) << ",-1,-1,-1\n";
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf.data(), ptr);
}

DetectionMap parse_detections(std::istream& in, std::vector<std::string>* warnings) {
  DetectionMap out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = parse_row(line, line_no);
    if (!row) continue;
    Detection d;
    d.bbox = row->box;
    d.conf = row->conf;
    if (d.conf < 0.0 || d.conf > 1.0) {
      d.conf = std::clamp(d.conf, 0.0, 1.0);
      if (warnings) {
        warnings->push_back("line " + std::to_string(line_no) +
                            ": confidence clamped to [0,1]");
      }
    }
    out[row->frame].push_back(d);
  }
  return out;
}

DetectionMap read_detections(const std::filesystem::path& path,
                             std::vector<std::string>* warnings) {
  auto in = open_input(path);
  return parse_detections(in, warnings);
}

Sequence parse_tracks(std::istream& in) {
  Sequence out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = parse_row(line, line_no);
    if (!row) continue;
    out[row->frame].push_back({row->id, row->box, row->conf});
  }
  return out;
}

Sequence read_tracks(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_tracks(in);
}

void write_results(std::ostream& out,
                   const std::vector<std::vector<TrackOutput>>& per_frame) {
  std::vector<TrackOutput> rows;
  for (const auto& frame : per_frame) rows.insert(rows.end(), frame.begin(), frame.end());
  std::sort(rows.begin(), rows.end(), [](const TrackOutput& a, const TrackOutput& b) {
    return a.frame != b.frame ? a.frame < b.frame : a.id < b.id;
  });
  for (const auto& r : rows) {
    write_row(out, r.frame, static_cast<long>(r.id), r.bbox, 1.0 - r.penalty);
  }
}

void write_results(const std::filesystem::path& path,
                   const std::vector<std::vector<TrackOutput>>& per_frame) {
  auto out = open_output(path);
  write_results(out, per_frame);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_sequence(std::ostream& out, const Sequence& seq) {
  for (const auto& [frame, boxes] : seq) {
    auto sorted = boxes;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const LabeledBox& a, const LabeledBox& b) { return a.id < b.id; });
    for (const auto& b : sorted) write_row(out, frame, b.id, b.box, b.conf);
  }
}

void write_sequence(const std::filesystem::path& path, const Sequence& seq) {
  auto out = open_output(path);
  write_sequence(out, seq);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_detections(const std::filesystem::path& path, const DetectionMap& dets) {
  auto out = open_output(path);
  for (const auto& [frame, list] : dets) {
    for (const auto& d : list) write_row(out, frame, -1, d.bbox, d.conf);
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// PNM rasters

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int c = 0;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

int header_int(std::istream& in, const std::filesystem::path& path) {
  const auto tok = next_token(in);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || value <= 0) {
    throw ParseError("bad PNM header in '" + path.string() + "'");
  }
  return value;
}

std::uint8_t luminance(int r, int g, int b) {
  return static_cast<std::uint8_t>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

}  // namespace

GrayImage read_pnm(const std::filesystem::path& path) {
  auto in = open_input(path);
  const auto magic = next_token(in);
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6") {
    throw ParseError("unsupported image format in '" + path.string() + "'");
  }
  const int width = header_int(in, path);
  const int height = header_int(in, path);
  const int maxval = header_int(in, path);
  if (maxval > 255) throw ParseError("16-bit PNM not supported: '" + path.string() + "'");
  const bool color = magic == "P3" || magic == "P6";
  const bool binary = magic == "P5" || magic == "P6";
  const int channels = color ? 3 : 1;
  auto scale = [maxval](int v) {
    return maxval == 255 ? v : static_cast<int>(std::lround(v * 255.0 / maxval));
  };

  GrayImage img(width, height);
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<int> samples(count);
  if (binary) {
    std::vector<unsigned char> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
      throw ParseError("truncated image data in '" + path.string() + "'");
    }
    std::copy(raw.begin(), raw.end(), samples.begin());
  } else {
    for (auto& s : samples) {
      if (!(in >> s)) throw ParseError("truncated image data in '" + path.string() + "'");
    }
  }
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (color) {
      px[i] = luminance(scale(samples[3 * i]), scale(samples[3 * i + 1]),
                        scale(samples[3 * i + 2]));
    } else {
      px[i] = static_cast<std::uint8_t>(std::clamp(scale(samples[i]), 0, 255));
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  auto out = open_output(path);
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  const auto px = image.pixels();
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

FrameDirectory::FrameDirectory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("not a directory: '" + dir.string() + "'");
  std::map<long, fs::path> numbered;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext != ".pgm" && ext != ".ppm" && ext != ".pnm") continue;
    const auto stem = entry.path().stem().string();
    if (stem.empty() || !std::all_of(stem.begin(), stem.end(),
                                     [](unsigned char c) { return std::isdigit(c); })) {
      continue;
    }
    const long index = std::stol(stem);
    if (!numbered.emplace(index, entry.path()).second) {
      throw IoError("duplicate frame number " + std::to_string(index) + " in '" +
                    dir.string() + "'");
    }
  }
  if (numbered.empty()) return;
  std::string missing;
  long expected = numbered.begin()->first;
  for (const auto& [index, path] : numbered) {
    for (; expected < index; ++expected) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(expected);
    }
    paths_.push_back(path);
    expected = index + 1;
  }
  if (!missing.empty()) {
    throw IoError("frame sequence in '" + dir.string() + "' is missing: " + missing);
  }
}

std::vector<GrayImage> load_frames(const std::filesystem::path& dir) {
  FrameDirectory frames(dir);
  std::vector<GrayImage> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) out.push_back(frames.load(i));
  return out;
}

// ---------------------------------------------------------------------------
// Config

namespace {

using Setter = std::function<void(TrackerConfig&, std::string_view)>;

double number(std::string_view key, std::string_view value) {
  const auto v = to_double(value);
  if (!v || !std::isfinite(*v)) {
    throw ConfigError("key '" + std::string(key) + "': not a number: '" +
                      std::string(value) + "'");
  }
  return *v;
}

long integer(std::string_view key, std::string_view value) {
  const double v = number(key, value);
  if (v != std::floor(v)) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer");
  }
  return static_cast<long>(v);
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto real = [&t](std::string key, double TrackerConfig::*field) {
      t[key] = [field, key](TrackerConfig& c, std::string_view v) { c.*field = number(key, v); };
    };
    auto whole = [&t](std::string key, int TrackerConfig::*field) {
      t[key] = [field, key](TrackerConfig& c, std::string_view v) {
        c.*field = static_cast<int>(integer(key, v));
      };
    };
    whole("particles", &TrackerConfig::particles);
    whole("pso_iters", &TrackerConfig::pso_iters);
    whole("max_age", &TrackerConfig::max_age);
    whole("threads", &TrackerConfig::threads);
    real("eta", &TrackerConfig::eta);
    real("phi_p", &TrackerConfig::phi_p);
    real("phi_g", &TrackerConfig::phi_g);
    real("lambda_p", &TrackerConfig::lambda_p);
    real("lambda_d", &TrackerConfig::lambda_d);
    real("lambda_h", &TrackerConfig::lambda_h);
    real("lambda_s", &TrackerConfig::lambda_s);
    real("lambda_m", &TrackerConfig::lambda_m);
    real("sigma_h", &TrackerConfig::sigma_h);
    real("sigma_p", &TrackerConfig::sigma_p);
    real("sigma_i", &TrackerConfig::sigma_i);
    real("xi_p", &TrackerConfig::xi_p);
    real("xi_v", &TrackerConfig::xi_v);
    real("rho_re", &TrackerConfig::rho_re);
    real("discard_threshold", &TrackerConfig::discard_threshold);
    real("social_step", &TrackerConfig::social_step);
    real("eps_x", &TrackerConfig::eps_x);
    real("eps_v", &TrackerConfig::eps_v);
    real("lambda_x", &TrackerConfig::lambda_x);
    real("lambda_v", &TrackerConfig::lambda_v);
    real("motion_pos_scale", &TrackerConfig::motion_pos_scale);
    real("motion_vel_scale", &TrackerConfig::motion_vel_scale);
    real("vmax_pos_scale", &TrackerConfig::vmax_pos_scale);
    real("vmax_size_scale", &TrackerConfig::vmax_size_scale);
    real("gate_cost", &TrackerConfig::gate_cost);
    t["sigma_0"] = t["discard_threshold"];
    t["sigma_s"] = t["social_step"];
    t["resample_mode"] = [](TrackerConfig& c, std::string_view v) {
      c.resample_mode = parse_resample_mode(v);
    };
    t["init_mode"] = [](TrackerConfig& c, std::string_view v) {
      c.init_mode = parse_init_mode(v);
    };
    t["entrance_margin"] = [](TrackerConfig& c, std::string_view v) {
      c.entrance_margin = number("entrance_margin", v);
    };
    t["seed"] = [](TrackerConfig& c, std::string_view v) {
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("key 'seed': expected an unsigned integer");
      }
      c.seed = seed;
    };
    t["rho_max"] = [](TrackerConfig&, std::string_view v) {
      if (number("rho_max", v) != TrackerConfig::rho_max) {
        throw ConfigError("key 'rho_max' is fixed at 1");
      }
    };
    return t;
  }();
  return table;
}

}  // namespace

TrackerConfig parse_config(std::istream& in, std::optional<Variant> forced) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::optional<Variant> variant;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key(trim(body.substr(0, eq)));
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    }
    for (const auto& [seen, unused] : entries) {
      if (seen == key) throw ConfigError("key '" + key + "' given twice");
    }
    if (key == "variant") {
      variant = parse_variant(value);
    } else if (!setters().contains(key)) {
      throw ConfigError("unknown key '" + key + "'");
    }
    entries.emplace_back(key, value);
  }

  if (forced) variant = forced;
  TrackerConfig cfg = TrackerConfig::defaults(variant.value_or(Variant::PSOSocial));
  for (const auto& [key, value] : entries) {
    if (key == "variant") continue;
    setters().find(key)->second(cfg, value);
  }
  cfg.validate();
  return cfg;
}

TrackerConfig read_config(const std::filesystem::path& path, std::optional<Variant> variant) {
  auto in = open_input(path);
  return parse_config(in, variant);
}

}  // namespace gentrack::io
