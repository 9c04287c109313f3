#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gentrack/error.hpp"
#include "gentrack/io.hpp"
#include "temp_dir.hpp"

using gentrack::BBox;
namespace io = gentrack::io;
namespace fs = std::filesystem;

TEST(Detections, CornerToCenter) {
  std::istringstream in("1,-1,10,20,30,40,0.9,-1,-1,-1\n");
  const auto dets = io::parse_detections(in);
  ASSERT_EQ(dets.size(), 1u);
  ASSERT_TRUE(dets.contains(0));
  const auto& d = dets.at(0).at(0);
  EXPECT_EQ(d.bbox, (BBox{25, 40, 30, 40}));
  EXPECT_DOUBLE_EQ(d.conf, 0.9);
}

TEST(Detections, EmptyInput) {
  std::istringstream in("");
  EXPECT_TRUE(io::parse_detections(in).empty());
}

TEST(Detections, ZeroWidthRejectedWithLine) {
  std::istringstream in("1,-1,10,20,5,40,0.9\n2,-1,10,20,0,40,0.9,-1,-1,-1\n");
  try {
    io::parse_detections(in);
    FAIL() << "expected ParseError";
  } catch (const gentrack::ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Detections, GarbageRejected) {
  std::istringstream in("1,-1,ten,20,5,40,0.9\n");
  EXPECT_THROW(io::parse_detections(in), gentrack::ParseError);
  std::istringstream short_row("1,-1,10,20\n");
  EXPECT_THROW(io::parse_detections(short_row), gentrack::ParseError);
}

TEST(Detections, ConfidenceClampedWithWarning) {
  std::istringstream in("1,-1,10,20,5,40,1.7\n");
  std::vector<std::string> warnings;
  const auto dets = io::parse_detections(in, &warnings);
  EXPECT_DOUBLE_EQ(dets.at(0).at(0).conf, 1.0);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Results, SingleRow) {
  std::vector<std::vector<gentrack::TrackOutput>> frames(1);
  frames[0].push_back({0, 0, {25, 40, 30, 40}, gentrack::TrackStatus::Strong, 0.0, false});
  std::ostringstream out;
  io::write_results(out, frames);
  EXPECT_EQ(out.str(), "1,0,10,20,30,40,1,-1,-1,-1\n");
}

TEST(Results, EmptySession) {
  std::ostringstream out;
  io::write_results(out, {});
  EXPECT_EQ(out.str(), "");
}

TEST(Results, SortedAndRoundTrip) {
  std::vector<std::vector<gentrack::TrackOutput>> frames(2);
  frames[0].push_back({0, 3, {12.25, 40.5, 30.1, 40.7}, gentrack::TrackStatus::Weak, 0.2, false});
  frames[0].push_back({0, 1, {1.0 / 3.0, 2.0 / 7.0, 5, 6}, gentrack::TrackStatus::Strong, 0.0, false});
  frames[1].push_back({1, 1, {100, 100, 10, 10}, gentrack::TrackStatus::Strong, 0.0, false});
  std::ostringstream out;
  io::write_results(out, frames);
  std::istringstream in(out.str());
  const auto seq = io::parse_tracks(in);
  ASSERT_EQ(seq.at(0).size(), 2u);
  EXPECT_EQ(seq.at(0)[0].id, 1);
  EXPECT_EQ(seq.at(0)[1].id, 3);
  EXPECT_NEAR(seq.at(0)[0].box.u, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(seq.at(0)[1].conf, 0.8, 1e-15);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(io::format_number(0.0), "0");
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(10.0), "10");
  EXPECT_EQ(io::format_number(0.1), "0.1");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(io::format_number(x)), x);
}

TEST(Frames, DirectoryInOrder) {
  testing_support::TempDir dir;
  for (int i = 1; i <= 3; ++i) {
    io::write_pgm(dir.path() / ("00000" + std::to_string(i) + ".pgm"),
                  gentrack::GrayImage(4, 3, static_cast<std::uint8_t>(i * 10)));
  }
  const auto frames = io::load_frames(dir.path());
  ASSERT_EQ(frames.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(frames[static_cast<std::size_t>(i)].at(0, 0), (i + 1) * 10);
}

TEST(Frames, GapRejected) {
  testing_support::TempDir dir;
  io::write_pgm(dir.path() / "000001.pgm", gentrack::GrayImage(2, 2));
  io::write_pgm(dir.path() / "000003.pgm", gentrack::GrayImage(2, 2));
  EXPECT_THROW(io::FrameDirectory{dir.path()}, gentrack::IoError);
}

TEST(Frames, MissingDirectory) {
  EXPECT_THROW(io::FrameDirectory{"/nonexistent/gentrack"}, gentrack::IoError);
}

TEST(Pnm, ColorToLuminance) {
  testing_support::TempDir dir;
  const auto path = dir.path() / "c.ppm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P6\n2 1\n255\n";
    const unsigned char px[] = {200, 100, 50, 0, 0, 255};
    out.write(reinterpret_cast<const char*>(px), sizeof px);
  }
  const auto img = io::read_pnm(path);
  // 0.299*200 + 0.587*100 + 0.114*50 = 124.2; 0.114*255 = 29.07
  EXPECT_EQ(img.at(0, 0), 124);
  EXPECT_EQ(img.at(1, 0), 29);
}

TEST(Pnm, AsciiGray) {
  testing_support::TempDir dir;
  const auto path = dir.path() / "a.pgm";
  {
    std::ofstream out(path);
    out << "P2\n# comment\n3 1\n255\n0 128 255\n";
  }
  const auto img = io::read_pnm(path);
  EXPECT_EQ(img.at(1, 0), 128);
  EXPECT_EQ(img.at(2, 0), 255);
}

TEST(Pnm, PgmRoundTrip) {
  testing_support::TempDir dir;
  gentrack::GrayImage img(5, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) img.at(x, y) = static_cast<std::uint8_t>(x * 40 + y);
  io::write_pgm(dir.path() / "r.pgm", img);
  EXPECT_EQ(io::read_pnm(dir.path() / "r.pgm"), img);
}
