#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phfeat/image.hpp"

namespace phfeat {

// 8-neighbour local binary pattern. Bit i (i = 0 is the most significant bit)
// compares neighbour i with the centre, neighbours taken clockwise from the
// top-left: TL, T, TR, R, BR, B, BL, L.
struct LbpCode {
  std::uint8_t value = 0;

  bool bit(int i) const { return (value >> (7 - i)) & 1u; }
  friend bool operator==(LbpCode, LbpCode) = default;
};

enum class PatternKind { NonUniform, AllZeros, AllOnes, Uniform };

struct PatternClass {
  PatternKind kind = PatternKind::NonUniform;
  int geometry = 0;  // 1..7, number of 1-bits; Uniform only
  int rotation = 0;  // 1..8, 1 + start of the circular run of 1-bits; Uniform only

  friend bool operator==(const PatternClass&, const PatternClass&) = default;
};

// A (geometry, rotation) landmark selector, written G<g>R<r> on the command line.
struct UlbpPattern {
  int geometry = 1;
  int rotation = 1;

  friend auto operator<=>(const UlbpPattern&, const UlbpPattern&) = default;
};

std::string to_string(const UlbpPattern& p);
std::optional<UlbpPattern> parse_pattern(std::string_view text);

// (x, y) must have all eight neighbours inside the image.
LbpCode lbp_code(const GrayImage& img, int x, int y);

int transitions(LbpCode code);
PatternClass classify(LbpCode code);

// Circular shift moving bit i to bit i+1.
LbpCode rotate_bits(LbpCode code, int steps);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct PointCloud {
  std::vector<Point2> points;
  std::string source_id;
};

// Codes for every pixel of `img` after padding it by one pixel of zeros.
std::vector<LbpCode> lbp_codes(const GrayImage& img);

// Pixels of `img` (unpadded coordinates, row-major) whose code is Uniform(g, r).
// The image is zero-padded by one pixel internally.
PointCloud select_landmarks(const GrayImage& img, UlbpPattern pattern);

// CSV `x,y` rows with header.
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);

}  // namespace phfeat
