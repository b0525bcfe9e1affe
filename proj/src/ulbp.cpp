#include "phfeat/ulbp.hpp"

#include <bit>
#include <charconv>
#include <ostream>

#include "phfeat/barcode.hpp"
#include "phfeat/error.hpp"

namespace phfeat {

namespace {

constexpr std::array<std::array<int, 2>, 8> kNeighbourOffsets = {{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

}  // namespace

std::string to_string(const UlbpPattern& p) {
  return "G" + std::to_string(p.geometry) + "R" + std::to_string(p.rotation);
}

std::optional<UlbpPattern> parse_pattern(std::string_view text) {
  if (text.size() != 4 || (text[0] != 'G' && text[0] != 'g') || (text[2] != 'R' && text[2] != 'r')) {
    return std::nullopt;
  }
  const int g = text[1] - '0';
  const int r = text[3] - '0';
  if (g < 1 || g > 7 || r < 1 || r > 8) return std::nullopt;
  return UlbpPattern{g, r};
}

LbpCode lbp_code(const GrayImage& img, int x, int y) {
  if (x < 1 || y < 1 || x + 1 >= img.width() || y + 1 >= img.height()) {
    throw BoundsError("LBP centre (" + std::to_string(x) + "," + std::to_string(y) +
                      ") lacks a full neighbourhood");
  }
  const double centre = img.at(x, y);
  unsigned value = 0;
  for (int i = 0; i < 8; ++i) {
    const double n = img.at(x + kNeighbourOffsets[i][0], y + kNeighbourOffsets[i][1]);
    if (n >= centre) value |= 1u << (7 - i);
  }
  return LbpCode{static_cast<std::uint8_t>(value)};
}

int transitions(LbpCode code) {
  // bit i vs bit i+1 (mod 8) is a plain circular shift of the byte.
  const auto rotated = std::rotl(code.value, 1);
  return std::popcount(static_cast<std::uint8_t>(code.value ^ rotated));
}

PatternClass classify(LbpCode code) {
  const int t = transitions(code);
  if (t == 0) return {code.value == 0 ? PatternKind::AllZeros : PatternKind::AllOnes, 0, 0};
  if (t > 2) return {};
  int start = 0;
  for (int i = 0; i < 8; ++i) {
    if (code.bit(i) && !code.bit((i + 7) % 8)) {
      start = i;
      break;
    }
  }
  return {PatternKind::Uniform, std::popcount(code.value), start + 1};
}

LbpCode rotate_bits(LbpCode code, int steps) {
  const int s = ((steps % 8) + 8) % 8;
  return LbpCode{std::rotr(code.value, s)};
}

std::vector<LbpCode> lbp_codes(const GrayImage& img) {
  const GrayImage padded = zero_pad(img, 1);
  std::vector<LbpCode> codes;
  codes.reserve(img.pixels().size());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) codes.push_back(lbp_code(padded, x + 1, y + 1));
  return codes;
}

PointCloud select_landmarks(const GrayImage& img, UlbpPattern pattern) {
  if (pattern.geometry < 1 || pattern.geometry > 7 || pattern.rotation < 1 || pattern.rotation > 8) {
    throw ParameterError("pattern " + to_string(pattern) + " outside G1..7 R1..8");
  }
  const PatternClass wanted{PatternKind::Uniform, pattern.geometry, pattern.rotation};
  const std::vector<LbpCode> codes = lbp_codes(img);
  PointCloud cloud;
  cloud.source_id = img.id();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (classify(codes[static_cast<std::size_t>(y) * img.width() + x]) == wanted) {
        cloud.points.push_back({static_cast<double>(x), static_cast<double>(y)});
      }
    }
  }
  return cloud;
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out << "x,y\n";
  for (const Point2& p : cloud.points) out << format_real(p.x) << ',' << format_real(p.y) << '\n';
}

}  // namespace phfeat
