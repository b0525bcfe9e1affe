#include <doctest.h>

#include <bitset>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "phfeat/error.hpp"
#include "phfeat/ulbp.hpp"

using namespace phfeat;

TEST_CASE("lbp_code on hand-checked patches") {
  CHECK(lbp_code(GrayImage::filled(3, 3, 4.0), 1, 1).value == 255);
  CHECK(lbp_code(GrayImage(3, 3, {0, 0, 0, 0, 9, 0, 0, 0, 0}), 1, 1).value == 0);
  // TL T TR R BR B BL L = 1 1 1 1 0 0 0 0
  const GrayImage patch(3, 3, {5, 5, 5, 0, 1, 5, 0, 0, 0});
  CHECK(lbp_code(patch, 1, 1).value == 0b11110000);
  CHECK_THROWS_AS(lbp_code(patch, 0, 1), BoundsError);
  CHECK_THROWS_AS(lbp_code(patch, 1, 2), BoundsError);
}

TEST_CASE("neighbour bit order is clockwise from top-left") {
  const std::array<std::pair<int, int>, 8> cells = {{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};
  for (int i = 0; i < 8; ++i) {
    GrayImage img = GrayImage::filled(3, 3, 0.0);
    img.at(1, 1) = 1.0;
    img.at(cells[i].first, cells[i].second) = 2.0;
    CHECK(lbp_code(img, 1, 1).value == (1u << (7 - i)));
  }
}

TEST_CASE("transitions") {
  CHECK(transitions({0}) == 0);
  CHECK(transitions({255}) == 0);
  CHECK(transitions({0b11110000}) == 2);
  CHECK(transitions({0b10000001}) == 2);
  CHECK(transitions({0b10100000}) == 4);
  for (int v = 0; v < 256; ++v) {
    const LbpCode c{static_cast<std::uint8_t>(v)};
    int brute = 0;
    for (int i = 0; i < 8; ++i) brute += c.bit(i) != c.bit((i + 1) % 8);
    CHECK(transitions(c) == brute);
    CHECK(transitions(c) % 2 == 0);
  }
}

TEST_CASE("classify") {
  CHECK(classify({0b11110000}) == PatternClass{PatternKind::Uniform, 4, 1});
  CHECK(classify({0b01111000}) == PatternClass{PatternKind::Uniform, 4, 2});
  // Run wrapping from bit 7 to bit 0 starts at bit 7.
  CHECK(classify({0b10000001}) == PatternClass{PatternKind::Uniform, 2, 8});
  CHECK(classify({0}).kind == PatternKind::AllZeros);
  CHECK(classify({255}).kind == PatternKind::AllOnes);
  CHECK(classify({0b10100000}).kind == PatternKind::NonUniform);
}

TEST_CASE("uniform taxonomy: 58 codes, 7 geometries x 8 rotations plus two") {
  int uniform_like = 0;
  std::map<std::pair<int, int>, int> cells;
  for (int v = 0; v < 256; ++v) {
    const PatternClass pc = classify({static_cast<std::uint8_t>(v)});
    if (pc.kind == PatternKind::NonUniform) continue;
    ++uniform_like;
    if (pc.kind == PatternKind::Uniform) {
      CHECK(pc.geometry == static_cast<int>(std::bitset<8>(static_cast<unsigned>(v)).count()));
      ++cells[{pc.geometry, pc.rotation}];
    }
  }
  CHECK(uniform_like == 58);
  CHECK(cells.size() == 56);
  for (const auto& [key, n] : cells) {
    CHECK(n == 1);
    CHECK(key.first >= 1);
    CHECK(key.first <= 7);
    CHECK(key.second >= 1);
    CHECK(key.second <= 8);
  }
}

TEST_CASE("rotating bits advances the rotation index mod 8") {
  for (int v = 0; v < 256; ++v) {
    const LbpCode c{static_cast<std::uint8_t>(v)};
    const PatternClass pc = classify(c);
    if (pc.kind != PatternKind::Uniform) continue;
    const PatternClass next = classify(rotate_bits(c, 1));
    CHECK(next.kind == PatternKind::Uniform);
    CHECK(next.geometry == pc.geometry);
    CHECK(next.rotation == pc.rotation % 8 + 1);
  }
}

TEST_CASE("pattern names") {
  CHECK(parse_pattern("G4R1") == std::optional<UlbpPattern>(UlbpPattern{4, 1}));
  CHECK_FALSE(parse_pattern("G8R1"));
  CHECK_FALSE(parse_pattern("G4R9"));
  CHECK_FALSE(parse_pattern("G4R10"));
  CHECK(to_string(UlbpPattern{7, 8}) == "G7R8");
}

TEST_CASE("select_landmarks") {
  CHECK(select_landmarks(GrayImage::filled(6, 5, 3.0), {4, 1}).points.empty());

  // The hand-checked patch embedded in zeros.
  GrayImage img = GrayImage::filled(5, 5, 0.0);
  const double patch[3][3] = {{5, 5, 5}, {0, 1, 5}, {0, 0, 0}};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) img.at(x + 1, y + 1) = patch[y][x];
  const PointCloud cloud = select_landmarks(img, {4, 1});
  CHECK(std::find(cloud.points.begin(), cloud.points.end(), Point2{2, 2}) != cloud.points.end());

  // Brute-force reference over the padded image.
  const GrayImage padded = zero_pad(img, 1);
  std::vector<Point2> expected;
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) {
      const double c = padded.at(x + 1, y + 1);
      const int nb[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}};
      std::string bits;
      for (auto& d : nb) bits += padded.at(x + 1 + d[0], y + 1 + d[1]) >= c ? '1' : '0';
      if (bits == "11110000") expected.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  }
  CHECK(cloud.points == expected);
}

TEST_CASE("landmark clouds partition each geometry") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> px(12 * 9);
    for (double& v : px) v = static_cast<double>(rng() % 5);
    const GrayImage img(12, 9, px);
    const std::vector<LbpCode> codes = lbp_codes(img);
    for (int g = 1; g <= 7; ++g) {
      std::set<std::pair<double, double>> seen;
      std::size_t total = 0;
      for (int r = 1; r <= 8; ++r) {
        const PointCloud c = select_landmarks(img, {g, r});
        total += c.points.size();
        for (const Point2& p : c.points) {
          CHECK(img.contains(static_cast<int>(p.x), static_cast<int>(p.y)));
          CHECK(seen.insert({p.x, p.y}).second);
        }
      }
      const auto expected = std::count_if(codes.begin(), codes.end(), [g](LbpCode c) {
        return static_cast<int>(std::bitset<8>(c.value).count()) == g && transitions(c) == 2;
      });
      CHECK(total == static_cast<std::size_t>(expected));
    }
  }
}

TEST_CASE("point cloud CSV") {
  std::stringstream ss;
  write_point_cloud_csv(ss, PointCloud{{{1, 2}, {3, 0}}, "x"});
  CHECK(ss.str() == "x,y\n1,2\n3,0\n");
}
