#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "phfeat/oracle.hpp"
#include "phfeat/oracle_suite.hpp"
#include "phfeat/persistence.hpp"

using namespace phfeat;

namespace {

PointCloud cloud_of(std::vector<Point2> pts) { return PointCloud{std::move(pts), "test"}; }

std::vector<double> finite_deaths(const Barcode& b) {
  std::vector<double> out;
  for (const Bar& bar : b.bars())
    if (!bar.essential) out.push_back(bar.death);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("cubical: constant image") {
  const Diagram d = cubical_persistence(GrayImage::filled(3, 3, 0.0));
  CHECK(d.dim0.bars() == std::vector<Bar>{essential_bar(0, 0)});
  CHECK(d.dim1.empty());
}

TEST_CASE("cubical: two pixels") {
  const Diagram d = cubical_persistence(GrayImage(2, 1, {0, 5}));
  CHECK(d.dim0.bars() == std::vector<Bar>{essential_bar(0, 5)});
  CHECK(d.dim1.empty());
}

TEST_CASE("cubical: ring around a bright centre") {
  const GrayImage ring(3, 3, {1, 1, 1, 1, 9, 1, 1, 1, 1});
  const Diagram d = cubical_persistence(ring);
  CHECK(d.dim1.bars() == std::vector<Bar>{finite_bar(1, 9)});
  CHECK(d.dim0.bars() == std::vector<Bar>{essential_bar(1, 9)});
}

TEST_CASE("cubical: two basins merge at the ridge") {
  const Diagram d = cubical_persistence(GrayImage(3, 1, {0, 4, 2}));
  CHECK(d.dim0.bars() == std::vector<Bar>{finite_bar(2, 4), essential_bar(0, 4)});
  CHECK(cubical_persistence(GrayImage(1, 1, {3})).dim0.bars() == std::vector<Bar>{essential_bar(3, 3)});
}

TEST_CASE("betti oracle examples") {
  CHECK(oracle::betti_cubical(GrayImage::filled(3, 3, 0.0), 0) == oracle::Betti{1, 0});
  const GrayImage ring(3, 3, {1, 1, 1, 1, 9, 1, 1, 1, 1});
  CHECK(oracle::betti_cubical(ring, 1) == oracle::Betti{1, 1});
  CHECK(oracle::betti_cubical(ring, 9) == oracle::Betti{1, 0});
  CHECK(oracle::betti_cubical(ring, 0.5) == oracle::Betti{0, 0});
}

TEST_CASE("cubical persistence matches the Betti oracle at every threshold") {
  const oracle::TrialOutcome r = oracle::check_cubical(300, 1000);
  CHECK_MESSAGE(r.ok(), r.detail);
}

TEST_CASE("cubical persistence is translation equivariant") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const GrayImage img = oracle::random_small_image(rng());
    const double c = static_cast<double>(rng() % 41) - 20.0;
    std::vector<double> shifted = img.pixels();
    for (double& v : shifted) v += c;
    const Diagram a = cubical_persistence(img);
    const Diagram b = cubical_persistence(GrayImage(img.width(), img.height(), shifted));
    REQUIRE(a.dim0.size() == b.dim0.size());
    REQUIRE(a.dim1.size() == b.dim1.size());
    for (std::size_t i = 0; i < a.dim0.size(); ++i) {
      CHECK(b.dim0.bars()[i].birth == a.dim0.bars()[i].birth + c);
      CHECK(b.dim0.bars()[i].death == a.dim0.bars()[i].death + c);
    }
    for (std::size_t i = 0; i < a.dim1.size(); ++i) {
      CHECK(b.dim1.bars()[i].birth == a.dim1.bars()[i].birth + c);
      CHECK(b.dim1.bars()[i].death == a.dim1.bars()[i].death + c);
    }
  }
}

TEST_CASE("cubical bars stay within the intensity range") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> px(16 * 12);
    for (double& v : px) v = static_cast<double>(rng() % 1000) / 7.0 - 50.0;
    const GrayImage img(16, 12, px);
    const double cap = *std::max_element(px.begin(), px.end());
    const Diagram d = cubical_persistence(img);
    int essential = 0;
    for (const Barcode* b : {&d.dim0, &d.dim1}) {
      for (const Bar& bar : b->bars()) {
        CHECK(bar.birth <= bar.death);
        CHECK(bar.death <= cap);
        if (!bar.essential) CHECK(bar.death > bar.birth);
        essential += bar.essential;
      }
    }
    CHECK(essential == 1);
  }
}

TEST_CASE("rips: small configurations") {
  SUBCASE("two points") {
    const Diagram d = rips_persistence(cloud_of({{0, 0}, {3, 4}}));
    CHECK(d.dim0.bars() == std::vector<Bar>{finite_bar(0, 5), essential_bar(0, 5)});
    CHECK(d.dim1.empty());
  }
  SUBCASE("unit square") {
    const Diagram d = rips_persistence(cloud_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(finite_deaths(d.dim0) == std::vector<double>{1, 1, 1});
    CHECK(d.dim1.bars() == std::vector<Bar>{finite_bar(1, std::sqrt(2.0))});
  }
  SUBCASE("equilateral triangle") {
    const Diagram d = rips_persistence(cloud_of({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
    CHECK(d.dim1.empty());
  }
  SUBCASE("empty cloud") {
    const Diagram d = rips_persistence(cloud_of({}));
    CHECK(d.dim0.empty());
    CHECK(d.dim1.empty());
  }
  SUBCASE("duplicates only keep the essential class") {
    const Diagram d = rips_persistence(cloud_of({{2, 2}, {2, 2}, {2, 2}}));
    CHECK(d.dim0.bars() == std::vector<Bar>{essential_bar(0, 0)});
  }
  SUBCASE("a cut-off scale leaves essential classes") {
    const Diagram d = rips_persistence(cloud_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 1.2);
    CHECK(d.dim1.bars() == std::vector<Bar>{essential_bar(1, 1.2)});
    const Diagram apart = rips_persistence(cloud_of({{0, 0}, {10, 0}}), 1.0);
    CHECK(apart.dim0.bars() == std::vector<Bar>{essential_bar(0, 1), essential_bar(0, 1)});
  }
}

TEST_CASE("rips H0 oracle examples") {
  CHECK(oracle::rips_h0_deaths(cloud_of({{0, 0}, {1, 0}, {3, 0}})) == std::vector<double>{1, 2});
  CHECK(oracle::rips_h0_deaths(cloud_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == std::vector<double>{1, 1, 1});
  CHECK(oracle::rips_h0_deaths(cloud_of({{1, 1}, {1, 1}, {1, 1}, {1, 1}})) == std::vector<double>{0, 0, 0});
}

TEST_CASE("full-reduction oracle agrees on the unit square") {
  const Diagram d = oracle::rips_full_reduction(cloud_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(d.dim1.bars() == std::vector<Bar>{finite_bar(1, std::sqrt(2.0))});
  CHECK(finite_deaths(d.dim0) == std::vector<double>{1, 1, 1});
}

TEST_CASE("rips matches Kruskal and the full reduction on random clouds") {
  const oracle::TrialOutcome r = oracle::check_rips(200, 5000);
  CHECK_MESSAGE(r.ok(), r.detail);
}

TEST_CASE("rips filtration bars respect the scale cap") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    PointCloud c;
    for (int i = 0; i < 30; ++i) c.points.push_back({static_cast<double>(rng() % 100), static_cast<double>(rng() % 100)});
    const double scale = max_pairwise_distance(c);
    const Diagram d = rips_persistence(c);
    CHECK(d.dim0.size() >= 1);
    for (const Barcode* b : {&d.dim0, &d.dim1}) {
      for (const Bar& bar : b->bars()) {
        CHECK(bar.birth <= bar.death);
        CHECK(bar.death <= scale);
      }
    }
    CHECK(std::none_of(d.dim1.bars().begin(), d.dim1.bars().end(), [](const Bar& b) { return b.essential; }));
  }
}

TEST_CASE("the oracle harness catches an injected reduction defect") {
  CHECK_FALSE(oracle::check_cubical(200, 0, detail::Fault::ReductionOffByOne).ok());
  CHECK_FALSE(oracle::check_rips(200, 0, detail::Fault::ReductionOffByOne).ok());
}
