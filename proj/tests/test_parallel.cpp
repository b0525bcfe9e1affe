#include <doctest.h>

#include <random>

#include "phfeat/image.hpp"
#include "phfeat/parallel.hpp"

using namespace phfeat;

namespace {

bool same(const Barcode& a, const Barcode& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Bar& x = a.bars()[i];
    const Bar& y = b.bars()[i];
    if (x.birth != y.birth || x.death != y.death || x.essential != y.essential) return false;
  }
  return true;
}

bool same(const std::vector<Diagram>& a, const std::vector<Diagram>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i].dim0, b[i].dim0) || !same(a[i].dim1, b[i].dim1)) return false;
  return true;
}

}  // namespace

TEST_CASE("parallel cubical matches serial") {
  std::vector<GrayImage> images;
  for (int k = 0; k < 24; ++k) images.push_back(synth_texture(k % 2 ? TextureClass::Holes2 : TextureClass::Holes1, 32, k));
  CHECK(same(batch::cubical(images), batch::cubical_serial(images)));
  CHECK(batch::cubical({}).empty());
}

TEST_CASE("parallel rips matches serial") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 20);
  std::vector<PointCloud> clouds(16);
  for (auto& c : clouds)
    for (int i = 0; i < 25; ++i) c.points.push_back({u(rng), u(rng)});
  CHECK(same(batch::rips(clouds), batch::rips_serial(clouds)));
  CHECK(same(batch::rips(clouds, 4.0), batch::rips_serial(clouds, 4.0)));
}

TEST_CASE("parallel features match serial") {
  std::vector<GrayImage> images;
  for (int k = 0; k < 12; ++k) images.push_back(synth_texture(TextureClass::Holes1, 32, k));
  const auto diagrams = batch::cubical_serial(images);
  std::vector<SubjectBarcodes> subjects;
  for (int s = 0; s < 4; ++s) {
    SubjectBarcodes sb{"s" + std::to_string(s), s % 2 ? "a" : "b", {}};
    for (int k = 0; k < 3; ++k) sb.per_slice.push_back(diagrams[s * 3 + k]);
    subjects.push_back(sb);
  }
  const FeatureGrids grids = fit_grids(subjects, 100);
  for (Vectorizer m : {Vectorizer::BettiCurve, Vectorizer::Landscape, Vectorizer::Tropical}) {
    VectorizerConfig cfg;
    cfg.method = m;
    for (CombineMode mode : {CombineMode::Aggregate, CombineMode::Concat}) {
      const auto p = batch::features(subjects, mode, cfg, grids);
      const auto s = batch::features_serial(subjects, mode, cfg, grids);
      REQUIRE(p.size() == s.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].values == s[i].values);
        CHECK(p[i].labels == s[i].labels);
      }
    }
  }
}

TEST_CASE("errors inside a parallel batch propagate") {
  std::vector<SubjectBarcodes> subjects{{"a", "x", {Diagram{}}}, {"b", "y", {}}};
  const FeatureGrids grids;
  CHECK_THROWS(batch::features(subjects, CombineMode::Concat, {}, grids));
  CHECK(batch::max_threads() >= 1);
}
