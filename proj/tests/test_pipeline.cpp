#include <doctest.h>

#include <random>
#include <sstream>

#include "phfeat/error.hpp"
#include "phfeat/metrics.hpp"
#include "phfeat/pipeline.hpp"

using namespace phfeat;

namespace {

Barcode random_barcode(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(0, 10);
  Barcode b(dim);
  const int n = static_cast<int>(rng() % 6);
  for (int i = 0; i < n; ++i) {
    const double p = u(rng);
    b.push_back(finite_bar(p, p + u(rng) / 2));
  }
  return b;
}

SubjectBarcodes random_subject(std::mt19937_64& rng, std::size_t slices, std::string id = "s") {
  SubjectBarcodes s{std::move(id), "a", {}};
  for (std::size_t k = 0; k < slices; ++k) s.per_slice.push_back({random_barcode(rng, 0), random_barcode(rng, 1)});
  return s;
}

const Vectorizer kAll[] = {Vectorizer::BettiCurve, Vectorizer::PersistentStats, Vectorizer::EntropySummary,
                           Vectorizer::Landscape, Vectorizer::Tropical};

}  // namespace

TEST_CASE("aggregate and concat coincide on a single slice") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const SubjectBarcodes s = random_subject(rng, 1);
    const std::vector<SubjectBarcodes> one{s};
    const FeatureGrids grids = fit_grids(one, 25);
    for (Vectorizer m : kAll) {
      VectorizerConfig cfg;
      cfg.method = m;
      cfg.gamma = 25;
      const FeatureVector a = features_aggregate(s, cfg, grids);
      const FeatureVector c = features_concat(s, cfg, grids);
      CHECK(a.values == c.values);
      CHECK(a.labels == c.labels);
    }
  }
}

TEST_CASE("betti aggregate equals the block sum of concat") {
  std::mt19937_64 rng(2);
  VectorizerConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t slices = 1 + rng() % 6;
    const SubjectBarcodes s = random_subject(rng, slices);
    const std::vector<SubjectBarcodes> one{s};
    const FeatureGrids grids = fit_grids(one, cfg.gamma);
    const FeatureVector a = features_aggregate(s, cfg, grids);
    const FeatureVector c = features_concat(s, cfg, grids);
    REQUIRE(a.size() == 200);
    REQUIRE(c.size() == 200 * slices);
    for (int dim = 0; dim < 2; ++dim) {
      for (int j = 0; j < 100; ++j) {
        double sum = 0;
        for (std::size_t k = 0; k < slices; ++k) sum += c.values[dim * slices * 100 + k * 100 + j];
        CHECK(a.values[dim * 100 + j] == sum);
      }
    }
  }
}

TEST_CASE("feature shapes and labels") {
  std::mt19937_64 rng(3);
  const SubjectBarcodes s = random_subject(rng, 15);
  const std::vector<SubjectBarcodes> one{s};
  const FeatureGrids grids = fit_grids(one, 100);
  VectorizerConfig cfg;
  CHECK(features_concat(s, cfg, grids).size() == 3000);
  CHECK(features_aggregate(s, cfg, grids).size() == 200);
  const FeatureVector c = features_concat(s, cfg, grids);
  CHECK(c.labels[0] == "d0_bc_000");
  CHECK(c.labels[1499] == "d0_bc_1499");
  CHECK(c.labels[1500] == "d1_bc_000");

  cfg.method = Vectorizer::Tropical;
  const SubjectBarcodes sixteen = random_subject(rng, 16);
  CHECK(features_concat(sixteen, cfg, grids).size() == 224);
}

TEST_CASE("concat order follows slice order") {
  std::mt19937_64 rng(4);
  SubjectBarcodes s = random_subject(rng, 3);
  s.per_slice[0].dim0 = Barcode(0, {finite_bar(0, 5)});
  const std::vector<SubjectBarcodes> one{s};
  VectorizerConfig cfg;
  cfg.method = Vectorizer::Tropical;
  const FeatureGrids grids = fit_grids(one, 10);
  const FeatureVector before = features_concat(s, cfg, grids);
  std::swap(s.per_slice[0], s.per_slice[2]);
  const FeatureVector after = features_concat(s, cfg, grids);
  for (int i = 0; i < 7; ++i) {
    CHECK(after.values[14 + i] == before.values[i]);
    CHECK(after.values[i] == before.values[14 + i]);
  }
}

TEST_CASE("mismatched slice counts are a shape error") {
  std::mt19937_64 rng(5);
  const std::vector<SubjectBarcodes> subjects{random_subject(rng, 2, "a"), random_subject(rng, 3, "b")};
  CHECK_THROWS_AS(check_uniform_slices(subjects), ShapeError);
  CHECK_THROWS_AS(features_concat(SubjectBarcodes{"x", "y", {}}, {}, FeatureGrids{}), ShapeError);
}

TEST_CASE("grids span the global bounds") {
  SubjectBarcodes a{"a", "x", {{Barcode(0, {finite_bar(-2, 1)}), Barcode(1)}}};
  SubjectBarcodes b{"b", "y", {{Barcode(0, {finite_bar(0, 7)}), Barcode(1, {finite_bar(3, 4)})}}};
  const std::vector<SubjectBarcodes> both{a, b};
  const FeatureGrids g = fit_grids(both, 10);
  CHECK(g.dim0.range() == Range{-2, 7});
  CHECK(g.dim1.range() == Range{3, 4});
  const std::vector<SubjectBarcodes> only_a{a};
  CHECK(fit_grids(only_a, 10).dim1.range() == Range{0, 1});
}

TEST_CASE("stratified split") {
  std::vector<std::string> labels;
  for (int i = 0; i < 10; ++i) labels.push_back("neg");
  for (int i = 0; i < 10; ++i) labels.push_back("pos");
  const Split s = stratified_split(labels, 0.2, 42);
  CHECK(s.test.size() == 4);
  CHECK(s.train.size() == 16);
  int pos_test = 0;
  for (std::size_t i : s.test) pos_test += labels[i] == "pos";
  CHECK(pos_test == 2);
  const Split again = stratified_split(labels, 0.2, 42);
  CHECK(again.test == s.test);
  CHECK(again.train == s.train);

  std::vector<std::string> hundred;
  for (int i = 0; i < 100; ++i) hundred.push_back(i % 2 ? "a" : "b");
  CHECK(stratified_split(hundred, 0.2, 1).test != stratified_split(hundred, 0.2, 2).test);

  std::vector<std::string> lonely{"a", "a", "b"};
  CHECK_THROWS_AS(stratified_split(lonely, 0.2, 0), DataError);
  CHECK_THROWS_AS(stratified_split(labels, 1.0, 0), ParameterError);
}

TEST_CASE("seeded shuffle is a permutation") {
  std::vector<std::size_t> v(50);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  std::vector<std::size_t> w = v;
  seeded_shuffle(w, 9);
  CHECK(w != v);
  std::sort(w.begin(), w.end());
  CHECK(w == v);
}

TEST_CASE("z-score") {
  const ZScore z = zscore_fit({{0, 5}, {2, 5}});
  const auto t = zscore_apply({{0, 5}, {2, 5}}, z);
  CHECK(t[0] == std::vector<double>{-1, 0});
  CHECK(t[1] == std::vector<double>{1, 0});
  // Test rows use the training parameters.
  CHECK(zscore_apply({{4, 6}}, z)[0] == std::vector<double>{3, 1});
  CHECK(zscore_fit({{0.1}, {0.1}, {0.1}}).stds[0] == 1.0);
  CHECK(zscore_apply({{0.1}, {0.1}, {0.1}}, zscore_fit({{0.1}, {0.1}, {0.1}}))[2][0] == 0.0);
  CHECK_THROWS_AS(zscore_apply({{1, 2, 3}}, z), ShapeError);
}

TEST_CASE("z-score standardizes random training columns") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(3, 7);
  std::vector<std::vector<double>> rows(40, std::vector<double>(6));
  for (auto& r : rows)
    for (double& v : r) v = n(rng);
  const auto t = zscore_apply(rows, zscore_fit(rows));
  for (std::size_t c = 0; c < 6; ++c) {
    double m = 0, s = 0;
    for (const auto& r : t) m += r[c];
    m /= 40;
    for (const auto& r : t) s += (r[c] - m) * (r[c] - m);
    CHECK(std::abs(m) < 1e-12);
    CHECK(std::abs(std::sqrt(s / 40) - 1) < 1e-12);
  }
}

TEST_CASE("feature CSV round trip") {
  FeatureTable t;
  t.ids = {"a", "b"};
  t.labels = {"x", "y"};
  t.columns = {"d0_bc_000", "d1_bc_000"};
  t.rows = {{0.1, 1.0 / 3.0}, {-2.5e-300, 7}};
  std::stringstream ss;
  write_feature_csv(ss, t);
  CHECK(ss.str().rfind("id,label,d0_bc_000,d1_bc_000\n", 0) == 0);
  const FeatureTable back = read_feature_csv(ss);
  CHECK(back.rows == t.rows);
  CHECK(back.columns == t.columns);
  std::stringstream bad("id,label,f\na,x,1\nb,y\n");
  CHECK_THROWS_AS(read_feature_csv(bad), ParseError);
}

TEST_CASE("metrics") {
  const std::vector<std::string> truth{"1", "1", "0", "0"};
  const std::vector<double> scores{0.9, 0.4, 0.6, 0.1};
  std::vector<std::string> pred;
  for (double s : scores) pred.push_back(s >= 0.5 ? "1" : "0");
  const MetricsReport m = metrics(scores, pred, truth);
  CHECK(m.accuracy == 0.5);
  CHECK(m.auc == 0.75);
  CHECK(m.precision == 0.5);
  CHECK(m.recall == 0.5);
  CHECK(m.f1 == 0.5);

  const MetricsReport perfect = metrics(std::vector<double>{1, 1, 0, 0}, truth, truth);
  CHECK(perfect.accuracy == 1);
  CHECK(perfect.auc == 1);
  CHECK(perfect.recall == 1);
  CHECK(perfect.precision == 1);
  CHECK(perfect.f1 == 1);

  CHECK(metrics(std::vector<double>(4, 0.3), std::vector<std::string>(4, "0"), truth).auc == 0.5);
  CHECK(metrics(std::vector<double>(4, 0.3), std::vector<std::string>(4, "0"), truth).precision == 0.0);
  const std::vector<std::string> single{"1", "1"};
  CHECK_THROWS_AS(metrics(std::vector<double>{0.2, 0.3}, single, single), DataError);
}

TEST_CASE("AUC matches pair enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 20);
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    for (int i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 5);  // plenty of ties
      pos[i] = i < 2 ? i == 0 : (rng() % 2);
    }
    double credit = 0, pairs = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pos[i] && !pos[j]) {
          pairs += 1;
          credit += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
        }
    CHECK(roc_auc(s, pos) == doctest::Approx(credit / pairs).epsilon(1e-14));
  }
}
