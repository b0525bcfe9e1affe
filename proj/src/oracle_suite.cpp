#include "phfeat/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "phfeat/learn.hpp"
#include "phfeat/oracle.hpp"

namespace phfeat::oracle {

namespace {

class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

using BarKey = std::tuple<double, double, bool>;

std::vector<BarKey> sorted_bars(const Barcode& b) {
  std::vector<BarKey> out;
  for (const Bar& bar : b.bars()) out.emplace_back(bar.birth, bar.death, bar.essential);
  std::sort(out.begin(), out.end());
  return out;
}

void record(TrialOutcome& out, std::uint64_t trial_seed, const std::string& what) {
  if (out.mismatches++ == 0) {
    out.first_failing_seed = trial_seed;
    out.detail = what;
  }
}

}  // namespace

GrayImage random_small_image(std::uint64_t seed) {
  TrialRng rng(seed);
  const int w = 1 + rng.below(8);
  const int h = 1 + rng.below(8);
  std::vector<double> px(static_cast<std::size_t>(w) * h);
  for (double& v : px) v = rng.below(8);
  return GrayImage(w, h, std::move(px), "trial_" + std::to_string(seed));
}

PointCloud random_small_cloud(std::uint64_t seed) {
  TrialRng rng(seed);
  PointCloud cloud;
  cloud.source_id = "trial_" + std::to_string(seed);
  const int n = 1 + rng.below(8);
  for (int i = 0; i < n; ++i) cloud.points.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
  return cloud;
}

TrialOutcome check_cubical(int trials, std::uint64_t seed, detail::Fault fault) {
  TrialOutcome out;
  for (int k = 0; k < trials; ++k, ++out.trials) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    const GrayImage img = random_small_image(s);
    const Diagram d = detail::cubical_persistence(img, fault);
    for (int t = 0; t <= 7; ++t) {
      const Betti want = betti_cubical(img, t);
      const Betti got{alive_count(d.dim0, t), alive_count(d.dim1, t)};
      if (got != want) {
        std::ostringstream msg;
        msg << "cubical seed " << s << " (" << img.width() << "x" << img.height() << ") t=" << t << ": engine ("
            << got.b0 << "," << got.b1 << ") oracle (" << want.b0 << "," << want.b1 << ")";
        record(out, s, msg.str());
        break;
      }
    }
  }
  return out;
}

TrialOutcome check_rips(int trials, std::uint64_t seed, detail::Fault fault) {
  TrialOutcome out;
  for (int k = 0; k < trials; ++k, ++out.trials) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    const PointCloud cloud = random_small_cloud(s);
    // Odd trials cut the filtration below the diameter so essential classes occur.
    std::optional<double> scale;
    if (k % 2 == 1) scale = max_pairwise_distance(cloud) * TrialRng(s ^ 0x9e3779b97f4a7c15ull).uniform(0.3, 0.9);
    const Diagram d = detail::rips_persistence(cloud, scale, fault);
    std::ostringstream msg;
    msg << "rips seed " << s << " (" << cloud.points.size() << " points";
    if (scale) msg << ", max_scale " << *scale;
    msg << "): ";

    if (cloud.points.size() >= 2 && !scale) {
      std::vector<double> want = rips_h0_deaths(cloud);
      want.erase(std::remove(want.begin(), want.end(), 0.0), want.end());
      std::vector<double> got;
      for (const Bar& b : d.dim0.bars())
        if (!b.essential) got.push_back(b.death);
      std::sort(got.begin(), got.end());
      bool same = got.size() == want.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) same = std::abs(got[i] - want[i]) <= 1e-9;
      if (!same) {
        record(out, s, msg.str() + "H0 deaths differ from Kruskal");
        continue;
      }
    }
    const Diagram full = rips_full_reduction(cloud, scale);
    if (sorted_bars(d.dim1) != sorted_bars(full.dim1)) {
      record(out, s, msg.str() + "H1 pairs differ from full reduction");
      continue;
    }
    if (sorted_bars(d.dim0) != sorted_bars(full.dim0)) record(out, s, msg.str() + "H0 pairs differ from full reduction");
  }
  return out;
}

TrialOutcome check_gradients(int trials, std::uint64_t seed) {
  TrialOutcome out;
  constexpr double h = 1e-5;
  for (int k = 0; k < trials; ++k, ++out.trials) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    TrialRng rng(s);
    const int n = 5 + rng.below(16);
    const int d = 1 + rng.below(6);
    Matrix X(n, d);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(-2, 2);
      y[i] = rng.below(2) ? 1.0 : -1.0;
    }
    Vector w(d);
    for (int j = 0; j < d; ++j) w[j] = rng.uniform(-1, 1);
    const double b = rng.uniform(-1, 1);
    const double l2 = rng.uniform(0, 0.5);

    const LossGradient g = logistic_loss(X, y, w, b, l2);
    Vector analytic(d + 1), numeric(d + 1);
    analytic << g.grad_w, g.grad_b;
    for (int j = 0; j < d; ++j) {
      Vector wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      numeric[j] = (logistic_loss(X, y, wp, b, l2).loss - logistic_loss(X, y, wm, b, l2).loss) / (2 * h);
    }
    numeric[d] = (logistic_loss(X, y, w, b + h, l2).loss - logistic_loss(X, y, w, b - h, l2).loss) / (2 * h);
    const double rel = (analytic - numeric).norm() / std::max({analytic.norm(), numeric.norm(), 1e-12});
    if (!(rel < 1e-5)) {
      std::ostringstream msg;
      msg << "gradient seed " << s << ": relative error " << rel;
      record(out, s, msg.str());
    }
  }
  return out;
}

}  // namespace phfeat::oracle
