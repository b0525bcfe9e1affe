#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "phfeat/image.hpp"
#include "phfeat/persistence.hpp"
#include "phfeat/ulbp.hpp"

// Randomized equivalence trials between the engines and the brute-force
// oracles. Trial i draws its instance from seed + i, so a reported failing
// seed reproduces the instance on its own (`--trials 1 --seed <s>`).
namespace phfeat::oracle {

struct TrialOutcome {
  int trials = 0;
  int mismatches = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string detail;

  bool ok() const { return mismatches == 0; }
};

// Integer image, sides 1..8, intensities 0..7.
GrayImage random_small_image(std::uint64_t seed);
// 1..8 points in [0, 10]^2.
PointCloud random_small_cloud(std::uint64_t seed);

TrialOutcome check_cubical(int trials, std::uint64_t seed, detail::Fault fault = detail::Fault::None);
TrialOutcome check_rips(int trials, std::uint64_t seed, detail::Fault fault = detail::Fault::None);

// Analytic logistic-loss gradient against central differences (h = 1e-5),
// relative error bound 1e-5.
TrialOutcome check_gradients(int trials, std::uint64_t seed);

}  // namespace phfeat::oracle
