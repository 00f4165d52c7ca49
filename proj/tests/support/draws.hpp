// Shared random-draw helpers for tests. All draws are seeded by the caller.
#pragma once

#include <random>
#include <vector>

#include "wahba/observations.hpp"
#include "wahba/simulate.hpp"
#include "wahba/types.hpp"

namespace testsupport {

/// Quaternion with uniform direction and norm uniform in [lo, hi].
inline wahba::Vec4d draw_quat(wahba::Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> norm_dist(lo, hi);
  const double n = norm_dist(rng);
  return n * wahba::random_unit_quaternion<double>(rng).vec();
}

/// A pair with independent uniform unit vectors (no common attitude).
inline wahba::ObservationPair<double> draw_pair(wahba::Rng& rng, double weight = 1.0) {
  return wahba::ObservationPair<double>::make(wahba::random_unit_vector<double>(rng),
                                              wahba::random_unit_vector<double>(rng), weight);
}

/// Set of n independent pairs with random positive weights (normalized by the
/// set constructor).
inline wahba::ObservationSet<double> draw_set(wahba::Rng& rng, int n) {
  std::uniform_real_distribution<double> wdist(0.1, 1.0);
  std::vector<wahba::ObservationPair<double>> pairs;
  for (int i = 0; i < n; ++i) pairs.push_back(draw_pair(rng, wdist(rng)));
  return wahba::ObservationSet<double>(std::move(pairs));
}

/// Attitude-consistent set: body = C(truth) * reference plus optional noise.
inline wahba::ObservationSet<double> draw_attitude_set(wahba::Rng& rng, int n, double sigma,
                                                       wahba::Vec4d* truth_out = nullptr) {
  const auto truth = wahba::random_unit_quaternion<double>(rng);
  wahba::SimConfig<double> cfg;
  cfg.n_pairs = n;
  cfg.noise_sigma = sigma;
  cfg.seed = rng();
  if (truth_out != nullptr) *truth_out = truth.vec();
  return wahba::generate_set(truth, cfg).first;
}

}  // namespace testsupport
