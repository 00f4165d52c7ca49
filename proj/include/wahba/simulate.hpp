// Deterministic generation of synthetic observation sets and ground-truth
// attitudes, plus the frozen single-pair reference case used by `verify`.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wahba/model.hpp"
#include "wahba/observations.hpp"
#include "wahba/quaternion.hpp"
#include "wahba/spectral.hpp"
#include "wahba/types.hpp"

namespace wahba {

using Rng = std::mt19937_64;

/// splitmix64-style mix of (seed, k): independent deterministic substream
/// seeds for parallel trials.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Uniform direction on the unit 2-sphere (3 standard normals, normalized).
template <typename Scalar>
Vec3<Scalar> random_unit_vector(Rng& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Vec3<Scalar> v;
  do {
    v << normal(rng), normal(rng), normal(rng);
  } while (!(v.norm() > Scalar(1e-6)));
  return v / v.norm();
}

/// Uniform on the 3-sphere (4 standard normals, normalized).
template <typename Scalar>
UnitQuaternion<Scalar> random_unit_quaternion(Rng& rng) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Vec4<Scalar> q;
  do {
    q << normal(rng), normal(rng), normal(rng), normal(rng);
  } while (!(q.norm() > Scalar(1e-6)));
  return normalize(q);
}

template <typename Scalar>
struct SimConfig {
  int n_pairs = 3;
  Scalar noise_sigma = Scalar(0);  // per-axis additive noise before renormalization
  std::vector<Scalar> weights;     // empty = uniform
  std::uint64_t seed = 0;
};

template <typename Scalar>
struct SimMetadata {
  Vec4<Scalar> truth;
  std::vector<Vec3<Scalar>> noise;  // per-pair additive draws
};

/// Draws reference directions uniformly on the sphere and produces
/// body = normalize(C(truth) * reference + noise). Bit-identical output for
/// identical config.
template <typename Scalar>
std::pair<ObservationSet<Scalar>, SimMetadata<Scalar>> generate_set(
    const UnitQuaternion<Scalar>& truth, const SimConfig<Scalar>& config) {
  if (config.n_pairs < 1) {
    throw std::invalid_argument("generate_set: n_pairs must be >= 1");
  }
  if (!config.weights.empty() && static_cast<int>(config.weights.size()) != config.n_pairs) {
    throw std::invalid_argument("generate_set: weight list size must match n_pairs");
  }
  Rng rng(config.seed);
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  const Mat3<Scalar> c = dcm_from_quat(truth.vec());

  SimMetadata<Scalar> meta;
  meta.truth = truth.vec();
  std::vector<ObservationPair<Scalar>> pairs;
  pairs.reserve(static_cast<size_t>(config.n_pairs));
  for (int i = 0; i < config.n_pairs; ++i) {
    const Vec3<Scalar> ref = random_unit_vector<Scalar>(rng);
    Vec3<Scalar> eps;
    eps << normal(rng), normal(rng), normal(rng);
    eps *= config.noise_sigma;
    meta.noise.push_back(eps);
    Vec3<Scalar> body = c * ref + eps;
    const Scalar n = body.norm();
    if (!(n > Scalar(1e-12))) {
      throw std::runtime_error("generate_set: noisy body vector degenerated to zero");
    }
    body /= n;
    const Scalar w = config.weights.empty() ? Scalar(1) / Scalar(config.n_pairs)
                                            : config.weights[static_cast<size_t>(i)];
    pairs.push_back(ObservationPair<Scalar>::make(body, ref, w));
  }
  return {ObservationSet<Scalar>(std::move(pairs)), std::move(meta)};
}

/// Frozen single-pair reference case with three probe quaternions: one with
/// norm < 1 (indefinite Hessian), one unit (positive-semidefinite, rank 3)
/// and one with norm > 1 (positive-definite).
template <typename Scalar = double>
struct ReferenceCase {
  ObservationPair<Scalar> pair;
  Vec4<Scalar> sub_unit_q;    // ||q|| = 0.770268222031943
  Vec4<Scalar> unit_q;        // ||q|| = 1
  Vec4<Scalar> super_unit_q;  // ||q|| = 1.777657443309303
};

template <typename Scalar = double>
ReferenceCase<Scalar> reference_case() {
  ReferenceCase<Scalar> rc{
      ObservationPair<Scalar>::make(
          Vec3<Scalar>(Scalar(-0.712824827533344), Scalar(-0.225772381096068),
                       Scalar(0.664008732763561)),
          Vec3<Scalar>(Scalar(-0.037453665434217), Scalar(0.500499809534146),
                       Scalar(-0.864926102971707)),
          Scalar(1)),
      Vec4<Scalar>(Scalar(0.420683700201250), Scalar(0.400737998146962),
                   Scalar(0.095142157864169), Scalar(0.496684391636530)),
      Vec4<Scalar>(Scalar(0.118759061535262), Scalar(-0.346543560044311),
                   Scalar(-0.817997262250335), Scalar(0.443491065576337)),
      Vec4<Scalar>::Zero()};

  // The norm>1 probe is pinned by its reference spectrum rather than stored
  // components: the two uncoupled eigenvalues of H fix 4||q||^2 -/+ 4, and
  // the product of the coupled pair fixes how ||q||^2 splits across the two
  // H_A eigenspaces. Any basis of those eigenspaces gives the same spectrum;
  // the deterministic eig_sym4 basis is used.
  const Scalar lam_top = Scalar(39.127609299877825);
  const Scalar lam_mid = Scalar(11.433446472169676);
  const Scalar lam_min = Scalar(8.640263943011886);  // = 4||q||^2 - 4
  const Scalar n2 = (lam_min + Scalar(4)) / Scalar(4);
  const Scalar beta = lam_min + Scalar(8);  // = 4||q||^2 + 4
  const Scalar u2 = (lam_top * lam_mid - lam_min * beta - Scalar(8) * lam_min * n2) / Scalar(64);
  const Scalar v2 = n2 - u2;
  const Spectrum<Scalar> s = eig_sym4(hessian_A(rc.pair));
  using std::sqrt;
  rc.super_unit_q = sqrt(u2) * s.eigenvectors.col(0) + sqrt(v2) * s.eigenvectors.col(2);
  return rc;
}

}  // namespace wahba
