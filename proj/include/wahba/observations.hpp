// Weighted vector-observation pairs: a unit vector seen in the body frame,
// the matching unit vector in the reference frame, and a positive weight.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wahba/types.hpp"

namespace wahba {

template <typename Scalar>
struct ObservationPair {
  Vec3<Scalar> body;
  Vec3<Scalar> reference;
  Scalar weight;

  /// Validating constructor: vectors within 1e-6 of unit norm are accepted
  /// and renormalized (skipped when already within 1e-12, so ingestion is
  /// idempotent); anything further off is rejected rather than silently
  /// corrected. Weights must be positive and finite.
  static ObservationPair make(const Vec3<Scalar>& body, const Vec3<Scalar>& reference,
                              Scalar weight) {
    ObservationPair p{renormalized(body, "body"), renormalized(reference, "reference"), weight};
    if (!(weight > Scalar(0)) || !std::isfinite(static_cast<double>(weight))) {
      throw std::invalid_argument("ObservationPair: weight must be positive and finite");
    }
    return p;
  }

 private:
  static Vec3<Scalar> renormalized(const Vec3<Scalar>& v, const char* name) {
    using std::abs;
    if (!v.allFinite()) {
      throw std::invalid_argument(std::string("ObservationPair: non-finite ") + name + " vector");
    }
    const Scalar n = v.norm();
    if (abs(n - Scalar(1)) > Scalar(1e-6)) {
      throw std::invalid_argument(std::string("ObservationPair: ") + name +
                                  " vector norm deviates from 1 by more than 1e-6");
    }
    if (abs(n - Scalar(1)) <= Scalar(1e-12)) return v;
    return v / n;
  }
};

/// Non-empty, ordered collection of pairs whose weights sum to 1. Weights are
/// rescaled at construction unless the sum is already within 1e-12 of 1.
template <typename Scalar>
class ObservationSet {
 public:
  explicit ObservationSet(std::vector<ObservationPair<Scalar>> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) {
      throw std::invalid_argument("ObservationSet: at least one pair is required");
    }
    Scalar sum = Scalar(0);
    for (auto& p : pairs_) {
      p = ObservationPair<Scalar>::make(p.body, p.reference, p.weight);
      sum += p.weight;
    }
    if (!std::isfinite(static_cast<double>(sum))) {
      throw std::invalid_argument("ObservationSet: weight sum overflows");
    }
    using std::abs;
    if (abs(sum - Scalar(1)) > Scalar(1e-12)) {
      for (auto& p : pairs_) p.weight /= sum;
    }
  }

  int size() const { return static_cast<int>(pairs_.size()); }
  const ObservationPair<Scalar>& operator[](int i) const { return pairs_[static_cast<size_t>(i)]; }
  const std::vector<ObservationPair<Scalar>>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::vector<ObservationPair<Scalar>> pairs_;
};

}  // namespace wahba
