// Symmetric 4x4 eigen-decomposition (cyclic Jacobi) and convexity
// classification of alignment-loss Hessians, including the analytic
// eigenvalue bounds 4||q||^2 - 4 <= lambda <= 12||q||^2 + 4.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "wahba/model.hpp"
#include "wahba/sym4.hpp"
#include "wahba/types.hpp"

namespace wahba {

/// Eigen-decomposition of a symmetric 4x4: eigenvalues sorted descending,
/// orthonormal eigenvectors in matching columns.
template <typename Scalar>
struct Spectrum {
  Vec4<Scalar> eigenvalues;
  Mat4<Scalar> eigenvectors;
};

enum class Classification {
  PositiveDefinite,
  PositiveSemidefinite,
  Indefinite,
  NegativeSemidefinite,
  NegativeDefinite,
};

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::PositiveDefinite: return "positive-definite";
    case Classification::PositiveSemidefinite: return "positive-semidefinite";
    case Classification::Indefinite: return "indefinite";
    case Classification::NegativeSemidefinite: return "negative-semidefinite";
    case Classification::NegativeDefinite: return "negative-definite";
  }
  return "unknown";
}

/// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
/// drops below 1e-13 * ||M||_F; hard cap of 60 sweeps (quadratic convergence
/// makes 4-6 typical). Deterministic for fixed input.
template <typename Scalar>
Spectrum<Scalar> eig_sym4(const SymMat4<Scalar>& m) {
  using std::abs;
  using std::sqrt;
  Mat4<Scalar> a = m.matrix();
  Mat4<Scalar> v = Mat4<Scalar>::Identity();
  const Scalar threshold = Scalar(1e-13) * a.norm();

  for (int sweep = 0; sweep < 60; ++sweep) {
    Scalar off = Scalar(0);
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) off += Scalar(2) * a(p, q) * a(p, q);
    }
    if (sqrt(off) <= threshold) break;

    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        Scalar t;
        if (abs(theta) > Scalar(1e154)) {
          t = Scalar(1) / (Scalar(2) * theta);  // avoid theta^2 overflow
        } else {
          t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
              (abs(theta) + sqrt(Scalar(1) + theta * theta));
        }
        const Scalar c = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;

        const Scalar app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = Scalar(0);
        for (int r = 0; r < 4; ++r) {
          if (r == p || r == q) continue;
          const Scalar arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = c * arp - s * arq;
          a(r, q) = a(q, r) = s * arp + c * arq;
        }
        for (int r = 0; r < 4; ++r) {
          const Scalar vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a(i, i) > a(j, j); });
  Spectrum<Scalar> s;
  for (int i = 0; i < 4; ++i) {
    s.eigenvalues(i) = a(order[i], order[i]);
    s.eigenvectors.col(i) = v.col(order[i]);
  }
  return s;
}

/// Classification threshold tau = scale_tol * max(1, eigenvalue span).
template <typename Scalar>
Scalar classification_threshold(const Spectrum<Scalar>& s, Scalar scale_tol = Scalar(1e-9)) {
  if (!(scale_tol > Scalar(0))) {
    throw std::invalid_argument("classification_threshold: scale_tol must be positive");
  }
  return scale_tol * std::max(Scalar(1), s.eigenvalues(0) - s.eigenvalues(3));
}

template <typename Scalar>
Classification classify(const Spectrum<Scalar>& s, Scalar scale_tol = Scalar(1e-9)) {
  const Scalar tau = classification_threshold(s, scale_tol);
  const Scalar lo = s.eigenvalues(3);
  const Scalar hi = s.eigenvalues(0);
  if (lo > tau) return Classification::PositiveDefinite;
  if (hi < -tau) return Classification::NegativeDefinite;
  if (lo >= -tau) return Classification::PositiveSemidefinite;
  if (hi <= tau) return Classification::NegativeSemidefinite;
  return Classification::Indefinite;
}

template <typename Scalar>
struct BoundCheck {
  Scalar lower;
  Scalar upper;
  bool satisfied;
};

/// Analytic eigenvalue interval for an alignment-loss Hessian at q:
/// [4||q||^2 - 4, 12||q||^2 + 4]. The same interval holds for any number of
/// pairs since the total Hessian is a convex combination of single-pair ones.
template <typename Scalar>
BoundCheck<Scalar> bound_check(const Vec4<Scalar>& q, const Spectrum<Scalar>& s, int n_pairs) {
  (void)n_pairs;
  const Scalar n2 = q.squaredNorm();
  BoundCheck<Scalar> b;
  b.lower = Scalar(4) * n2 - Scalar(4);
  b.upper = Scalar(12) * n2 + Scalar(4);
  b.satisfied = s.eigenvalues(3) >= b.lower - Scalar(1e-9) &&
                s.eigenvalues(0) <= b.upper + Scalar(1e-9);
  return b;
}

template <typename Scalar>
struct ConvexityReport {
  Classification classification;
  Scalar min_eig;
  Scalar max_eig;
  Scalar lower_bound;
  Scalar upper_bound;
  bool bound_satisfied;
  int rank_estimate;  // eigenvalues with |lambda| > tau; diagnostic only
};

/// hessian_total -> eig_sym4 -> classify -> bound_check, in one report.
template <typename Scalar>
ConvexityReport<Scalar> analyze(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q,
                                Scalar scale_tol = Scalar(1e-9)) {
  const Spectrum<Scalar> s = eig_sym4(hessian_total(set, q));
  const Scalar tau = classification_threshold(s, scale_tol);
  const BoundCheck<Scalar> b = bound_check(q, s, set.size());
  ConvexityReport<Scalar> r;
  r.classification = classify(s, scale_tol);
  r.min_eig = s.eigenvalues(3);
  r.max_eig = s.eigenvalues(0);
  r.lower_bound = b.lower;
  r.upper_bound = b.upper;
  r.bound_satisfied = b.satisfied;
  r.rank_estimate = 0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(s.eigenvalues(i)) > tau) ++r.rank_estimate;
  }
  return r;
}

}  // namespace wahba
