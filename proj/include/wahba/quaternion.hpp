// Quaternion / direction-cosine-matrix kernel.
//
// Quaternions are scalar-first 4-vectors q = (q0, q1, q2, q3) and are NOT
// assumed to be normalized: the DCM used throughout is the homogeneous
// (degree-2) quaternion map
//
//          [ q0^2+q1^2-q2^2-q3^2   2(q1q2+q0q3)         2(q1q3-q0q2)       ]
//   C(q) = [ 2(q1q2-q0q3)          q0^2-q1^2+q2^2-q3^2  2(q2q3+q0q1)       ]
//          [ 2(q1q3+q0q2)          2(q2q3-q0q1)         q0^2-q1^2-q2^2+q3^2]
//
// which satisfies C(q)^T C(q) = ||q||^4 I and C(s q) = s^2 C(q), and reduces
// to the reference->body rotation matrix for unit q. Its first partial
// derivatives are linear in q and its second partials are the sixteen
// constant matrices returned by dcm_second_partial.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "wahba/types.hpp"

namespace wahba {

/// Unit-norm refinement of a quaternion: |norm - 1| <= 1e-12 is checked at
/// construction. Obtain one via normalize().
template <typename Scalar>
class UnitQuaternion {
 public:
  explicit UnitQuaternion(const Vec4<Scalar>& q) : q_(q) {
    using std::abs;
    if (!(abs(q.norm() - Scalar(1)) <= Scalar(1e-12))) {
      throw std::invalid_argument("UnitQuaternion: |norm - 1| exceeds 1e-12");
    }
  }
  const Vec4<Scalar>& vec() const { return q_; }

 private:
  Vec4<Scalar> q_;
};

/// Homogeneous quaternion DCM (see file header for the explicit form).
template <typename Derived>
Mat3<typename Derived::Scalar> dcm_from_quat(const Eigen::MatrixBase<Derived>& q_in) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using S = typename Derived::Scalar;
  const Vec4<S> q = q_in;
  const S q0 = q(0), q1 = q(1), q2 = q(2), q3 = q(3);
  Mat3<S> c;
  c << q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3, S(2) * (q1 * q2 + q0 * q3),
      S(2) * (q1 * q3 - q0 * q2),  //
      S(2) * (q1 * q2 - q0 * q3), q0 * q0 - q1 * q1 + q2 * q2 - q3 * q3,
      S(2) * (q2 * q3 + q0 * q1),  //
      S(2) * (q1 * q3 + q0 * q2), S(2) * (q2 * q3 - q0 * q1),
      q0 * q0 - q1 * q1 - q2 * q2 + q3 * q3;
  return c;
}

/// dC/dq_k, linear in q. Equals 2x the classic skew-augmented patterns, e.g.
/// dC/dq0 = 2 [[q0,q3,-q2],[-q3,q0,q1],[q2,-q1,q0]].
template <typename Derived>
Mat3<typename Derived::Scalar> dcm_partial(const Eigen::MatrixBase<Derived>& q_in, int k) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using S = typename Derived::Scalar;
  const Vec4<S> q = q_in;
  const S q0 = q(0), q1 = q(1), q2 = q(2), q3 = q(3);
  Mat3<S> m;
  switch (k) {
    case 0:
      m << q0, q3, -q2, -q3, q0, q1, q2, -q1, q0;
      break;
    case 1:
      m << q1, q2, q3, q2, -q1, q0, q3, -q0, -q1;
      break;
    case 2:
      m << -q2, q1, -q0, q1, q2, q3, q0, q3, -q2;
      break;
    case 3:
      m << -q3, q0, q1, -q0, -q3, q2, q1, q2, q3;
      break;
    default:
      throw std::out_of_range("dcm_partial: quaternion index must be in 0..3");
  }
  return S(2) * m;
}

/// d2C/(dq_j dq_k): constant, symmetric in (j, k). The four diagonal blocks
/// are +/-2 diagonals and sum to zero.
template <typename Scalar = double>
Mat3<Scalar> dcm_second_partial(int j, int k) {
  if (j < 0 || j > 3 || k < 0 || k > 3) {
    throw std::out_of_range("dcm_second_partial: quaternion indices must be in 0..3");
  }
  if (j > k) std::swap(j, k);
  Mat3<Scalar> m = Mat3<Scalar>::Zero();
  const Scalar two = Scalar(2);
  switch (j * 4 + k) {
    case 0:  // (0,0)
      m.diagonal() << two, two, two;
      break;
    case 1:  // (0,1)
      m(1, 2) = two;
      m(2, 1) = -two;
      break;
    case 2:  // (0,2)
      m(0, 2) = -two;
      m(2, 0) = two;
      break;
    case 3:  // (0,3)
      m(0, 1) = two;
      m(1, 0) = -two;
      break;
    case 5:  // (1,1)
      m.diagonal() << two, -two, -two;
      break;
    case 6:  // (1,2)
      m(0, 1) = two;
      m(1, 0) = two;
      break;
    case 7:  // (1,3)
      m(0, 2) = two;
      m(2, 0) = two;
      break;
    case 10:  // (2,2)
      m.diagonal() << -two, two, -two;
      break;
    case 11:  // (2,3)
      m(1, 2) = two;
      m(2, 1) = two;
      break;
    case 15:  // (3,3)
      m.diagonal() << -two, -two, two;
      break;
  }
  return m;
}

/// q / ||q||. Throws for near-zero norm (<= 1e-12).
template <typename Derived>
UnitQuaternion<typename Derived::Scalar> normalize(const Eigen::MatrixBase<Derived>& q_in) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using S = typename Derived::Scalar;
  const Vec4<S> q = q_in;
  const S n = q.norm();
  if (!(n > S(1e-12))) {
    throw std::invalid_argument("normalize: degenerate quaternion (norm <= 1e-12)");
  }
  return UnitQuaternion<S>(q / n);
}

/// Resolves the q/-q double cover: flips the sign so that the first nonzero
/// component (scanning q0, q1, q2, q3) is positive.
template <typename Derived>
Vec4<typename Derived::Scalar> canonical_sign(const Eigen::MatrixBase<Derived>& q_in) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
  using S = typename Derived::Scalar;
  const Vec4<S> q = q_in;
  for (int i = 0; i < 4; ++i) {
    if (q(i) != S(0)) {
      return q(i) < S(0) ? Vec4<S>(-q) : q;
    }
  }
  throw std::invalid_argument("canonical_sign: zero quaternion");
}

/// Rotation angle in [0, pi] between the attitudes of two unit quaternions,
/// insensitive to the q/-q ambiguity and accurate near zero.
template <typename Scalar>
Scalar rotation_angle(const UnitQuaternion<Scalar>& a, const UnitQuaternion<Scalar>& b) {
  using std::asin;
  using std::min;
  const Scalar d = min((a.vec() - b.vec()).norm(), (a.vec() + b.vec()).norm());
  return Scalar(4) * asin(min(Scalar(1), d / Scalar(2)));
}

}  // namespace wahba
