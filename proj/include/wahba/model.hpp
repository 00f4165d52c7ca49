// Loss, residuals, analytic gradient and analytic Hessian of the weighted
// vector-alignment objective in quaternion coordinates.
//
// Per pair i with unit vectors (b_i, r_i) and weight a_i, the scalar loss is
//
//   F_i(q) = ||b_i - C(q) r_i||^2 = 1 + ||q||^4 - 2 A_i(q),
//   A_i(q) = b_i^T C(q) r_i,
//
// so the total loss F = sum_i a_i F_i is a quartic polynomial in q. A_i is a
// quadratic form whose (constant) Hessian H_A has spectrum {2, 2, -2, -2},
// which gives the exact Hessian
//
//   H_{F_i}(q) = 4 ||q||^2 I + 8 q q^T - 2 H_A.
#pragma once

#include "wahba/observations.hpp"
#include "wahba/quaternion.hpp"
#include "wahba/sym4.hpp"
#include "wahba/types.hpp"

namespace wahba {

/// Unweighted error vector b - C(q) r.
template <typename Scalar>
Vec3<Scalar> residual(const ObservationPair<Scalar>& pair, const Vec4<Scalar>& q) {
  return pair.body - dcm_from_quat(q) * pair.reference;
}

/// Stacked weighted residuals sqrt(a_i) (b_i - C(q) r_i); its squared norm is
/// loss_total.
template <typename Scalar>
VecX<Scalar> residual_stack(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  using std::sqrt;
  VecX<Scalar> e(3 * set.size());
  const Mat3<Scalar> c = dcm_from_quat(q);
  for (int i = 0; i < set.size(); ++i) {
    e.template segment<3>(3 * i) = sqrt(set[i].weight) * (set[i].body - c * set[i].reference);
  }
  return e;
}

/// Single-pair loss via the simplified quartic form 1 + ||q||^4 - 2 A.
template <typename Scalar>
Scalar loss_single(const ObservationPair<Scalar>& pair, const Vec4<Scalar>& q) {
  const Scalar n2 = q.squaredNorm();
  const Scalar a = pair.body.dot(dcm_from_quat(q) * pair.reference);
  return Scalar(1) + n2 * n2 - Scalar(2) * a;
}

template <typename Scalar>
Scalar loss_total(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  Scalar f = Scalar(0);
  for (const auto& p : set) f += p.weight * loss_single(p, q);
  return f;
}

/// Jacobian of the stacked residual: row block i is
/// -sqrt(a_i) [dC/dq0 r_i | dC/dq1 r_i | dC/dq2 r_i | dC/dq3 r_i].
template <typename Scalar>
MatX4<Scalar> jacobian(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  using std::sqrt;
  MatX4<Scalar> j(3 * set.size(), 4);
  for (int k = 0; k < 4; ++k) {
    const Mat3<Scalar> dc = dcm_partial(q, k);
    for (int i = 0; i < set.size(); ++i) {
      j.template block<3, 1>(3 * i, k) = -sqrt(set[i].weight) * (dc * set[i].reference);
    }
  }
  return j;
}

/// Exact gradient of loss_total: grad F = 4 ||q||^2 q - 2 sum_i a_i grad A_i
/// with (grad A_i)_k = b_i^T dC/dq_k r_i. Identical to 2 J^T e.
template <typename Scalar>
Vec4<Scalar> gradient(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  Vec4<Scalar> g = Scalar(4) * q.squaredNorm() * q;
  for (int k = 0; k < 4; ++k) {
    const Mat3<Scalar> dc = dcm_partial(q, k);
    for (const auto& p : set) {
      g(k) -= Scalar(2) * p.weight * p.body.dot(dc * p.reference);
    }
  }
  return g;
}

/// Constant Hessian of A(q) = b^T C(q) r, assembled from the sixteen constant
/// second partials of C: (H_A)_jk = b^T d2C/(dq_j dq_k) r. Trace is exactly 0
/// and the spectrum is {2, 2, -2, -2} for unit input vectors.
template <typename Scalar>
SymMat4<Scalar> hessian_A(const ObservationPair<Scalar>& pair) {
  Mat4<Scalar> h;
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      const Scalar v = pair.body.dot(dcm_second_partial<Scalar>(j, k) * pair.reference);
      h(j, k) = v;
      h(k, j) = v;
    }
  }
  return SymMat4<Scalar>::symmetrize(h);
}

/// Alternative H_A entry table in which every entry except (0,0) carries the
/// opposite sign (equivalently 4 (b.r) e0 e0^T - H_A). Its trace is 4 b^T r
/// instead of 0, so it violates the trace identity tr(H) = 24 ||q||^2; kept
/// only as the diagnostic target of `verify --ha-alt`.
template <typename Scalar>
SymMat4<Scalar> hessian_A_alt(const ObservationPair<Scalar>& pair) {
  const Scalar bx = pair.body(0), by = pair.body(1), bz = pair.body(2);
  const Scalar rx = pair.reference(0), ry = pair.reference(1), rz = pair.reference(2);
  Mat4<Scalar> h;
  h(0, 0) = Scalar(2) * (bx * rx + by * ry + bz * rz);
  h(0, 1) = Scalar(2) * (bz * ry - by * rz);
  h(0, 2) = Scalar(2) * (bx * rz - bz * rx);
  h(0, 3) = Scalar(2) * (by * rx - bx * ry);
  h(1, 1) = Scalar(2) * (-bx * rx + by * ry + bz * rz);
  h(1, 2) = Scalar(-2) * (by * rx + bx * ry);
  h(1, 3) = Scalar(-2) * (bz * rx + bx * rz);
  h(2, 2) = Scalar(2) * (bx * rx - by * ry + bz * rz);
  h(2, 3) = Scalar(-2) * (bz * ry + by * rz);
  h(3, 3) = Scalar(2) * (bx * rx + by * ry - bz * rz);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < j; ++k) h(j, k) = h(k, j);
  }
  return SymMat4<Scalar>::symmetrize(h);
}

/// Exact Hessian of loss_single: 4 ||q||^2 I + 8 q q^T - 2 H_A.
template <typename Scalar>
SymMat4<Scalar> hessian_single(const ObservationPair<Scalar>& pair, const Vec4<Scalar>& q) {
  const Mat4<Scalar> m = Scalar(4) * q.squaredNorm() * Mat4<Scalar>::Identity() +
                         Scalar(8) * (q * q.transpose()) -
                         Scalar(2) * hessian_A(pair).matrix();
  return SymMat4<Scalar>::symmetrize(m);
}

/// Exact Hessian of loss_total (weighted sum of single-pair Hessians).
template <typename Scalar>
SymMat4<Scalar> hessian_total(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  Mat4<Scalar> h = Mat4<Scalar>::Zero();
  for (const auto& p : set) h += p.weight * hessian_single(p, q).matrix();
  return SymMat4<Scalar>::symmetrize(h);
}

}  // namespace wahba
