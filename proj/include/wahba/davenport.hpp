// Davenport q-method: the closed-form global solver, used as ground truth
// for the iterative optimizers.
//
// K is assembled vector-first as printed in the classic form
//
//   K = [ B + B^T - tr(B) I   z ]      B = sum_i a_i b_i r_i^T,
//       [ z^T             tr(B) ]      z = sum_i a_i b_i x r_i,
//
// and converted to scalar-first at this module's boundary so every public
// quaternion shares one ordering. For unit q, loss_total = 2 (1 - q^T K~ q)
// with K~ the scalar-first reordering, so the maximum eigenpair of K is the
// global minimizer over unit quaternions; for a single pair H_A = 2 K~.
#pragma once

#include "wahba/observations.hpp"
#include "wahba/quaternion.hpp"
#include "wahba/spectral.hpp"
#include "wahba/types.hpp"

namespace wahba {

template <typename Scalar>
struct DavenportMatrix {
  Mat4<Scalar> K;  // vector-first ordering (x, y, z, scalar)
  Mat3<Scalar> B;
  Vec3<Scalar> z;
};

template <typename Scalar>
DavenportMatrix<Scalar> build_K(const ObservationSet<Scalar>& set) {
  DavenportMatrix<Scalar> d;
  d.B = Mat3<Scalar>::Zero();
  d.z = Vec3<Scalar>::Zero();
  for (const auto& p : set) {
    d.B += p.weight * (p.body * p.reference.transpose());
    d.z += p.weight * p.body.cross(p.reference);
  }
  const Scalar tr = d.B.trace();
  d.K.template topLeftCorner<3, 3>() = d.B + d.B.transpose() - tr * Mat3<Scalar>::Identity();
  d.K.template topRightCorner<3, 1>() = d.z;
  d.K.template bottomLeftCorner<1, 3>() = d.z.transpose();
  d.K(3, 3) = tr;
  return d;
}

/// Reorders a vector-first 4x4 (x, y, z, scalar) into scalar-first ordering.
template <typename Scalar>
Mat4<Scalar> scalar_first(const Mat4<Scalar>& k_vector_first) {
  Mat4<Scalar> out;
  out(0, 0) = k_vector_first(3, 3);
  for (int i = 0; i < 3; ++i) {
    out(0, i + 1) = k_vector_first(3, i);
    out(i + 1, 0) = k_vector_first(i, 3);
    for (int j = 0; j < 3; ++j) out(i + 1, j + 1) = k_vector_first(i, j);
  }
  return out;
}

template <typename Scalar>
struct DavenportSolution {
  UnitQuaternion<Scalar> quaternion;  // scalar-first, canonical sign
  Scalar lambda_max;                  // in [-1, 1]
  bool degenerate;                    // top two eigenvalues within 1e-9 (unobservable family)
};

template <typename Scalar>
DavenportSolution<Scalar> solve_davenport(const ObservationSet<Scalar>& set) {
  const Mat4<Scalar> kt = scalar_first(build_K(set).K);
  const Spectrum<Scalar> s = eig_sym4(SymMat4<Scalar>::symmetrize(kt));
  return DavenportSolution<Scalar>{
      normalize(canonical_sign(s.eigenvectors.col(0))),
      s.eigenvalues(0),
      s.eigenvalues(0) - s.eigenvalues(1) < Scalar(1e-9),
  };
}

}  // namespace wahba
