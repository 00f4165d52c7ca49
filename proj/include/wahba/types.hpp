// Dense type aliases shared across the library. Everything is templated on
// the scalar type; double is the working precision of the CLI and tests.
#pragma once

#include <Eigen/Dense>

namespace wahba {

template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar> using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using MatX4 = Eigen::Matrix<Scalar, Eigen::Dynamic, 4>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat3d = Mat3<double>;
using Mat4d = Mat4<double>;

}  // namespace wahba
