// Symmetric 4x4 matrix with symmetry exact by construction.
#pragma once

#include <cmath>
#include <stdexcept>

#include "wahba/types.hpp"

namespace wahba {

template <typename Scalar>
class SymMat4 {
 public:
  SymMat4() : m_(Mat4<Scalar>::Zero()) {}

  /// Checked entry point: rejects inputs whose asymmetry exceeds
  /// tol * max(1, max|entry|), then stores the exactly-symmetric part.
  static SymMat4 from_matrix(const Mat4<Scalar>& m, Scalar tol = Scalar(1e-12)) {
    const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
    const Scalar asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= tol * scale)) {
      throw std::invalid_argument("SymMat4: input matrix is not symmetric within tolerance");
    }
    return symmetrize(m);
  }

  /// (m + m^T)/2. Exactly symmetric in floating point; the identity map for
  /// already-symmetric input.
  static SymMat4 symmetrize(const Mat4<Scalar>& m) {
    SymMat4 s;
    s.m_ = Scalar(0.5) * (m + m.transpose());
    return s;
  }

  const Mat4<Scalar>& matrix() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }
  Scalar trace() const { return m_.trace(); }

  SymMat4 operator+(const SymMat4& o) const { return wrap(m_ + o.m_); }
  SymMat4 operator-(const SymMat4& o) const { return wrap(m_ - o.m_); }
  SymMat4 operator*(Scalar s) const { return wrap(s * m_); }
  friend SymMat4 operator*(Scalar s, const SymMat4& m) { return m * s; }
  Vec4<Scalar> operator*(const Vec4<Scalar>& v) const { return m_ * v; }

 private:
  static SymMat4 wrap(const Mat4<Scalar>& m) {
    SymMat4 s;
    s.m_ = m;
    return s;
  }
  Mat4<Scalar> m_;
};

}  // namespace wahba
