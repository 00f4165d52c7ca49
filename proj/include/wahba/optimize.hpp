// Derivative-based iterative solvers over quaternion coordinates: gradient
// descent (GDA), Gauss-Newton (GNA) and Levenberg-Marquardt (LMA), with
// optional per-step normalization and a full iteration trace.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

#include "wahba/model.hpp"
#include "wahba/quaternion.hpp"
#include "wahba/spectral.hpp"

namespace wahba {

enum class Method { Gda, Gna, Lma };

template <typename Scalar>
struct OptimizerConfig {
  Method method = Method::Lma;
  Scalar step_size = Scalar(0.1);  // GDA only
  Scalar kappa = Scalar(1e-6);     // LMA damping
  bool normalize_each_step = true;
  Scalar grad_tol = Scalar(1e-10);
  Scalar loss_tol = Scalar(1e-14);  // improvement floor
  int max_iters = 200;
};

template <typename Scalar>
struct IterationRecord {
  int index;  // 0 = initial state, k >= 1 = after step k (post-normalization)
  Vec4<Scalar> q;
  Scalar loss;
  Scalar grad_norm;
  Scalar min_hessian_eig;
};

enum class Termination { GradTol, LossTol, MaxIters, Diverged };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::GradTol: return "grad_tol";
    case Termination::LossTol: return "loss_tol";
    case Termination::MaxIters: return "max_iters";
    case Termination::Diverged: return "diverged";
  }
  return "unknown";
}

template <typename Scalar>
struct SolveResult {
  Vec4<Scalar> final_q;
  Scalar final_loss;
  bool converged;
  Termination reason;
  std::vector<IterationRecord<Scalar>> trace;
};

/// One damped Gauss-Newton update q - (J^T J + kappa I)^{-1} J^T e via a
/// positive-definite Cholesky solve.
template <typename Scalar>
Vec4<Scalar> step_lma(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q, Scalar kappa) {
  const MatX4<Scalar> j = jacobian(set, q);
  const VecX<Scalar> e = residual_stack(set, q);
  const Mat4<Scalar> a = j.transpose() * j + kappa * Mat4<Scalar>::Identity();
  Eigen::LLT<Mat4<Scalar>> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("step_lma: Cholesky factorization failed (kappa <= 0 or non-finite input)");
  }
  return q - llt.solve(Vec4<Scalar>(j.transpose() * e));
}

/// Undamped Gauss-Newton update. J^T J is rank-deficient along unobservable
/// directions (always, for a single pair), so the solve goes through a
/// thresholded spectral pseudo-inverse: eigenvalues at or below
/// 1e-12 * max(1, lambda_max) are treated as zero.
template <typename Scalar>
Vec4<Scalar> step_gna(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q) {
  const MatX4<Scalar> j = jacobian(set, q);
  const VecX<Scalar> e = residual_stack(set, q);
  const Mat4<Scalar> a = j.transpose() * j;
  const Spectrum<Scalar> s = eig_sym4(SymMat4<Scalar>::symmetrize(a));
  const Scalar tol = Scalar(1e-12) * std::max(Scalar(1), s.eigenvalues(0));
  const Vec4<Scalar> rhs = j.transpose() * e;
  Vec4<Scalar> step = Vec4<Scalar>::Zero();
  for (int i = 0; i < 4; ++i) {
    if (s.eigenvalues(i) > tol) {
      step += s.eigenvectors.col(i) * (s.eigenvectors.col(i).dot(rhs) / s.eigenvalues(i));
    }
  }
  return q - step;
}

/// One explicit gradient step q - mu grad F(q).
template <typename Scalar>
Vec4<Scalar> step_gda(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q, Scalar step_size) {
  if (!(step_size > Scalar(0))) {
    throw std::invalid_argument("step_gda: step size must be positive");
  }
  return q - step_size * gradient(set, q);
}

namespace detail {

template <typename Scalar>
IterationRecord<Scalar> make_record(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q,
                                    int index) {
  IterationRecord<Scalar> r;
  r.index = index;
  r.q = q;
  r.loss = loss_total(set, q);
  r.grad_norm = gradient(set, q).norm();
  r.min_hessian_eig = q.allFinite()
                          ? eig_sym4(hessian_total(set, q)).eigenvalues(3)
                          : std::numeric_limits<Scalar>::quiet_NaN();
  return r;
}

template <typename Scalar>
void validate(const OptimizerConfig<Scalar>& cfg) {
  if (!(cfg.grad_tol > Scalar(0)) || !(cfg.loss_tol > Scalar(0))) {
    throw std::invalid_argument("OptimizerConfig: tolerances must be positive");
  }
  if (cfg.max_iters < 1) {
    throw std::invalid_argument("OptimizerConfig: max_iters must be >= 1");
  }
  if (cfg.method == Method::Gda && !(cfg.step_size > Scalar(0))) {
    throw std::invalid_argument("OptimizerConfig: step_size must be positive");
  }
  if (cfg.method == Method::Lma && !(cfg.kappa > Scalar(0))) {
    throw std::invalid_argument("OptimizerConfig: kappa must be positive");
  }
}

}  // namespace detail

/// Iterates the configured step from q0. If normalize_each_step is set, the
/// update is renormalized before the next Jacobian/gradient evaluation.
/// Terminates on grad_tol, on the loss-improvement floor (grad_tol wins a
/// tie), on max_iters, or on non-finite values (diverged, trace preserved).
template <typename Scalar>
SolveResult<Scalar> solve(const ObservationSet<Scalar>& set, const Vec4<Scalar>& q0,
                          const OptimizerConfig<Scalar>& config) {
  using std::abs;
  using std::isfinite;
  detail::validate(config);
  if (!q0.allFinite() || !(q0.norm() > Scalar(1e-12))) {
    throw std::invalid_argument("solve: degenerate initial quaternion");
  }

  SolveResult<Scalar> result;
  result.converged = false;
  result.reason = Termination::MaxIters;
  result.trace.push_back(detail::make_record(set, q0, 0));

  Vec4<Scalar> q = q0;
  Scalar prev_loss = result.trace.front().loss;
  if (!isfinite(prev_loss) || !isfinite(result.trace.front().grad_norm)) {
    result.reason = Termination::Diverged;
  } else if (result.trace.front().grad_norm <= config.grad_tol) {
    result.converged = true;
    result.reason = Termination::GradTol;
  } else {
    for (int iter = 1; iter <= config.max_iters; ++iter) {
      switch (config.method) {
        case Method::Gda: q = step_gda(set, q, config.step_size); break;
        case Method::Gna: q = step_gna(set, q); break;
        case Method::Lma: q = step_lma(set, q, config.kappa); break;
      }
      if (config.normalize_each_step) {
        const Scalar n = q.norm();
        if (!isfinite(n) || !(n > Scalar(1e-12))) {
          result.trace.push_back(detail::make_record(set, q, iter));
          result.reason = Termination::Diverged;
          break;
        }
        q /= n;
      }
      result.trace.push_back(detail::make_record(set, q, iter));
      const auto& rec = result.trace.back();
      if (!isfinite(rec.loss) || !isfinite(rec.grad_norm)) {
        result.reason = Termination::Diverged;
        break;
      }
      if (rec.grad_norm <= config.grad_tol) {
        result.converged = true;
        result.reason = Termination::GradTol;
        break;
      }
      if (abs(prev_loss - rec.loss) <= config.loss_tol) {
        result.converged = true;
        result.reason = Termination::LossTol;
        break;
      }
      prev_loss = rec.loss;
    }
  }

  result.final_q = result.trace.back().q;
  result.final_loss = result.trace.back().loss;
  return result;
}

}  // namespace wahba
