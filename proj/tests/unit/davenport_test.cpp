#include <doctest.h>

#include <cmath>

#include "support/draws.hpp"
#include "wahba/davenport.hpp"
#include "wahba/simulate.hpp"

using namespace wahba;
using testsupport::draw_attitude_set;
using testsupport::draw_pair;
using testsupport::draw_set;

TEST_SUITE("davenport") {

TEST_CASE("build_K: aligned single pair") {
  const Vec3d ez(0, 0, 1);
  const ObservationSet<double> one({ObservationPair<double>::make(ez, ez, 1.0)});
  const auto d = build_K(one);
  Mat4d expected = Mat4d::Zero();
  expected.diagonal() << -1, -1, 1, 1;  // vector-first ordering
  CHECK((d.K - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(d.z.norm() == 0.0);
  CHECK((d.B - ez * ez.transpose()).norm() == 0.0);
}

TEST_CASE("build_K: zero trace and H_A = 2 * scalar-first K") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const auto set = draw_set(rng, 1 + static_cast<int>(rng() % 5));
    CHECK(std::abs(build_K(set).K.trace()) <= 1e-12);
  }
  for (int i = 0; i < 200; ++i) {
    const auto p = draw_pair(rng);
    const ObservationSet<double> one({p});
    const Mat4d kt = scalar_first(build_K(one).K);
    CHECK((hessian_A(p).matrix() - 2.0 * kt).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("single-pair K spectrum is {1,1,-1,-1}") {
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const ObservationSet<double> one({draw_pair(rng)});
    const Mat4d kt = scalar_first(build_K(one).K);
    const Spectrum<double> s = eig_sym4(SymMat4<double>::symmetrize(kt));
    CHECK(std::abs(s.eigenvalues(0) - 1.0) <= 1e-10);
    CHECK(std::abs(s.eigenvalues(1) - 1.0) <= 1e-10);
    CHECK(std::abs(s.eigenvalues(2) + 1.0) <= 1e-10);
    CHECK(std::abs(s.eigenvalues(3) + 1.0) <= 1e-10);
  }
}

TEST_CASE("solve_davenport: two-axis identity fit") {
  const Vec3d ex(1, 0, 0), ez(0, 0, 1);
  const ObservationSet<double> set({ObservationPair<double>::make(ex, ex, 0.5),
                                    ObservationPair<double>::make(ez, ez, 0.5)});
  const auto sol = solve_davenport(set);
  CHECK(sol.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((sol.quaternion.vec() - Vec4d(1, 0, 0, 0)).norm() <= 1e-9);
  CHECK_FALSE(sol.degenerate);
}

TEST_CASE("solve_davenport: reference single pair") {
  const auto rc = reference_case();
  const ObservationSet<double> one({rc.pair});
  const auto sol = solve_davenport(one);
  CHECK(std::abs(sol.lambda_max - 1.0) <= 1e-12);
  CHECK(loss_total(one, sol.quaternion.vec()) <= 1e-12);
  // Single pairs admit a one-parameter family of exact fits.
  CHECK(sol.degenerate);
}

TEST_CASE("solve_davenport: zero-noise recovery of ground truth") {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    Vec4d truth;
    const auto set = draw_attitude_set(rng, 3, 0.0, &truth);
    const auto sol = solve_davenport(set);
    if (sol.degenerate) continue;  // pathological geometry, excluded by contract
    CHECK((canonical_sign(sol.quaternion.vec()) - canonical_sign(truth)).norm() <= 1e-9);
  }
}

TEST_CASE("solve_davenport: lambda_max within [-1, 1]") {
  Rng rng(44);
  for (int i = 0; i < 200; ++i) {
    const auto set = draw_set(rng, 1 + static_cast<int>(rng() % 5));
    const auto sol = solve_davenport(set);
    CHECK(sol.lambda_max <= 1.0 + 1e-12);
    CHECK(sol.lambda_max >= -1.0 - 1e-12);
  }
}

TEST_CASE("loss_total(q) = 2 (1 - q^T K~ q) for unit q") {
  Rng rng(45);
  for (int i = 0; i < 200; ++i) {
    const auto set = draw_set(rng, 1 + static_cast<int>(rng() % 5));
    const Vec4d u = random_unit_quaternion<double>(rng).vec();
    const Mat4d kt = scalar_first(build_K(set).K);
    CHECK(std::abs(loss_total(set, u) - 2.0 * (1.0 - u.dot(kt * u))) <= 1e-12 * 4.0);
  }
}

}  // TEST_SUITE
