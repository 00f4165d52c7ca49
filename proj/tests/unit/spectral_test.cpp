#include <doctest.h>

#include <cmath>

#include "support/charpoly.hpp"
#include "support/draws.hpp"
#include "wahba/simulate.hpp"
#include "wahba/spectral.hpp"

using namespace wahba;
using testsupport::draw_pair;
using testsupport::draw_quat;
using testsupport::draw_set;

namespace {

SymMat4<double> random_symmetric(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Mat4d m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = normal(rng);
  }
  return SymMat4<double>::symmetrize(m);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("SymMat4: construction guards") {
  Mat4d m = Mat4d::Identity();
  m(0, 1) = 1.0;  // clearly asymmetric
  CHECK_THROWS_AS(SymMat4<double>::from_matrix(m), std::invalid_argument);

  m(1, 0) = 1.0 + 1e-14;  // within tolerance; stored exactly symmetric
  const SymMat4<double> s = SymMat4<double>::from_matrix(m);
  CHECK(s(0, 1) == s(1, 0));
}

TEST_CASE("eig_sym4: diagonal input") {
  Mat4d d = Mat4d::Zero();
  d.diagonal() << 4, 3, 2, 1;
  const Spectrum<double> s = eig_sym4(SymMat4<double>::symmetrize(d));
  CHECK((s.eigenvalues - Vec4d(4, 3, 2, 1)).norm() == 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(std::abs(s.eigenvectors(i, i)) - 1.0) <= 1e-15);
  }
  // Zero matrix: all zero eigenvalues, identity basis.
  const Spectrum<double> z = eig_sym4(SymMat4<double>());
  CHECK(z.eigenvalues.norm() == 0.0);
  CHECK((z.eigenvectors - Mat4d::Identity()).norm() == 0.0);
}

TEST_CASE("eig_sym4: reconstruction, orthonormality, trace") {
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const SymMat4<double> m = random_symmetric(rng, i % 3 == 0 ? 100.0 : 1.0);
    const Spectrum<double> s = eig_sym4(m);
    const double scale = std::max(1.0, m.matrix().cwiseAbs().maxCoeff());
    const Mat4d recon =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((recon - m.matrix()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    CHECK((s.eigenvectors.transpose() * s.eigenvectors - Mat4d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
    CHECK(std::abs(s.eigenvalues.sum() - m.trace()) <= 1e-10 * scale);
    CHECK(s.eigenvalues(0) >= s.eigenvalues(1));
    CHECK(s.eigenvalues(1) >= s.eigenvalues(2));
    CHECK(s.eigenvalues(2) >= s.eigenvalues(3));
  }
}

TEST_CASE("eig_sym4: agrees with characteristic-polynomial oracle") {
  Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const SymMat4<double> m = random_symmetric(rng);
    const Spectrum<double> s = eig_sym4(m);
    const auto roots = testsupport::charpoly_eigenvalues(m.matrix());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s.eigenvalues(k) - roots[k]) <= 1e-8);
  }
  // Repeated eigenvalues: every H_A has spectrum {2, 2, -2, -2}.
  const auto p = draw_pair(rng);
  const auto roots = testsupport::charpoly_eigenvalues(hessian_A(p).matrix());
  CHECK(std::abs(roots[0] - 2.0) <= 1e-7);
  CHECK(std::abs(roots[1] - 2.0) <= 1e-7);
  CHECK(std::abs(roots[2] + 2.0) <= 1e-7);
  CHECK(std::abs(roots[3] + 2.0) <= 1e-7);
}

TEST_CASE("eig_sym4: reference sub-unit case") {
  const auto rc = reference_case();
  const Spectrum<double> s = eig_sym4(hessian_single(rc.pair, rc.sub_unit_q));
  const Vec4d expected(9.761874553883407, 6.373252535488999, -0.268864411927401,
                       -1.626747464510996);
  CHECK((s.eigenvalues - expected).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("classify: reference cases and synthetic spectra") {
  const auto rc = reference_case();
  const auto spec_at = [&rc](const Vec4d& q) { return eig_sym4(hessian_single(rc.pair, q)); };
  CHECK(classify(spec_at(rc.sub_unit_q)) == Classification::Indefinite);
  CHECK(classify(spec_at(rc.unit_q)) == Classification::PositiveSemidefinite);
  CHECK(classify(spec_at(rc.super_unit_q)) == Classification::PositiveDefinite);

  Spectrum<double> s;
  s.eigenvectors = Mat4d::Identity();
  s.eigenvalues << 1e-12, 1e-13, 0.0, -1e-13;  // numerically zero matrix
  CHECK(classify(s) == Classification::PositiveSemidefinite);
  s.eigenvalues << -1, -2, -3, -4;
  CHECK(classify(s) == Classification::NegativeDefinite);
  s.eigenvalues << 1e-12, -1, -2, -3;
  CHECK(classify(s) == Classification::NegativeSemidefinite);
  s.eigenvalues << 5, 1, -1, -5;
  CHECK(classify(s) == Classification::Indefinite);
  CHECK_THROWS_AS(classify(s, 0.0), std::invalid_argument);
}

TEST_CASE("bound_check: reference values") {
  const auto rc = reference_case();

  const Spectrum<double> sa = eig_sym4(hessian_single(rc.pair, rc.sub_unit_q));
  const auto ba = bound_check(rc.sub_unit_q, sa, 1);
  CHECK(ba.lower == doctest::Approx(-1.626747464510996).epsilon(1e-9));
  CHECK(ba.upper == doctest::Approx(11.119757606467).epsilon(1e-9));
  CHECK(ba.satisfied);
  // The lower bound is attained by the smallest eigenvalue.
  CHECK(std::abs(sa.eigenvalues(3) - ba.lower) <= 1e-9);

  const Spectrum<double> sb = eig_sym4(hessian_single(rc.pair, rc.unit_q));
  const auto bb = bound_check(rc.unit_q, sb, 1);
  CHECK(bb.lower == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bb.upper == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(bb.satisfied);

  const Spectrum<double> sc = eig_sym4(hessian_single(rc.pair, rc.super_unit_q));
  const auto bc = bound_check(rc.super_unit_q, sc, 1);
  CHECK(bc.lower == doctest::Approx(8.640263943011886).epsilon(1e-9));
  CHECK(std::abs(sc.eigenvalues(3) - bc.lower) <= 1e-9);
  CHECK(bc.satisfied);
}

TEST_CASE("analyze: unit-norm sets are PSD or PD; sub-unit single pairs indefinite") {
  Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const auto set = draw_set(rng, 1 + static_cast<int>(rng() % 6));
    const Vec4d u = random_unit_quaternion<double>(rng).vec();
    const auto rep = analyze(set, u);
    const bool psd_or_pd = rep.classification == Classification::PositiveSemidefinite ||
                           rep.classification == Classification::PositiveDefinite;
    CHECK(psd_or_pd);
    CHECK(rep.bound_satisfied);
    CHECK(rep.min_eig >= -1e-9);
    CHECK(rep.max_eig <= 16.0 + 1e-9);
  }

  for (int i = 0; i < 200; ++i) {
    const ObservationSet<double> one({draw_pair(rng)});
    const Vec4d q = 0.5 * random_unit_quaternion<double>(rng).vec();
    const auto rep = analyze(one, q);
    CHECK(rep.classification == Classification::Indefinite);
    // For ||q|| = 0.5 the smallest eigenvalue is exactly 4*0.25 - 4 = -3.
    CHECK(rep.min_eig == doctest::Approx(-3.0).epsilon(1e-10));
  }
}

TEST_CASE("analyze: rank estimate and single-pair minimum eigenvalue") {
  const auto rc = reference_case();
  const ObservationSet<double> one({rc.pair});
  CHECK(analyze(one, rc.unit_q).rank_estimate == 3);
  CHECK(analyze(one, rc.super_unit_q).rank_estimate == 4);

  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const ObservationSet<double> single({draw_pair(rng)});
    const Vec4d q = draw_quat(rng, 1.0, 2.0);
    const auto rep = analyze(single, q);
    // ||q|| >= 1 keeps every single-pair Hessian PSD.
    CHECK(rep.min_eig >= -1e-9);
    CHECK(std::abs(rep.min_eig - (4.0 * q.squaredNorm() - 4.0)) <= 1e-8);
  }
}

}  // TEST_SUITE
