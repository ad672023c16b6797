#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "tfs/planar.hpp"
#include "tfs/rng.hpp"
#include "tfs/scaling.hpp"

using tfs::Errc;
using tfs::Error;
using tfs::Frame;

namespace {

Eigen::Vector2d dir(double deg) {
  const double t = deg * M_PI / 180.0;
  return {std::cos(t), std::sin(t)};
}

Frame angles(std::initializer_list<double> degs) {
  Eigen::MatrixXd V(2, static_cast<int>(degs.size()));
  int i = 0;
  for (double d : degs) {
    V.col(i++) = dir(d);
  }
  return tfs::real_frame(V, true);
}

}  // namespace

TEST_CASE("rotate_quarter") {
  CHECK(tfs::rotate_quarter({1, 0}).isApprox(Eigen::Vector2d(0, 1)));
  CHECK(tfs::rotate_quarter({0, 1}).isApprox(Eigen::Vector2d(-1, 0)));
  CHECK(tfs::rotate_quarter({3, -2}).isApprox(Eigen::Vector2d(2, 3)));
}

TEST_CASE("the planar criterion on the catalog frames") {
  CHECK(tfs::planar_scaling_criterion(angles({0, 120, 240})));
  CHECK(tfs::planar_scaling_criterion(angles({0, 90, 180})));
  CHECK(tfs::planar_scaling_criterion(angles({0, 90})));  // contact only
  CHECK_FALSE(tfs::planar_scaling_criterion(angles({0, 45})));
  CHECK_FALSE(tfs::planar_scaling_criterion(angles({0, 90, 30})));
}

TEST_CASE("solve_triple closed forms") {
  // Two vectors orthogonal to the anchor: both products vanish.
  const auto t1 = tfs::solve_triple(dir(0), dir(90), dir(90));
  CHECK(t1.feasible);
  CHECK(t1.c2 == doctest::Approx(1.0));
  CHECK(t1.c3 == doctest::Approx(1.0));
  CHECK(t1.c1 == doctest::Approx(std::sqrt(2.0)));
  CHECK(t1.residual <= 1e-12);

  // Equiangular triple: every squared coefficient is sqrt(3)/2.
  const auto t2 = tfs::solve_triple(dir(0), dir(120), dir(240));
  CHECK(t2.feasible);
  const double w = std::sqrt(std::sqrt(3.0) / 2.0);
  CHECK(t2.c1 == doctest::Approx(w).epsilon(1e-12));
  CHECK(t2.c2 == doctest::Approx(w).epsilon(1e-12));
  CHECK(t2.c3 == doctest::Approx(w).epsilon(1e-12));

  // Same-side diagram directions admit no nonnegative combination.
  const auto t3 = tfs::solve_triple(dir(0), dir(10), dir(20));
  CHECK_FALSE(t3.feasible);

  // Non-unit input is rejected.
  try {
    tfs::solve_triple({2, 0}, dir(90), dir(45));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotUnitNorm);
  }
}

TEST_CASE("solve_triple feasibility matches the sign structure on random triples") {
  tfs::Rng rng(4711);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const Eigen::Vector2d f1 = dir(rng.uniform(0.0, 360.0));
    const Eigen::Vector2d f2 = dir(rng.uniform(0.0, 360.0));
    const Eigen::Vector2d f3 = dir(rng.uniform(0.0, 360.0));
    const auto t = tfs::solve_triple(f1, f2, f3);
    if (t.feasible) {
      ++feasible_seen;
      CHECK(t.c1 >= 0.0);
      CHECK(t.c2 >= 0.0);
      CHECK(t.c3 >= 0.0);
      CHECK(t.residual <= 1e-10);
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(feasible_seen > 0);
  CHECK(infeasible_seen > 0);
}

TEST_CASE("planar_scaling of the line frame") {
  const auto d = tfs::planar_scaling(angles({0, 90, 180}));
  REQUIRE(d.csquared.size() == 3);
  CHECK(d.csquared(0) == doctest::Approx(1.0));
  CHECK(d.csquared(1) == doctest::Approx(2.0));
  CHECK(d.csquared(2) == doctest::Approx(1.0));
  REQUIRE(d.pairs.size() == 2);
  CHECK(d.pairs[0] == std::pair<int, int>(0, 1));
  CHECK(d.pairs[1] == std::pair<int, int>(1, 2));
  CHECK(d.triples.empty());
  CHECK(d.lambda == doctest::Approx(1.0));
  CHECK(d.coefficients.squaredNorm() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d.residual <= 1e-12);
  CHECK(tfs::verify_scaling(angles({0, 90, 180}), d.coefficients, d.lambda).pass);
}

TEST_CASE("planar_scaling of the equiangular triple uses three triples") {
  const auto d = tfs::planar_scaling(angles({0, 120, 240}));
  CHECK(d.pairs.empty());
  CHECK(d.triples.size() == 3);
  const double w = 3.0 * std::sqrt(3.0) / 2.0;
  for (int i = 0; i < 3; ++i) CHECK(d.csquared(i) == doctest::Approx(w).epsilon(1e-12));
  CHECK(tfs::verify_scaling(angles({0, 120, 240}), d.coefficients, d.lambda).pass);
}

TEST_CASE("planar_scaling agrees with decide_scaling across random frames") {
  tfs::Rng rng(5280);
  for (int rep = 0; rep < 60; ++rep) {
    const int k = 3 + static_cast<int>(rng.uniform(0.0, 5.9));
    const Frame F = oracles::random_planar_frame(rng, k);
    const bool criterion = tfs::planar_scaling_criterion(F);
    const auto r = tfs::decide_scaling(F);
    CHECK(criterion == (r.verdict == tfs::Verdict::StrictlyScalable));
    if (criterion) {
      const auto d = tfs::planar_scaling(F);
      CHECK(d.csquared.minCoeff() > 0.0);
      CHECK(tfs::verify_scaling(F, d.coefficients, d.lambda).pass);
    }
  }
}

TEST_CASE("planar_scaling refuses frames that fail the criterion") {
  try {
    tfs::planar_scaling(angles({0, 45}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConeCriterionViolated);
  }
  // Without the gate the accumulation itself reports the failure.
  try {
    tfs::planar_scaling(angles({0, 45}), false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AccumulationFailed);
  }
}

TEST_CASE("planar_scaling rejects non-planar and non-unit input") {
  try {
    tfs::planar_scaling(tfs::real_frame(Eigen::MatrixXd::Identity(3, 3), true));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}
