#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "tfs/cones.hpp"
#include "tfs/scaling.hpp"

using tfs::Errc;
using tfs::Error;
using tfs::Frame;

namespace {

Frame angles(std::initializer_list<double> degs) {
  Eigen::MatrixXd V(2, static_cast<int>(degs.size()));
  int i = 0;
  for (double d : degs) {
    const double t = d * M_PI / 180.0;
    V(0, i) = std::cos(t);
    V(1, i) = std::sin(t);
    ++i;
  }
  return tfs::real_frame(V, true);
}

Frame five_vector_frame() {
  Eigen::MatrixXd V(3, 5);
  const double s = 1.0 / std::sqrt(2.0);
  V << 1, 0, 0, s,  s,
       0, 1, 0, s, -s,
       0, 0, 1, 0,  0;
  return tfs::real_frame(V, true);
}

Frame basis_plus_diagonal() {
  Eigen::MatrixXd V(3, 4);
  const double s = 1.0 / std::sqrt(2.0);
  V << 1, 0, 0, s,
       0, 1, 0, s,
       0, 0, 1, 0;
  return tfs::real_frame(V, true);
}

bool certified(const Frame& F, const Eigen::VectorXd& f) {
  const Eigen::VectorXd m = tfs::cone_margins(F, f);
  return m.minCoeff() >= -tfs::kConeSlack && m.maxCoeff() > tfs::kConeStrict;
}

}  // namespace

TEST_CASE("threshold") {
  CHECK(tfs::cone_threshold(2) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(tfs::cone_threshold(3) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("cone_margins validates its input") {
  const Frame F = angles({0, 90});
  Eigen::VectorXd f(2);
  f << 1, 0;
  CHECK(tfs::cone_margins(F, f).size() == 2);

  Eigen::VectorXd wrong(3);
  wrong << 1, 0, 0;
  try {
    tfs::cone_margins(F, wrong);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }

  Eigen::MatrixXcd V(2, 1);
  V << tfs::cd(1, 0), tfs::cd(0, 0);
  Frame C = tfs::complex_frame(V, true);
  try {
    tfs::cone_margins(C, f);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidFrame);
  }
}

TEST_CASE("planar violation search is exact: positive cases") {
  const auto r = tfs::cone_violation_r2(angles({0, 45}));
  CHECK(r.found);
  CHECK(r.violation.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certified(angles({0, 45}), r.violation));
  CHECK(r.best_min_margin > 0.0);
}

TEST_CASE("planar violation search is exact: negative cases") {
  // Orthonormal basis: the diagonals touch both cones but nothing is strict.
  const auto r1 = tfs::cone_violation_r2(angles({0, 90}));
  CHECK_FALSE(r1.found);
  CHECK(r1.boundary_contact);
  const Eigen::VectorXd m = tfs::cone_margins(angles({0, 90}), r1.contact_point);
  CHECK(std::abs(m.minCoeff()) <= 1e-12);
  CHECK(std::abs(m.maxCoeff()) <= 1e-9);

  // Equiangular Mercedes triple: no direction is in all three cones.
  CHECK_FALSE(tfs::cone_violation_r2(angles({0, 120, 240})).found);
  CHECK_FALSE(tfs::cone_violation_r2(angles({0, 120, 240})).boundary_contact);

  CHECK_FALSE(tfs::cone_violation_r2(angles({0, 90, 180})).found);
}

TEST_CASE("planar violation agrees with a dense sweep on random frames") {
  tfs::Rng rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const int k = 2 + static_cast<int>(rng.uniform(0.0, 5.9));
    const Frame F = oracles::random_planar_frame(rng, k);
    const auto r = tfs::cone_violation_r2(F);
    const auto sweep = oracles::sweep_circle(F.vectors.real(), 20000);
    if (r.found) {
      CHECK(sweep.best_min >= -1e-3);
    } else {
      // No robust violation: anything the sweep finds is within resolution.
      CHECK(sweep.best_min <= 1e-3);
    }
  }
}

TEST_CASE("r2 search rejects non-planar input") {
  try {
    tfs::cone_violation_r2(five_vector_frame());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionMismatch);
  }
}

TEST_CASE("spatial search finds the documented violation") {
  const Frame F = basis_plus_diagonal();
  const auto r = tfs::cone_violation_search(F, 12345, 32);
  CHECK(r.found);
  CHECK(r.violation.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certified(F, r.violation));
  // The symmetric contact direction works; the search should do at least
  // as well as it on the min margin.
  CHECK(r.best_min_margin >= -tfs::kConeSlack);
}

TEST_CASE("spatial search finds nothing on the five-vector frame") {
  const auto r = tfs::cone_violation_search(five_vector_frame(), 12345, 48);
  CHECK_FALSE(r.found);
}

TEST_CASE("spatial search contacts the corners of an orthonormal basis") {
  const Frame F = tfs::real_frame(Eigen::MatrixXd::Identity(3, 3), true);
  const auto r = tfs::cone_violation_search(F, 7, 32);
  CHECK_FALSE(r.found);
  CHECK(r.boundary_contact);
  const Eigen::VectorXd m = tfs::cone_margins(F, r.contact_point);
  CHECK(std::abs(m.minCoeff()) <= 1e-12);
  CHECK(std::abs(m.maxCoeff()) <= 1e-9);
}

TEST_CASE("spatial search is deterministic in the seed") {
  const Frame F = basis_plus_diagonal();
  const auto a = tfs::cone_violation_search(F, 99, 16);
  const auto b = tfs::cone_violation_search(F, 99, 16);
  REQUIRE(a.found == b.found);
  CHECK((a.violation - b.violation).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.best_min_margin == b.best_min_margin);

  try {
    tfs::cone_violation_search(F, 99, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
  }
}

TEST_CASE("violations contradict strict scalability on random spatial frames") {
  tfs::Rng rng(271828);
  for (int rep = 0; rep < 25; ++rep) {
    const int k = 4 + static_cast<int>(rng.uniform(0.0, 4.9));
    const Frame F = oracles::random_unit_frame(rng, tfs::Field::Real, 3, k);
    const auto r = tfs::cone_violation_search(F, 1000 + rep, 16);
    if (r.found) {
      CHECK(certified(F, r.violation));
      CHECK(tfs::decide_scaling(F).verdict != tfs::Verdict::StrictlyScalable);
    }
  }
}

TEST_CASE("sample export reproduces the two eight-point clusters") {
  const Frame F = five_vector_frame();
  const int grid = 48;
  const double res = M_PI / grid;

  std::vector<Eigen::Vector3d> c1, c2;
  const double a = 1.0 / std::sqrt(3.0), b = std::sqrt(2.0 / 3.0);
  for (int sx : {-1, 1})
    for (int sy : {-1, 1})
      for (int sz : {-1, 1}) c1.emplace_back(sx * a, sy * a, sz * a);
  for (int s0 : {-1, 1})
    for (int s1 : {-1, 1}) {
      c2.emplace_back(s0 * b, 0.0, s1 * a);
      c2.emplace_back(0.0, s0 * b, s1 * a);
    }

  const auto near_one_of = [&](const std::vector<Eigen::Vector3d>& centers,
                               const Eigen::VectorXd& p) {
    double best = 1e9;
    for (const auto& c : centers) best = std::min(best, (p - c).norm());
    return best;
  };

  const auto s1 = tfs::export_cone_samples(F, {1, 2, 3}, grid);
  CHECK(s1.points.size() >= 8);
  for (const auto& p : s1.points) CHECK(near_one_of(c1, p) < 3.0 * res);
  // every cluster is populated
  for (const auto& c : c1) {
    double best = 1e9;
    for (const auto& p : s1.points) best = std::min(best, (p - Eigen::VectorXd(c)).norm());
    CHECK(best < 3.0 * res);
  }

  const auto s2 = tfs::export_cone_samples(F, {3, 4, 5}, grid);
  CHECK(s2.points.size() >= 8);
  for (const auto& p : s2.points) CHECK(near_one_of(c2, p) < 3.0 * res);
  for (const auto& c : c2) {
    double best = 1e9;
    for (const auto& p : s2.points) best = std::min(best, (p - Eigen::VectorXd(c)).norm());
    CHECK(best < 3.0 * res);
  }

  // All five cones together have empty intersection.
  const auto sall = tfs::export_cone_samples(F, {}, grid, 0.0);
  CHECK(sall.points.empty());
}

TEST_CASE("planar sample export clusters on the diagonals") {
  const Frame F = angles({0, 90});
  const int grid = 720;
  const auto s = tfs::export_cone_samples(F, {}, grid);
  CHECK_FALSE(s.points.empty());
  for (const auto& p : s.points) {
    const double d = std::min(std::abs(std::abs(p(0)) - std::abs(p(1))), 1.0);
    CHECK(d < 2.0 * 2.0 * M_PI / grid);
  }
}

TEST_CASE("sample export validates subset and dimension") {
  const Frame F = five_vector_frame();
  try {
    tfs::export_cone_samples(F, {0, 1}, 16);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
  }
  try {
    tfs::export_cone_samples(F, {6}, 16);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfRange);
  }
  try {
    tfs::export_cone_samples(tfs::real_frame(Eigen::MatrixXd::Identity(4, 4), true), {}, 16);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnsupportedDimension);
  }
}

TEST_CASE("format_cone_samples is stable text") {
  const Frame F = angles({0, 90});
  const auto s = tfs::export_cone_samples(F, {1}, 32);
  const std::string text = tfs::format_cone_samples(s);
  CHECK(text.rfind("# n=2 subset=1\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == s.points.size() + 1);
}

TEST_CASE("perturbed family: domain and scalability") {
  for (double v : {0.0, 0.71, -0.2, 1.0 / std::sqrt(2.0)}) {
    try {
      tfs::perturbed_frame(v);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OutOfRange);
    }
  }
  for (double v : {0.1, 0.3, 0.45, 0.6, 0.7}) {
    const Frame F = tfs::perturbed_frame(v);
    CHECK(F.n == 3);
    CHECK(F.k() == 5);
    for (int i = 0; i < 5; ++i) CHECK(F.vec(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tfs::decide_scaling(F).verdict == tfs::Verdict::NotScalable);
  }
}
