#include <doctest.h>

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "tfs/kernels.hpp"
#include "tfs/rng.hpp"

using tfs::Exec;
using tfs::Field;
namespace kn = tfs::kernels;

namespace {

Eigen::MatrixXcd random_columns(tfs::Rng& rng, int n, int k, bool complex_entries) {
  Eigen::MatrixXcd V(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i)
      V(i, j) = complex_entries ? tfs::cd(rng.normal(), rng.normal())
                                : tfs::cd(rng.normal(), 0.0);
  return V;
}

}  // namespace

TEST_CASE("pair_table is lexicographic") {
  const auto pt = kn::pair_table(4);
  REQUIRE(pt.count() == 6);
  const int wa[] = {0, 0, 0, 1, 1, 2};
  const int wb[] = {1, 2, 3, 2, 3, 3};
  for (int p = 0; p < 6; ++p) {
    CHECK(pt.a[p] == wa[p]);
    CHECK(pt.b[p] == wb[p]);
  }
}

TEST_CASE("grid parameterizations") {
  const int bands = 9;
  for (std::int64_t g : {0, 5, 17, 2 * 9 * 9 - 1}) {
    const Eigen::Vector3d p = kn::sphere_grid_point(bands, g);
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(kn::circle_grid_point(4, 1).isApprox(Eigen::Vector2d(0, 1), 1e-14));
  CHECK((kn::circle_grid_point(8, 1) - Eigen::Vector2d(std::sqrt(0.5), std::sqrt(0.5)))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("parallel kernels match the reference bit for bit") {
  tfs::Rng rng(99);
  for (const bool cx : {false, true}) {
    for (const auto [n, k] : {std::pair{3, 7}, std::pair{5, 40}, std::pair{8, 130}}) {
      const Eigen::MatrixXcd V = random_columns(rng, n, k, cx);
      Eigen::VectorXd w(k);
      for (int i = 0; i < k; ++i) w(i) = rng.uniform(0.0, 2.0);
      const Field field = cx ? Field::Complex : Field::Real;

      const auto same = [](const auto& A, const auto& B) {
        return A.rows() == B.rows() && A.cols() == B.cols() &&
               (A - B).cwiseAbs().maxCoeff() == 0.0;
      };

      const Eigen::MatrixXcd s1 = kn::frame_operator(V, w, Exec::Serial);
      const Eigen::MatrixXcd s2 = kn::frame_operator(V, w, Exec::Parallel);
      CHECK(same(s1, s2));
      CHECK(same(s1, kn::reference::frame_operator(V, w)));

      const Eigen::MatrixXcd g1 = kn::gramian(V, Exec::Serial);
      const Eigen::MatrixXcd g2 = kn::gramian(V, Exec::Parallel);
      CHECK(same(g1, g2));

      const Eigen::MatrixXd d1 = kn::diagram_gramian(V, n, Exec::Serial);
      const Eigen::MatrixXd d2 = kn::diagram_gramian(V, n, Exec::Parallel);
      CHECK(same(d1, d2));
      CHECK(same(d1, d1.transpose().eval()));  // mirrored, not recomputed

      const Eigen::VectorXcd u1 = kn::diagram_sum(V, field, w, Exec::Serial);
      const Eigen::VectorXcd u2 = kn::diagram_sum(V, field, w, Exec::Parallel);
      CHECK(same(u1, u2));
    }
  }
}

TEST_CASE("mask kernels match the reference bit for bit") {
  tfs::Rng rng(7);
  Eigen::MatrixXd axes(3, 4);
  for (int j = 0; j < 4; ++j) {
    Eigen::Vector3d a(rng.normal(), rng.normal(), rng.normal());
    axes.col(j) = a / a.norm();
  }
  const double thr = 1.0 / std::sqrt(3.0);
  const auto m1 = kn::sphere_cone_mask(24, axes, thr, 0.05, Exec::Serial);
  const auto m2 = kn::sphere_cone_mask(24, axes, thr, 0.05, Exec::Parallel);
  CHECK(m1 == m2);
  CHECK(m1.size() == 2u * 24u * 24u);

  Eigen::MatrixXd axes2 = axes.topRows(2);
  for (int j = 0; j < 4; ++j) axes2.col(j).normalize();
  const auto c1 = kn::circle_cone_mask(777, axes2, 1.0 / std::sqrt(2.0), 0.1, Exec::Serial);
  const auto c2 = kn::circle_cone_mask(777, axes2, 1.0 / std::sqrt(2.0), 0.1, Exec::Parallel);
  CHECK(c1 == c2);
}

TEST_CASE("weighted frame operator equals operator of the scaled columns") {
  tfs::Rng rng(13);
  const Eigen::MatrixXcd V = random_columns(rng, 4, 9, true);
  Eigen::VectorXd c(9);
  for (int i = 0; i < 9; ++i) c(i) = rng.uniform(0.0, 1.5);
  Eigen::MatrixXcd scaled = V;
  for (int i = 0; i < 9; ++i) scaled.col(i) *= c(i);
  const Eigen::MatrixXcd a = kn::frame_operator(V, c.array().square().matrix(), Exec::Serial);
  const Eigen::MatrixXcd b =
      kn::frame_operator(scaled, Eigen::VectorXd::Ones(9), Exec::Serial);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("diagram_sum agrees with the naive materialization") {
  tfs::Rng rng(31);
  for (const Field field : {Field::Real, Field::Complex}) {
    const Eigen::MatrixXcd V = random_columns(rng, 4, 6, field == Field::Complex);
    Eigen::VectorXd w(6);
    for (int i = 0; i < 6; ++i) w(i) = rng.uniform(0.0, 1.0);
    const Eigen::VectorXcd got = kn::diagram_sum(V, field, w, Exec::Serial);
    std::vector<tfs::cd> want(static_cast<std::size_t>(got.size()), tfs::cd(0, 0));
    for (int i = 0; i < 6; ++i) {
      const auto entries = oracles::diagram_entries(V.col(i), field);
      REQUIRE(entries.size() == want.size());
      for (std::size_t e = 0; e < entries.size(); ++e) want[e] += w(i) * entries[e];
    }
    double dev = 0.0;
    for (int e = 0; e < got.size(); ++e)
      dev = std::max(dev, std::abs(got(e) - want[static_cast<std::size_t>(e)]));
    CHECK(dev < 1e-13);
  }
}
