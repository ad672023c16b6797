// Times the serial reference kernels against the OpenMP entry points on
// assembly-heavy shapes and checks that the outputs agree exactly.  Not part
// of the test suite; build and run ./bench/tfs_bench.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#ifdef TFS_HAVE_OPENMP
#include <omp.h>
#endif

#include "tfs/kernels.hpp"
#include "tfs/rng.hpp"

using tfs::Exec;
using tfs::Field;
namespace kn = tfs::kernels;

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now();
    fn();
    const double t1 = now();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void row(const char* name, double serial, double parallel, double max_delta) {
  std::printf("%-18s %10.2f ms %10.2f ms %8.2fx   max|delta| = %g\n", name,
              serial * 1e3, parallel * 1e3, serial / parallel, max_delta);
}

}  // namespace

int main() {
  tfs::Rng rng(1);

#ifdef TFS_HAVE_OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both columns run the reference path\n");
#endif
  std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const int n = 96, k = 4000;
    Eigen::MatrixXcd V(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) V(i, j) = tfs::cd(rng.normal(), rng.normal());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(k);
    Eigen::MatrixXcd a, b;
    const double ts = best_of(3, [&] { a = kn::frame_operator(V, w, Exec::Serial); });
    const double tp = best_of(3, [&] { b = kn::frame_operator(V, w, Exec::Parallel); });
    row("frame_operator", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }

  {
    const int n = 24, k = 1500;
    Eigen::MatrixXcd V(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) V(i, j) = tfs::cd(rng.normal(), 0.0);
    Eigen::MatrixXcd a, b;
    const double ts = best_of(3, [&] { a = kn::gramian(V, Exec::Serial); });
    const double tp = best_of(3, [&] { b = kn::gramian(V, Exec::Parallel); });
    row("gramian", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }

  {
    const int n = 24, k = 1500;
    Eigen::MatrixXcd V(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) V(i, j) = tfs::cd(rng.normal(), 0.0);
    Eigen::MatrixXd a, b;
    const double ts = best_of(3, [&] { a = kn::diagram_gramian(V, n, Exec::Serial); });
    const double tp = best_of(3, [&] { b = kn::diagram_gramian(V, n, Exec::Parallel); });
    row("diagram_gramian", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }

  {
    const int n = 24, k = 4000;
    Eigen::MatrixXcd V(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) V(i, j) = tfs::cd(rng.normal(), rng.normal());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(k);
    Eigen::VectorXcd a, b;
    const double ts =
        best_of(3, [&] { a = kn::diagram_sum(V, Field::Complex, w, Exec::Serial); });
    const double tp =
        best_of(3, [&] { b = kn::diagram_sum(V, Field::Complex, w, Exec::Parallel); });
    row("diagram_sum", ts, tp, (a - b).cwiseAbs().maxCoeff());
  }

  {
    const int bands = 400;
    Eigen::MatrixXd axes(3, 5);
    for (int j = 0; j < 5; ++j) {
      Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
      axes.col(j) = v / v.norm();
    }
    std::vector<std::uint8_t> a, b;
    const double thr = 1.0 / std::sqrt(3.0);
    const double ts =
        best_of(3, [&] { a = kn::sphere_cone_mask(bands, axes, thr, 0.01, Exec::Serial); });
    const double tp =
        best_of(3, [&] { b = kn::sphere_cone_mask(bands, axes, thr, 0.01, Exec::Parallel); });
    int delta = 0;
    for (std::size_t i = 0; i < a.size(); ++i) delta += a[i] != b[i];
    row("sphere_cone_mask", ts, tp, delta);
  }

  return 0;
}
