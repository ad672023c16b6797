#include "tfs/kernels.hpp"

#include <cmath>

#ifdef TFS_HAVE_OPENMP
#include <omp.h>
#endif

namespace tfs::kernels {

bool run_parallel(Exec exec, std::size_t work) {
#ifdef TFS_HAVE_OPENMP
  switch (exec) {
    case Exec::Serial:
      return false;
    case Exec::Parallel:
      return true;
    case Exec::Auto:
      return work >= (std::size_t{1} << 14);
  }
  return false;
#else
  (void)exec;
  (void)work;
  return false;
#endif
}

PairTable pair_table(int n) {
  PairTable t;
  t.a.reserve(n * (n - 1) / 2);
  t.b.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      t.a.push_back(i);
      t.b.push_back(j);
    }
  }
  return t;
}

namespace {

// Per-entry accumulators.  Both the reference loops and the OpenMP loops sum
// over i in ascending order, which is what makes the two paths bit-identical.

inline cd frame_operator_entry(const Eigen::MatrixXcd& V, const Eigen::VectorXd& w,
                               int p, int q) {
  const int k = static_cast<int>(V.cols());
  cd acc(0.0, 0.0);
  for (int i = 0; i < k; ++i) acc += w(i) * V(p, i) * std::conj(V(q, i));
  return acc;
}

inline cd gram_entry(const Eigen::MatrixXcd& V, int i, int j) {
  const int n = static_cast<int>(V.rows());
  cd acc(0.0, 0.0);
  for (int l = 0; l < n; ++l) acc += V(l, i) * std::conj(V(l, j));
  return acc;
}

inline double diagram_gram_entry(const Eigen::MatrixXcd& V, int n,
                                 const Eigen::VectorXd& norms2, int i, int j) {
  const cd g = gram_entry(V, i, j);
  return (n * std::norm(g) - norms2(i) * norms2(j)) / (n - 1.0);
}

// Entry m of the weighted diagram sum.  Layout for R^n: n(n-1)/2 difference
// entries over the pair table, then one product entry per pair.  For C^n:
// the difference block, then per pair the two conjugate products
// sqrt(n) f(a) conj(f(b)) and sqrt(n) conj(f(a)) f(b), adjacent.
inline cd diagram_sum_entry(const Eigen::MatrixXcd& V, Field field,
                            const Eigen::VectorXd& w, const PairTable& pt,
                            int n, int m) {
  const int k = static_cast<int>(V.cols());
  const int np = pt.count();
  const double inv = 1.0 / std::sqrt(n - 1.0);
  if (m < np) {
    const int a = pt.a[m], b = pt.b[m];
    double acc = 0.0;
    for (int i = 0; i < k; ++i)
      acc += w(i) * (std::norm(V(a, i)) - std::norm(V(b, i)));
    return cd(acc * inv, 0.0);
  }
  if (field == Field::Real) {
    const int p = m - np;
    const int a = pt.a[p], b = pt.b[p];
    const double scale = std::sqrt(2.0 * n);
    double acc = 0.0;
    for (int i = 0; i < k; ++i)
      acc += w(i) * (V(a, i).real() * V(b, i).real());
    return cd(acc * scale * inv, 0.0);
  }
  const int q = m - np;
  const int p = q / 2;
  const int a = pt.a[p], b = pt.b[p];
  const double scale = std::sqrt(static_cast<double>(n));
  cd acc(0.0, 0.0);
  if (q % 2 == 0) {
    for (int i = 0; i < k; ++i) acc += w(i) * (V(a, i) * std::conj(V(b, i)));
  } else {
    for (int i = 0; i < k; ++i) acc += w(i) * (std::conj(V(a, i)) * V(b, i));
  }
  return acc * (scale * inv);
}

inline int diagram_dim(Field field, int n) {
  const int np = n * (n - 1) / 2;
  return field == Field::Real ? 2 * np : 3 * np;
}

inline std::uint8_t sphere_mask_entry(int bands, std::int64_t g,
                                      const Eigen::MatrixXd& axes,
                                      double threshold, double slack) {
  const Eigen::Vector3d p = sphere_grid_point(bands, g);
  for (int j = 0; j < axes.cols(); ++j) {
    if (std::abs(p.dot(axes.col(j))) < threshold - slack) return 0;
  }
  return 1;
}

inline std::uint8_t circle_mask_entry(int steps, std::int64_t b,
                                      const Eigen::MatrixXd& axes,
                                      double threshold, double slack) {
  const Eigen::Vector2d p = circle_grid_point(steps, b);
  for (int j = 0; j < axes.cols(); ++j) {
    if (std::abs(p.dot(axes.col(j))) < threshold - slack) return 0;
  }
  return 1;
}

Eigen::VectorXd column_norms2(const Eigen::MatrixXcd& V) {
  const int k = static_cast<int>(V.cols());
  const int n = static_cast<int>(V.rows());
  Eigen::VectorXd s(k);
  for (int i = 0; i < k; ++i) {
    double acc = 0.0;
    for (int l = 0; l < n; ++l) acc += std::norm(V(l, i));
    s(i) = acc;
  }
  return s;
}

}  // namespace

namespace reference {

Eigen::MatrixXcd frame_operator(const Eigen::MatrixXcd& V, const Eigen::VectorXd& w) {
  const int n = static_cast<int>(V.rows());
  Eigen::MatrixXcd S(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) S(p, q) = frame_operator_entry(V, w, p, q);
  return S;
}

Eigen::MatrixXcd gramian(const Eigen::MatrixXcd& V) {
  const int k = static_cast<int>(V.cols());
  Eigen::MatrixXcd G(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) G(i, j) = gram_entry(V, i, j);
  return G;
}

Eigen::MatrixXd diagram_gramian(const Eigen::MatrixXcd& V, int n) {
  const int k = static_cast<int>(V.cols());
  const Eigen::VectorXd norms2 = column_norms2(V);
  Eigen::MatrixXd Gt(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const double v = diagram_gram_entry(V, n, norms2, i, j);
      Gt(i, j) = v;
      Gt(j, i) = v;  // mirrored, so the result is exactly symmetric
    }
  return Gt;
}

Eigen::VectorXcd diagram_sum(const Eigen::MatrixXcd& V, Field field,
                             const Eigen::VectorXd& w) {
  const int n = static_cast<int>(V.rows());
  const PairTable pt = pair_table(n);
  const int dim = diagram_dim(field, n);
  Eigen::VectorXcd out(dim);
  for (int m = 0; m < dim; ++m) out(m) = diagram_sum_entry(V, field, w, pt, n, m);
  return out;
}

std::vector<std::uint8_t> sphere_cone_mask(int bands, const Eigen::MatrixXd& axes,
                                           double threshold, double slack) {
  const std::int64_t total = 2ll * bands * bands;
  std::vector<std::uint8_t> mask(total);
  for (std::int64_t g = 0; g < total; ++g)
    mask[g] = sphere_mask_entry(bands, g, axes, threshold, slack);
  return mask;
}

std::vector<std::uint8_t> circle_cone_mask(int steps, const Eigen::MatrixXd& axes,
                                           double threshold, double slack) {
  std::vector<std::uint8_t> mask(steps);
  for (std::int64_t b = 0; b < steps; ++b)
    mask[b] = circle_mask_entry(steps, b, axes, threshold, slack);
  return mask;
}

}  // namespace reference

Eigen::MatrixXcd frame_operator(const Eigen::MatrixXcd& V, const Eigen::VectorXd& w,
                                Exec exec) {
  const int n = static_cast<int>(V.rows());
  const std::size_t work = std::size_t(n) * n * V.cols();
  if (!run_parallel(exec, work)) return reference::frame_operator(V, w);
  Eigen::MatrixXcd S(n, n);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for collapse(2) schedule(static)
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) S(p, q) = frame_operator_entry(V, w, p, q);
#endif
  return S;
}

Eigen::MatrixXcd gramian(const Eigen::MatrixXcd& V, Exec exec) {
  const int k = static_cast<int>(V.cols());
  const std::size_t work = std::size_t(k) * k * V.rows();
  if (!run_parallel(exec, work)) return reference::gramian(V);
  Eigen::MatrixXcd G(k, k);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) G(i, j) = gram_entry(V, i, j);
#endif
  return G;
}

Eigen::MatrixXd diagram_gramian(const Eigen::MatrixXcd& V, int n, Exec exec) {
  const int k = static_cast<int>(V.cols());
  const std::size_t work = std::size_t(k) * k * V.rows();
  if (!run_parallel(exec, work)) return reference::diagram_gramian(V, n);
  const Eigen::VectorXd norms2 = column_norms2(V);
  Eigen::MatrixXd Gt(k, k);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const double v = diagram_gram_entry(V, n, norms2, i, j);
      Gt(i, j) = v;
      Gt(j, i) = v;
    }
#endif
  return Gt;
}

Eigen::VectorXcd diagram_sum(const Eigen::MatrixXcd& V, Field field,
                             const Eigen::VectorXd& w, Exec exec) {
  const int n = static_cast<int>(V.rows());
  const int dim = diagram_dim(field, n);
  const std::size_t work = std::size_t(dim) * V.cols();
  if (!run_parallel(exec, work)) return reference::diagram_sum(V, field, w);
  const PairTable pt = pair_table(n);
  Eigen::VectorXcd out(dim);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (int m = 0; m < dim; ++m) out(m) = diagram_sum_entry(V, field, w, pt, n, m);
#endif
  return out;
}

std::vector<std::uint8_t> sphere_cone_mask(int bands, const Eigen::MatrixXd& axes,
                                           double threshold, double slack, Exec exec) {
  const std::int64_t total = 2ll * bands * bands;
  const std::size_t work = std::size_t(total) * axes.cols();
  if (!run_parallel(exec, work))
    return reference::sphere_cone_mask(bands, axes, threshold, slack);
  std::vector<std::uint8_t> mask(total);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < total; ++g)
    mask[g] = sphere_mask_entry(bands, g, axes, threshold, slack);
#endif
  return mask;
}

std::vector<std::uint8_t> circle_cone_mask(int steps, const Eigen::MatrixXd& axes,
                                           double threshold, double slack, Exec exec) {
  const std::size_t work = std::size_t(steps) * axes.cols();
  if (!run_parallel(exec, work))
    return reference::circle_cone_mask(steps, axes, threshold, slack);
  std::vector<std::uint8_t> mask(steps);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < steps; ++b)
    mask[b] = circle_mask_entry(steps, b, axes, threshold, slack);
#endif
  return mask;
}

Eigen::Vector3d sphere_grid_point(int bands, std::int64_t g) {
  const std::int64_t cols = 2ll * bands;
  const std::int64_t a = g / cols;
  const std::int64_t b = g % cols;
  const double pi = 3.14159265358979323846;
  const double theta = pi * (static_cast<double>(a) + 0.5) / bands;
  const double phi = pi * static_cast<double>(b) / bands;
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

Eigen::Vector2d circle_grid_point(int steps, std::int64_t b) {
  const double pi = 3.14159265358979323846;
  const double ang = 2.0 * pi * static_cast<double>(b) / steps;
  return {std::cos(ang), std::sin(ang)};
}

}  // namespace tfs::kernels
