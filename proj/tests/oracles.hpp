#pragma once

// Independent reference computations for the tests.  Everything here is
// written straight from the definitions (naive loops, dense enumeration,
// Eigen's own solvers) and deliberately avoids the library's numeric
// machinery, so that a library bug cannot hide behind an oracle that shares
// its code path.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tfs/frame.hpp"
#include "tfs/rng.hpp"

namespace oracles {

using tfs::cd;
using tfs::Field;
using tfs::Frame;

// --- diagram vectors, materialized naively --------------------------------

// Entries in the documented order: differences over pairs a < b, then the
// product block (one entry per pair for R, the two conjugate products for C).
inline std::vector<cd> diagram_entries(const Eigen::VectorXcd& f, Field field) {
  const int n = static_cast<int>(f.size());
  const double inv = 1.0 / std::sqrt(static_cast<double>(n - 1));
  std::vector<cd> diff, prod;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      diff.emplace_back((std::norm(f(a)) - std::norm(f(b))) * inv, 0.0);
      if (field == Field::Real) {
        prod.emplace_back(std::sqrt(2.0 * n) * f(a).real() * f(b).real() * inv, 0.0);
      } else {
        prod.push_back(std::sqrt(static_cast<double>(n)) * f(a) * std::conj(f(b)) * inv);
        prod.push_back(std::sqrt(static_cast<double>(n)) * std::conj(f(a)) * f(b) * inv);
      }
    }
  diff.insert(diff.end(), prod.begin(), prod.end());
  return diff;
}

// <u, v> with the conjugate on the second argument, matching the library's
// convention.
inline cd naive_inner(const std::vector<cd>& u, const std::vector<cd>& v) {
  cd acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * std::conj(v[i]);
  return acc;
}

inline double diagram_inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                            Field field) {
  return naive_inner(diagram_entries(f, field), diagram_entries(g, field)).real();
}

inline double diagram_norm(const Eigen::VectorXcd& f, Field field) {
  double acc = 0.0;
  for (const cd& e : diagram_entries(f, field)) acc += std::norm(e);
  return std::sqrt(acc);
}

// --- exact scalability oracle for the plane -------------------------------

// In R^2 every diagram vector lives in a 2-plane, spanned (for unit f) by
// (f1^2 - f2^2, 2 f1 f2).  A frame is scalable iff 0 is a convex combination
// of these unit directions, and strictly scalable iff every index appears in
// the support of some such combination.  Vertices of the solution polytope
// {a >= 0, sum a = 1, D a = 0} have at most rank(D)+1 = 3 positive entries,
// so enumerating supports of size <= 3 and solving the tiny linear systems
// decides both questions exactly for generic frames.
enum class PlanarVerdict { Strict, Subset, None };

inline PlanarVerdict planar_scalability(const Eigen::MatrixXd& V) {
  const int k = static_cast<int>(V.cols());
  Eigen::MatrixXd D(2, k);
  for (int i = 0; i < k; ++i) {
    const double x = V(0, i), y = V(1, i);
    D.col(i) = Eigen::Vector2d(x * x - y * y, 2.0 * x * y);
  }

  std::vector<char> covered(k, 0);
  bool any = false;
  std::vector<int> subset;
  auto try_subset = [&](const std::vector<int>& S) {
    const int m = static_cast<int>(S.size());
    Eigen::MatrixXd A(3, m);
    for (int j = 0; j < m; ++j) {
      A(0, j) = D(0, S[j]);
      A(1, j) = D(1, S[j]);
      A(2, j) = 1.0;
    }
    const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
    const Eigen::VectorXd a = A.colPivHouseholderQr().solve(rhs);
    if ((A * a - rhs).norm() > 1e-9) return;
    for (int j = 0; j < m; ++j)
      if (a(j) < -1e-9) return;
    any = true;
    for (int j = 0; j < m; ++j)
      if (a(j) > 1e-9) covered[S[j]] = 1;
  };

  for (int i = 0; i < k; ++i) {
    try_subset({i});
    for (int j = i + 1; j < k; ++j) {
      try_subset({i, j});
      for (int l = j + 1; l < k; ++l) try_subset({i, j, l});
    }
  }

  if (!any) return PlanarVerdict::None;
  for (int i = 0; i < k; ++i)
    if (!covered[i]) return PlanarVerdict::Subset;
  return PlanarVerdict::Strict;
}

// Dense sweep over the circle: the best achievable min／max cone margins at a
// given angular resolution.  Used as a soft cross-check of the exact planar
// cone test (it cannot certify, only locate robust features).
struct SweepResult {
  double best_min = -1e9;    // max over angles of the min margin
  double best_max_at_feasible = -1e9;  // max margin among near-feasible angles
};

inline SweepResult sweep_circle(const Eigen::MatrixXd& V, int steps) {
  const double pi = 3.14159265358979323846;
  const double thr = 1.0 / std::sqrt(2.0);
  SweepResult out;
  for (int s = 0; s < steps; ++s) {
    const double t = pi * s / steps;  // antipodal angles give equal margins
    const Eigen::Vector2d f(std::cos(t), std::sin(t));
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < V.cols(); ++i) {
      const double m = std::abs(f.dot(V.col(i))) - thr;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    if (lo > out.best_min) out.best_min = lo;
    if (lo >= -1e-3 && hi > out.best_max_at_feasible) out.best_max_at_feasible = hi;
  }
  return out;
}

// --- seeded frame generators ----------------------------------------------

inline Frame random_planar_frame(tfs::Rng& rng, int k) {
  Eigen::MatrixXd V(2, k);
  for (int i = 0; i < k; ++i) {
    const double t = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    V(0, i) = std::cos(t);
    V(1, i) = std::sin(t);
  }
  return tfs::real_frame(V, true);
}

inline Frame random_unit_frame(tfs::Rng& rng, Field field, int n, int k) {
  Eigen::MatrixXcd V(n, k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXcd f(n);
    double nm = 0.0;
    do {
      for (int l = 0; l < n; ++l)
        f(l) = field == Field::Real ? cd(rng.normal(), 0.0) : cd(rng.normal(), rng.normal());
      nm = f.norm();
    } while (nm < 1e-6);
    V.col(i) = f / nm;
  }
  return field == Field::Real ? tfs::real_frame(V.real(), true) : tfs::complex_frame(V, true);
}

// Random orthogonal / unitary basis via Gram-Schmidt on Gaussian columns.
inline Eigen::MatrixXcd random_basis(tfs::Rng& rng, Field field, int n) {
  Eigen::MatrixXcd B(n, n);
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXcd v(n);
    for (;;) {
      for (int l = 0; l < n; ++l)
        v(l) = field == Field::Real ? cd(rng.normal(), 0.0) : cd(rng.normal(), rng.normal());
      for (int p = 0; p < c; ++p) v -= B.col(p).dot(v) * B.col(p);  // conj on B side
      if (v.norm() > 1e-6) break;
    }
    B.col(c) = v / v.norm();
  }
  return B;
}

// Union of m random bases: tight by construction (frame operator = m I).
inline Frame random_tight_union(tfs::Rng& rng, Field field, int n, int m) {
  Eigen::MatrixXcd V(n, n * m);
  for (int b = 0; b < m; ++b) V.middleCols(b * n, n) = random_basis(rng, field, n);
  return field == Field::Real ? tfs::real_frame(V.real(), true) : tfs::complex_frame(V, true);
}

// Random symmetric matrix with a prescribed spectrum (for eigensolver tests).
inline Eigen::MatrixXd symmetric_with_spectrum(tfs::Rng& rng,
                                               const Eigen::VectorXd& lambda) {
  const int n = static_cast<int>(lambda.size());
  const Eigen::MatrixXd Q = random_basis(rng, Field::Real, n).real();
  return Q * lambda.asDiagonal() * Q.transpose();
}

}  // namespace oracles
