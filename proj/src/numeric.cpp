#include "tfs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tfs {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& A) {
  const int k = static_cast<int>(A.rows());
  double s = 0.0;
  for (int p = 0; p < k - 1; ++p)
    for (int q = p + 1; q < k; ++q) s += 2.0 * A(p, q) * A(p, q);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eigen(const Eigen::MatrixXd& M, const Config& cfg) {
  const int k = static_cast<int>(M.rows());
  if (M.cols() != k)
    throw Error(Errc::DimensionMismatch, "sym_eigen needs a square matrix, got " +
                                             std::to_string(M.rows()) + "x" +
                                             std::to_string(M.cols()));
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > cfg.tol_sym * scale)
    throw Error(Errc::NotSymmetric, "asymmetry above tolerance");

  Eigen::MatrixXd A = 0.5 * (M + M.transpose());
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(k, k);
  const double target = 1e-12 * A.norm();

  int sweeps = 0;
  while (off_diagonal_norm(A) > target) {
    if (++sweeps > cfg.max_jacobi_sweeps)
      throw Error(Errc::NoConvergence,
                  "Jacobi sweep limit (" + std::to_string(cfg.max_jacobi_sweeps) +
                      ") exhausted");
    for (int p = 0; p < k - 1; ++p) {
      for (int q = p + 1; q < k; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        A(p, p) -= t * apq;
        A(q, q) += t * apq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int r = 0; r < k; ++r) {
          if (r == p || r == q) continue;
          const double arp = A(r, p), arq = A(r, q);
          A(r, p) = c * arp - s * arq;
          A(p, r) = A(r, p);
          A(r, q) = s * arp + c * arq;
          A(q, r) = A(r, q);
        }
        for (int r = 0; r < k; ++r) {
          const double vrp = V(r, p), vrq = V(r, q);
          V(r, p) = c * vrp - s * vrq;
          V(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return A(i, i) < A(j, j); });

  EigenDecomposition out;
  out.values.resize(k);
  out.vectors.resize(k, k);
  for (int j = 0; j < k; ++j) {
    out.values(j) = A(order[j], order[j]);
    out.vectors.col(j) = V.col(order[j]);
    int lead = 0;
    for (int r = 1; r < k; ++r)
      if (std::abs(out.vectors(r, j)) > std::abs(out.vectors(lead, j))) lead = r;
    if (out.vectors(lead, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
  }
  return out;
}

std::vector<Eigen::VectorXd> NullSpaceData::row_vectors() const {
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(basis.rows());
  for (int i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i).transpose());
  return rows;
}

NullSpaceData null_space(const Eigen::MatrixXd& M, const Config& cfg) {
  const EigenDecomposition eig = sym_eigen(M, cfg);
  const int k = static_cast<int>(M.rows());
  const double frob = M.norm();
  if (eig.values(0) < -cfg.tol_psd * std::max(1.0, frob))
    throw Error(Errc::NotPSD,
                "eigenvalue " + std::to_string(eig.values(0)) + " below the PSD floor");

  NullSpaceData out;
  out.spectrum = eig.values;
  const double lmax = eig.values(k - 1);
  out.threshold = cfg.tol_null * std::max(1.0, lmax);

  int l = 0;
  while (l < k && eig.values(l) <= out.threshold) ++l;
  out.basis = eig.vectors.leftCols(l);

  if (l == 0)
    out.rank_gap = eig.values(0);
  else if (l == k)
    out.rank_gap = 0.0;
  else
    out.rank_gap = eig.values(l) - eig.values(l - 1);

  const double lo = out.threshold / cfg.borderline_factor;
  const double hi = out.threshold * cfg.borderline_factor;
  for (int j = 0; j < k; ++j)
    if (eig.values(j) >= lo && eig.values(j) <= hi) out.borderline = true;
  return out;
}

namespace {

Eigen::VectorXd weighted_combination(const std::vector<Eigen::VectorXd>& pts,
                                     const Eigen::VectorXd& t) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(pts[0].size());
  for (std::size_t i = 0; i < pts.size(); ++i) x += t(static_cast<int>(i)) * pts[i];
  return x;
}

void check_point_set(const std::vector<Eigen::VectorXd>& pts) {
  if (pts.empty()) throw Error(Errc::DimensionMismatch, "empty point set");
  const auto dim = pts[0].size();
  if (dim < 1) throw Error(Errc::DimensionMismatch, "points must have dimension >= 1");
  for (const auto& p : pts)
    if (p.size() != dim)
      throw Error(Errc::DimensionMismatch, "points of mixed dimension");
}

}  // namespace

HullDecision hull_membership(const std::vector<Eigen::VectorXd>& pts, const Config& cfg) {
  check_point_set(pts);
  const int k = static_cast<int>(pts.size());
  const double tau = cfg.tol_hull;
  const double tau_solid = tau / cfg.borderline_factor;
  const double gap_target = 0.5 * tau_solid * tau_solid;

  HullDecision out;

  // A point at the origin is a one-term certificate.
  for (int i = 0; i < k; ++i) {
    const double nm = pts[i].norm();
    if (nm <= tau) {
      out.contains_zero = true;
      out.weights = Eigen::VectorXd::Zero(k);
      out.weights(i) = 1.0;
      out.nearest_norm = nm;
      out.borderline = nm > tau_solid;
      return out;
    }
  }

  int start = 0;
  for (int i = 1; i < k; ++i)
    if (pts[i].squaredNorm() < pts[start].squaredNorm()) start = i;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(k);
  t(start) = 1.0;
  Eigen::VectorXd x = pts[start];

  auto certify_witness = [&](std::uint64_t iters) {
    Eigen::VectorXd y =
        perceptron_witness(pts, x / x.norm(), cfg.max_perceptron_updates,
                           &out.perceptron_updates);
    y /= y.norm();
    double mu = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) mu = std::min(mu, y.dot(pts[i]));
    out.contains_zero = false;
    out.witness = y;
    out.nearest_norm = x.norm();
    out.borderline = mu <= cfg.borderline_factor * tau;
    out.iterations = iters;
    return out;
  };

  for (std::uint64_t it = 0; it < cfg.max_hull_iterations; ++it) {
    // Vertex scan: Frank-Wolfe target s, away target a, certificate margin.
    int s_idx = 0, a_idx = -1;
    double s_val = std::numeric_limits<double>::infinity();
    double a_val = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      const double d = x.dot(pts[i]);
      if (d < s_val) {
        s_val = d;
        s_idx = i;
      }
      if (t(i) > 0.0 && d > a_val) {
        a_val = d;
        a_idx = i;
      }
    }

    // Certify only once the iterate's margin clears the borderline band: a
    // freshly positive s_val at rounding scale (orthogonal point sets produce
    // margins of order machine epsilon) would misreport a clearly separated
    // hull as borderline.  Below the band the loop keeps sharpening x, whose
    // relative margin converges to the true hull distance.
    if (s_val > cfg.borderline_factor * tau * x.norm()) return certify_witness(it + 1);

    const double xx = x.squaredNorm();
    if (std::sqrt(xx) <= tau_solid) {
      // Re-evaluate the certificate exactly as it will be stated.
      Eigen::VectorXd tc = t.cwiseMax(0.0);
      tc /= tc.sum();
      const Eigen::VectorXd xs = weighted_combination(pts, tc);
      const double resid = xs.norm();
      if (resid <= tau) {
        out.contains_zero = true;
        out.weights = tc;
        out.nearest_norm = resid;
        out.borderline = resid > tau_solid;
        out.iterations = it + 1;
        return out;
      }
      x = xs;  // drift exceeded the iterate's promise; resume from the exact point
      t = tc;
      continue;
    }

    const double gap_fw = xx - s_val;
    const double gap_aw = (a_idx >= 0) ? a_val - xx : -std::numeric_limits<double>::infinity();

    if (gap_fw <= gap_target && gap_aw <= gap_target) {
      // Converged to the nearest point without a positive margin.
      if (std::sqrt(xx) <= tau) {
        Eigen::VectorXd tc = t.cwiseMax(0.0);
        tc /= tc.sum();
        const Eigen::VectorXd xs = weighted_combination(pts, tc);
        if (xs.norm() <= tau) {
          out.contains_zero = true;
          out.weights = tc;
          out.nearest_norm = xs.norm();
          out.borderline = true;  // inside the trust region but not solidly
          out.iterations = it + 1;
          return out;
        }
      }
      throw Error(Errc::IterationLimit,
                  "hull membership stalled at distance " + std::to_string(std::sqrt(xx)) +
                      " with no certificate on either side");
    }

    const bool away = gap_aw > gap_fw && t(a_idx) < 1.0;
    Eigen::VectorXd d;
    double gmax;
    if (away) {
      d = x - pts[a_idx];
      gmax = t(a_idx) / (1.0 - t(a_idx));
    } else {
      d = pts[s_idx] - x;
      gmax = 1.0;
    }
    const double dd = d.squaredNorm();
    if (dd == 0.0) {
      throw Error(Errc::IterationLimit, "hull membership stalled on a zero direction");
    }
    const double gamma = std::clamp(-x.dot(d) / dd, 0.0, gmax);
    x += gamma * d;
    if (away) {
      t *= (1.0 + gamma);
      t(a_idx) = (gamma == gmax) ? 0.0 : std::max(t(a_idx) - gamma, 0.0);
    } else {
      t *= (1.0 - gamma);
      t(s_idx) += gamma;
    }
    if ((it & 1023u) == 1023u) {
      // Periodic exact resummation keeps the iterate honest over long runs.
      t /= t.sum();
      x = weighted_combination(pts, t);
    }
  }
  throw Error(Errc::IterationLimit,
              "hull membership undecided after " +
                  std::to_string(cfg.max_hull_iterations) + " iterations");
}

Eigen::VectorXd perceptron_witness(const std::vector<Eigen::VectorXd>& pts,
                                   Eigen::VectorXd y0, std::uint64_t cap,
                                   std::uint64_t* updates) {
  check_point_set(pts);
  const int k = static_cast<int>(pts.size());
  std::vector<Eigen::VectorXd> unit;
  unit.reserve(k);
  for (const auto& p : pts) {
    const double nm = p.norm();
    if (nm == 0.0)
      throw Error(Errc::IterationCap,
                  "a zero point admits no strict separator, the update cap would be spent");
    unit.push_back(p / nm);
  }
  Eigen::VectorXd y = std::move(y0);
  std::uint64_t upd = 0;
  for (;;) {
    int viol = -1;
    for (int i = 0; i < k; ++i) {
      if (y.dot(unit[i]) <= 0.0) {
        viol = i;
        break;
      }
    }
    if (viol < 0) break;
    if (upd >= cap)
      throw Error(Errc::IterationCap,
                  "perceptron update cap (" + std::to_string(cap) + ") exhausted");
    y += unit[viol];
    ++upd;
  }
  if (updates) *updates = upd;
  return y;
}

}  // namespace tfs
