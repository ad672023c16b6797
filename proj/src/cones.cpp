#include "tfs/cones.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tfs/kernels.hpp"
#include "tfs/rng.hpp"

namespace tfs {

double cone_threshold(int n) { return 1.0 / std::sqrt(static_cast<double>(n)); }

namespace {

void require_real_unit(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  if (F.field != Field::Real)
    throw Error(Errc::InvalidFrame, "cone analysis is defined for real frames");
  if (!F.unit_norm)
    throw Error(Errc::NotUnitNorm, "cone analysis needs a unit-norm frame");
}

Eigen::MatrixXd real_columns(const Frame& F) { return F.vectors.real(); }

struct Candidate {
  Eigen::VectorXd f;
  Eigen::VectorXd margins;
  double min_margin = -std::numeric_limits<double>::infinity();
  double max_margin = -std::numeric_limits<double>::infinity();
};

Candidate evaluate_candidate(const Eigen::MatrixXd& V, double threshold,
                             const Eigen::VectorXd& f) {
  Candidate c;
  c.f = f;
  const int k = static_cast<int>(V.cols());
  c.margins.resize(k);
  c.min_margin = std::numeric_limits<double>::infinity();
  c.max_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const double m = std::abs(f.dot(V.col(i))) - threshold;
    c.margins(i) = m;
    c.min_margin = std::min(c.min_margin, m);
    c.max_margin = std::max(c.max_margin, m);
  }
  return c;
}

bool is_violation(const Candidate& c) {
  return c.min_margin >= -kConeSlack && c.max_margin > kConeStrict;
}

bool is_contact(const Candidate& c) {
  return c.min_margin >= -kConeSlack && c.max_margin <= kConeStrict;
}

// Deterministic selection: candidates arrive in a fixed order and a later
// one must be strictly better to displace the incumbent.
ViolationReport classify_candidates(const std::vector<Candidate>& cands) {
  ViolationReport rep;
  const Candidate* best = nullptr;
  const Candidate* best_violation = nullptr;
  const Candidate* best_contact = nullptr;
  for (const auto& c : cands) {
    if (!best || c.min_margin > best->min_margin) best = &c;
    if (is_violation(c) &&
        (!best_violation || c.min_margin > best_violation->min_margin))
      best_violation = &c;
    if (is_contact(c) && (!best_contact || c.min_margin > best_contact->min_margin))
      best_contact = &c;
  }
  if (best_violation) {
    rep.found = true;
    rep.violation = best_violation->f;
    rep.margins = best_violation->margins;
    rep.best_min_margin = best_violation->min_margin;
    return rep;
  }
  if (best) {
    rep.margins = best->margins;
    rep.best_min_margin = best->min_margin;
  }
  if (best_contact) {
    rep.boundary_contact = true;
    rep.contact_point = best_contact->f;
  }
  return rep;
}

}  // namespace

Eigen::VectorXd cone_margins(const Frame& F, const Eigen::VectorXd& f, const Config& cfg) {
  require_real_unit(F, cfg);
  if (f.size() != F.n)
    throw Error(Errc::DimensionMismatch, "test vector has dimension " +
                                             std::to_string(f.size()) + ", frame has n = " +
                                             std::to_string(F.n));
  return evaluate_candidate(real_columns(F), cone_threshold(F.n), f).margins;
}

ViolationReport cone_violation_r2(const Frame& F, const Config& cfg) {
  require_real_unit(F, cfg);
  if (F.n != 2)
    throw Error(Errc::DimensionMismatch,
                "exact cone test works in n = 2, got n = " + std::to_string(F.n));
  const Eigen::MatrixXd V = real_columns(F);
  const double thr = cone_threshold(2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<Candidate> cands;
  cands.reserve(3 * F.k());
  for (int i = 0; i < F.k(); ++i) {
    const double x = V(0, i), y = V(1, i);
    cands.push_back(evaluate_candidate(V, thr, Eigen::Vector2d(x, y)));
    cands.push_back(
        evaluate_candidate(V, thr, Eigen::Vector2d((x - y) * inv_sqrt2, (x + y) * inv_sqrt2)));
    cands.push_back(
        evaluate_candidate(V, thr, Eigen::Vector2d((x + y) * inv_sqrt2, (y - x) * inv_sqrt2)));
  }
  return classify_candidates(cands);
}

namespace {

double min_signed_margin(const Eigen::MatrixXd& V, const Eigen::VectorXd& s,
                         double thr, const Eigen::VectorXd& f) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < V.cols(); ++i) m = std::min(m, s(i) * f.dot(V.col(i)) - thr);
  return m;
}

// One seeded restart of the ascent; fully deterministic in (seed, index).
Candidate search_restart(const Eigen::MatrixXd& V, double thr, std::uint64_t seed,
                         int index) {
  const int n = static_cast<int>(V.rows());
  const int k = static_cast<int>(V.cols());
  Rng rng(seed * 1000003ull + static_cast<std::uint64_t>(index));

  Eigen::VectorXd f(n);
  double nm = 0.0;
  do {
    for (int l = 0; l < n; ++l) f(l) = rng.normal();
    nm = f.norm();
  } while (nm < 1e-9);
  f /= nm;

  Eigen::VectorXd s(k);
  for (int i = 0; i < k; ++i) s(i) = f.dot(V.col(i)) >= 0.0 ? 1.0 : -1.0;

  auto ascend_dir = [&](const Eigen::VectorXd& g) {
    int lead = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      const double m = s(i) * g.dot(V.col(i));
      if (m < lo) {
        lo = m;
        lead = i;
      }
    }
    Eigen::VectorXd grad = s(lead) * V.col(lead);
    return (grad - grad.dot(g) * g).eval();  // tangent to the sphere
  };

  // Coarse fixed-step phase.
  Eigen::VectorXd best = f;
  double best_m = min_signed_margin(V, s, thr, f);
  double eta = 0.2;
  for (int it = 0; it < 300; ++it) {
    f = (f + eta * ascend_dir(f)).normalized();
    const double m = min_signed_margin(V, s, thr, f);
    if (m > best_m) {
      best_m = m;
      best = f;
    }
  }

  // Step-halving refinement around the incumbent.
  f = best;
  eta = 0.05;
  for (int it = 0; it < 200 && eta > 1e-14; ++it) {
    const Eigen::VectorXd trial = (f + eta * ascend_dir(f)).normalized();
    const double m = min_signed_margin(V, s, thr, trial);
    if (m > best_m) {
      best_m = m;
      best = f = trial;
    } else {
      eta *= 0.5;
    }
  }

  // Centroid of the active constraints: on symmetric instances this lands
  // exactly on the contact point the ascent can only approach.
  Candidate out = evaluate_candidate(V, thr, best);
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < k; ++i)
    if (s(i) * best.dot(V.col(i)) - thr <= best_m + 1e-6) centroid += s(i) * V.col(i);
  const double cn = centroid.norm();
  if (cn > 1e-12) {
    const Candidate polished = evaluate_candidate(V, thr, centroid / cn);
    if (polished.min_margin > out.min_margin) out = polished;
  }
  return out;
}

}  // namespace

ViolationReport cone_violation_search(const Frame& F, std::uint64_t seed, int restarts,
                                      const Config& cfg) {
  require_real_unit(F, cfg);
  if (F.n < 3)
    throw Error(Errc::DimensionMismatch,
                "heuristic search is for n >= 3; use the exact planar test for n = 2");
  if (restarts < 1)
    throw Error(Errc::OutOfRange, "restart budget must be positive");
  const Eigen::MatrixXd V = real_columns(F);
  const double thr = cone_threshold(F.n);

  // Restarts are independent and indexed, so the parallel fill is
  // deterministic regardless of scheduling.
  std::vector<Candidate> cands(restarts);
  const std::size_t work = std::size_t(restarts) * 500 * F.k() * F.n;
  const bool par = kernels::run_parallel(cfg.exec, work);
#ifdef TFS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#else
  (void)par;
#endif
  for (int r = 0; r < restarts; ++r) cands[r] = search_restart(V, thr, seed, r);

  return classify_candidates(cands);
}

ConeSampleSet export_cone_samples(const Frame& F, const std::vector<int>& subset,
                                  int grid, double slack, const Config& cfg) {
  require_real_unit(F, cfg);
  if (F.n > 3)
    throw Error(Errc::UnsupportedDimension,
                "sample export covers n = 2 and n = 3, got n = " + std::to_string(F.n));
  if (grid < 2) throw Error(Errc::OutOfRange, "grid must be at least 2");

  std::vector<int> idx = subset;
  if (idx.empty())
    for (int i = 1; i <= F.k(); ++i) idx.push_back(i);
  for (int i : idx)
    if (i < 1 || i > F.k())
      throw Error(Errc::OutOfRange,
                  "subset index " + std::to_string(i) + " outside 1.." + std::to_string(F.k()));

  const Eigen::MatrixXd V = real_columns(F);
  Eigen::MatrixXd axes(F.n, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) axes.col(j) = V.col(idx[j] - 1);

  const double pi = 3.14159265358979323846;
  ConeSampleSet out;
  out.n = F.n;
  out.subset = subset;  // as requested; empty still means "all" downstream
  out.grid = grid;
  out.slack = slack >= 0.0 ? slack : (F.n == 3 ? pi / grid : 2.0 * pi / grid);

  const double thr = cone_threshold(F.n);
  if (F.n == 3) {
    const auto mask = kernels::sphere_cone_mask(grid, axes, thr, out.slack, cfg.exec);
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(mask.size()); ++g)
      if (mask[g]) out.points.emplace_back(kernels::sphere_grid_point(grid, g));
  } else {
    const auto mask = kernels::circle_cone_mask(grid, axes, thr, out.slack, cfg.exec);
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(mask.size()); ++b)
      if (mask[b]) out.points.emplace_back(kernels::circle_grid_point(grid, b));
  }
  return out;
}

std::string format_cone_samples(const ConeSampleSet& samples) {
  std::string out = "# n=" + std::to_string(samples.n) + " subset=";
  if (samples.subset.empty()) {
    out += "all";
  } else {
    for (std::size_t j = 0; j < samples.subset.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(samples.subset[j]);
    }
  }
  out += '\n';
  char buf[32];
  for (const auto& p : samples.points) {
    for (int l = 0; l < p.size(); ++l) {
      std::snprintf(buf, sizeof buf, "%.17g", p(l));
      if (l) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Frame perturbed_frame(double v) {
  const double limit = 1.0 / std::sqrt(2.0);
  if (!(v > 0.0) || !(v < limit))
    throw Error(Errc::OutOfRange, "perturbation must satisfy 0 < v < 1/sqrt(2), got " +
                                      std::to_string(v));
  const double u = std::sqrt(1.0 - 2.0 * v * v);
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd V(3, 5);
  V << u, v, v, h, h,
       v, u, v, h, -h,
       v, v, u, 0, 0;
  return real_frame(V, true);
}

}  // namespace tfs
