#include "tfs/scaling.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace tfs {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::StrictlyScalable: return "strictly_scalable";
    case Verdict::SubsetScalable: return "subset_scalable";
    case Verdict::NotScalable: return "not_scalable";
    case Verdict::Borderline: return "borderline";
  }
  return "?";
}

const char* certificate_kind_name(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::None: return "none";
    case Certificate::Kind::StrictWitness: return "strict_witness";
    case Certificate::Kind::HullWeights: return "hull_weights";
    case Certificate::Kind::InvertibleGramian: return "invertible_gramian";
    case Certificate::Kind::ConeViolation: return "cone_violation";
  }
  return "?";
}

namespace {

void project_out(const std::vector<Eigen::VectorXd>& Q, Eigen::VectorXd& p) {
  for (const auto& q : Q) p -= q.dot(p) * q;
}

constexpr double kSupportCut = 1e-12;  // convex weight counts as carried above this
constexpr double kSpanCut = 1e-12;     // relative cutoff for "lies in the forced span"

}  // namespace

ScalingResult decide_scaling(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  if (!F.unit_norm)
    throw Error(Errc::NotUnitNorm, "scalability is decided for unit-norm frames");
  const int k = F.k();
  const int n = F.n;

  ScalingResult res;
  ScalingDiagnostics& dg = res.diagnostics;

  const DiagramGramian Gt = diagram_gramian(F, cfg);
  const NullSpaceData ns = null_space(Gt.matrix, cfg);
  dg.spectrum = ns.spectrum;
  dg.nullity = ns.nullity();
  dg.rank = k - dg.nullity;
  dg.rank_gap = ns.rank_gap;
  dg.null_threshold = ns.threshold;
  dg.borderline_rank = ns.borderline;
  dg.null_basis = ns.basis;

  // Invertible diagram Gramian: the only solution of sum c_i^2 tilde(f_i) = 0
  // is c = 0, so no scaling of any kind exists.
  if (dg.nullity == 0) {
    res.certificate.kind = Certificate::Kind::InvertibleGramian;
    res.certificate.min_eigenvalue = ns.spectrum(0);
    if (ns.borderline) {
      res.verdict = Verdict::Borderline;
      dg.borderline_reason = "an eigenvalue sits within the borderline band of the null cutoff";
    } else {
      res.verdict = Verdict::NotScalable;
    }
    return res;
  }

  const std::vector<Eigen::VectorXd> rows = ns.row_vectors();

  auto borderline_exit = [&](const Error& e) -> ScalingResult& {
    res.verdict = Verdict::Borderline;
    dg.borderline_reason = e.what();
    return res;
  };

  // Assemble coefficients from squared values, renormalize to sum c^2 = n,
  // and accept the verdict only if the scaling re-verifies.
  auto finish = [&](Eigen::VectorXd c2, Verdict verdict) {
    const double total = c2.sum();
    c2 *= static_cast<double>(n) / total;
    const Eigen::VectorXd c = c2.cwiseMax(0.0).cwiseSqrt();
    const double lambda = c.squaredNorm() / n;
    const VerificationReport vr = verify_scaling(F, c, lambda, cfg);
    dg.tight_residual = vr.operator_residual;
    res.has_coefficients = true;
    res.coefficients = c;
    res.lambda = lambda;
    if (!vr.pass) {
      res.verdict = Verdict::Borderline;
      dg.borderline_reason = "computed coefficients fail re-verification";
      return;
    }
    res.verdict = verdict;
    if (dg.borderline_rank || dg.borderline_hull) {
      res.verdict = Verdict::Borderline;
      if (dg.borderline_reason.empty())
        dg.borderline_reason = dg.borderline_rank
                                   ? "spectrum within the borderline band of the null cutoff"
                                   : "hull decision within the borderline band";
    }
  };

  HullDecision first;
  try {
    first = hull_membership(rows, cfg);
  } catch (const Error& e) {
    if (e.code() == Errc::IterationLimit || e.code() == Errc::IterationCap)
      return borderline_exit(e);
    throw;
  }
  dg.hull_iterations = first.iterations;
  dg.perceptron_updates = first.perceptron_updates;
  dg.borderline_hull = first.borderline;

  if (!first.contains_zero) {
    // Zero outside the row hull: the polished witness prices every index.
    Eigen::VectorXd c2(k);
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      c2(i) = first.witness.dot(rows[i]);
      lo = std::min(lo, c2(i));
    }
    if (!(lo > 0.0)) {
      res.verdict = Verdict::Borderline;
      dg.borderline_reason = "witness failed to price every row strictly positively";
      return res;
    }
    res.certificate.kind = Certificate::Kind::StrictWitness;
    res.certificate.witness = first.witness;
    finish(c2, Verdict::StrictlyScalable);
    return res;
  }

  // Zero inside the hull: no strictly positive scaling.  The convex weights
  // carrying zero force their indices to coefficient zero; whatever remains
  // is re-tested inside the orthogonal complement of the forced rows.
  res.certificate.kind = Certificate::Kind::HullWeights;
  res.certificate.weights = first.weights;

  std::vector<char> forced(k, 0);
  std::vector<int> active(k);
  std::iota(active.begin(), active.end(), 0);
  HullDecision cur = first;

  for (int round = 0; round <= k; ++round) {
    for (int j = 0; j < static_cast<int>(active.size()); ++j)
      if (cur.weights(j) > kSupportCut) forced[active[j]] = 1;

    std::vector<Eigen::VectorXd> Q;
    for (int i = 0; i < k; ++i) {
      if (!forced[i]) continue;
      Eigen::VectorXd q = rows[i];
      project_out(Q, q);
      project_out(Q, q);
      if (q.norm() > kSpanCut * std::max(1.0, rows[i].norm())) Q.push_back(q / q.norm());
    }

    std::vector<int> next_active;
    std::vector<Eigen::VectorXd> next_pts;
    for (int i = 0; i < k; ++i) {
      if (forced[i]) continue;
      Eigen::VectorXd p = rows[i];
      project_out(Q, p);
      project_out(Q, p);
      if (p.norm() <= kSpanCut * std::max(1.0, rows[i].norm())) {
        forced[i] = 1;  // inside the forced span, priced zero by every feasible y
        continue;
      }
      next_active.push_back(i);
      next_pts.push_back(std::move(p));
    }

    if (next_active.empty()) {
      for (int i = 0; i < k; ++i) dg.zero_set.push_back(i);
      res.verdict = dg.borderline_rank || dg.borderline_hull ? Verdict::Borderline
                                                             : Verdict::NotScalable;
      if (res.verdict == Verdict::Borderline && dg.borderline_reason.empty())
        dg.borderline_reason = "decision held by less than the borderline factor";
      return res;
    }

    HullDecision hd;
    try {
      hd = hull_membership(next_pts, cfg);
    } catch (const Error& e) {
      if (e.code() == Errc::IterationLimit || e.code() == Errc::IterationCap)
        return borderline_exit(e);
      throw;
    }
    dg.hull_iterations += hd.iterations;
    dg.perceptron_updates += hd.perceptron_updates;
    dg.borderline_hull = dg.borderline_hull || hd.borderline;

    if (!hd.contains_zero) {
      Eigen::VectorXd c2 = Eigen::VectorXd::Zero(k);
      double lo = std::numeric_limits<double>::infinity();
      for (int j = 0; j < static_cast<int>(next_active.size()); ++j) {
        c2(next_active[j]) = hd.witness.dot(next_pts[j]);
        lo = std::min(lo, c2(next_active[j]));
      }
      if (!(lo > 0.0)) {
        res.verdict = Verdict::Borderline;
        dg.borderline_reason = "face witness failed to price the active rows";
        return res;
      }
      for (int i = 0; i < k; ++i)
        if (forced[i]) dg.zero_set.push_back(i);
      finish(c2, Verdict::SubsetScalable);
      return res;
    }

    active = std::move(next_active);
    cur = std::move(hd);
  }
  // The forced set grows by at least one index per round, so this is dead.
  throw Error(Errc::IterationLimit, "face reduction failed to terminate");
}

VerificationReport verify_scaling(const Frame& F, const Eigen::VectorXd& c, double lambda,
                                  const Config& cfg) {
  validate_frame(F, cfg);
  if (c.size() != F.k())
    throw Error(Errc::LengthMismatch, "frame has " + std::to_string(F.k()) +
                                          " vectors but " + std::to_string(c.size()) +
                                          " coefficients were given");
  for (int i = 0; i < c.size(); ++i)
    if (!std::isfinite(c(i)) || c(i) < 0.0)
      throw Error(Errc::NegativeCoefficient,
                  "coefficient " + std::to_string(i + 1) + " = " + std::to_string(c(i)));

  const int k = F.k();
  const int n = F.n;
  VerificationReport rep;

  const Eigen::MatrixXcd G = gramian(F, cfg).matrix;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(k, k);
  for (int i = 0; i < k; ++i) D(i, i) = cd(c(i) * c(i), 0.0);
  rep.gram_residual = (G * D * G - lambda * G).norm();
  rep.gram_bound = cfg.tol_tight * lambda * G.norm();

  const Frame scaled = scale_frame(F, c, cfg);
  const Eigen::MatrixXcd S = frame_operator(scaled, cfg).matrix;
  rep.operator_residual =
      (S - lambda * Eigen::MatrixXcd::Identity(n, n)).norm();
  rep.operator_bound = cfg.tol_tight * lambda;

  rep.trace_residual = std::abs(c.squaredNorm() - lambda * n);
  rep.trace_bound = cfg.tol_tight * lambda * n;

  rep.pass = rep.gram_residual <= rep.gram_bound &&
             rep.operator_residual <= rep.operator_bound &&
             rep.trace_residual <= rep.trace_bound;
  return rep;
}

Eigen::VectorXd normalize_scalars(const Eigen::VectorXcd& d) {
  Eigen::VectorXd out(d.size());
  for (int i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d(i).real()) || !std::isfinite(d(i).imag()))
      throw Error(Errc::OutOfRange, "scalar " + std::to_string(i + 1) + " is not finite");
    out(i) = std::abs(d(i));
  }
  return out;
}

SolutionRegion solution_region(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  if (!F.unit_norm)
    throw Error(Errc::NotUnitNorm, "the scaling region is defined for unit-norm frames");
  const DiagramGramian Gt = diagram_gramian(F, cfg);
  const NullSpaceData ns = null_space(Gt.matrix, cfg);
  if (ns.nullity() == 0)
    throw Error(Errc::EmptyNullSpace,
                "diagram Gramian is invertible (min eigenvalue " +
                    std::to_string(ns.spectrum(0)) + "), the region is empty");

  SolutionRegion region;
  region.basis = ns.basis;
  region.rows = ns.row_vectors();

  try {
    const HullDecision hd = hull_membership(region.rows, cfg);
    if (!hd.contains_zero) {
      Eigen::VectorXd y = hd.witness;
      double total = 0.0;
      for (const auto& r : region.rows) total += y.dot(r);
      y *= static_cast<double>(F.n) / total;
      region.has_interior_point = true;
      region.interior_point = y;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::IterationLimit && e.code() != Errc::IterationCap) throw;
    // Undecidable within budget: report the region without a sample.
  }
  return region;
}

}  // namespace tfs
