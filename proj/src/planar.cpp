#include "tfs/planar.hpp"

#include <cmath>
#include <string>

#include "tfs/cones.hpp"

namespace tfs {

namespace {

constexpr double kZeroProduct = 1e-12;   // p_j counts as zero below this
constexpr double kNegativeFloor = -1e-12;  // worst admissible c_1^2 radicand
constexpr double kTripleResidual = 1e-10;
constexpr double kOrthogonal = 1e-10;    // |<f_a, f_b>| for pair detection
constexpr double kTallyResidual = 1e-9;  // relative, for the final tally

// Diagram direction of a unit vector in the plane: angle doubling.
Eigen::Vector2d diagram_dir(const Eigen::Vector2d& f) {
  return {f(0) * f(0) - f(1) * f(1), 2.0 * f(0) * f(1)};
}

void require_planar_unit(const Frame& F, const Config& cfg) {
  validate_frame(F, cfg);
  if (F.field != Field::Real || F.n != 2)
    throw Error(Errc::DimensionMismatch, "planar scaling is defined for real frames in n = 2");
  if (!F.unit_norm)
    throw Error(Errc::NotUnitNorm, "planar scaling needs a unit-norm frame");
}

}  // namespace

Eigen::Vector2d rotate_quarter(const Eigen::Vector2d& v) { return {-v(1), v(0)}; }

bool planar_scaling_criterion(const Frame& F, const Config& cfg) {
  return !cone_violation_r2(F, cfg).found;
}

TripleScaling solve_triple(const Eigen::Vector2d& f1, const Eigen::Vector2d& f2,
                           const Eigen::Vector2d& f3, const Config& cfg) {
  for (const auto* f : {&f1, &f2, &f3})
    if (std::abs(f->norm() - 1.0) > cfg.tol_unit)
      throw Error(Errc::NotUnitNorm, "triple vectors must be unit norm");

  const Eigen::Vector2d d1 = diagram_dir(f1);
  const Eigen::Vector2d d2 = diagram_dir(f2);
  const Eigen::Vector2d d3 = diagram_dir(f3);
  const Eigen::Vector2d j1 = rotate_quarter(d1);
  const double p2 = j1.dot(d2);
  const double p3 = j1.dot(d3);

  TripleScaling out;
  double c2sq, c3sq;
  if (std::abs(p2) <= kZeroProduct && std::abs(p3) <= kZeroProduct) {
    c2sq = 1.0;
    c3sq = 1.0;
  } else if (p2 * p3 < 0.0) {
    c2sq = std::abs(p3);
    c3sq = std::abs(p2);
  } else {
    return out;  // same strict sign (or only one zero): no nonnegative solution
  }

  const double c1sq_raw = -d1.dot(c2sq * d2 + c3sq * d3);
  if (c1sq_raw < kNegativeFloor) return out;
  const double c1sq = std::max(c1sq_raw, 0.0);

  const Eigen::Vector2d total = c1sq * d1 + c2sq * d2 + c3sq * d3;
  out.residual = total.norm();
  if (out.residual > kTripleResidual) return out;

  out.feasible = true;
  out.c1 = std::sqrt(c1sq);
  out.c2 = std::sqrt(c2sq);
  out.c3 = std::sqrt(c3sq);
  return out;
}

PlanarDecomposition planar_scaling(const Frame& F, bool require_criterion,
                                   const Config& cfg) {
  require_planar_unit(F, cfg);
  if (require_criterion && !planar_scaling_criterion(F, cfg))
    throw Error(Errc::ConeCriterionViolated,
                "a unit vector violates the planar cone condition; no strict scaling exists");

  const int k = F.k();
  const Eigen::MatrixXd V = F.vectors.real();

  PlanarDecomposition dec;
  dec.csquared = Eigen::VectorXd::Zero(k);

  std::vector<char> has_partner(k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (std::abs(V.col(a).dot(V.col(b))) <= kOrthogonal) {
        has_partner[a] = 1;
        has_partner[b] = 1;
        dec.pairs.emplace_back(a, b);
        dec.csquared(a) += 1.0;
        dec.csquared(b) += 1.0;
      }

  for (int a = 0; a < k; ++a) {
    if (has_partner[a]) continue;
    for (int b = 0; b < k; ++b) {
      if (b == a) continue;
      for (int c = b + 1; c < k; ++c) {
        if (c == a) continue;
        const TripleScaling t =
            solve_triple(V.col(a), V.col(b), V.col(c), cfg);
        if (!t.feasible) continue;
        dec.triples.push_back({a, b, c, t.c1, t.c2, t.c3});
        dec.csquared(a) += t.c1 * t.c1;
        dec.csquared(b) += t.c2 * t.c2;
        dec.csquared(c) += t.c3 * t.c3;
      }
    }
  }

  for (int i = 0; i < k; ++i)
    if (!(dec.csquared(i) > 0.0))
      throw Error(Errc::AccumulationFailed,
                  "vector " + std::to_string(i + 1) + " received no weight");

  Eigen::Vector2d total = Eigen::Vector2d::Zero();
  for (int i = 0; i < k; ++i) total += dec.csquared(i) * diagram_dir(V.col(i));
  dec.residual = total.norm();
  const double mass = dec.csquared.sum();
  if (dec.residual > kTallyResidual * mass)
    throw Error(Errc::AccumulationFailed,
                "tally does not cancel: residual " + std::to_string(dec.residual) +
                    " against mass " + std::to_string(mass));

  // Normalize to sum c^2 = n = 2 so the tight constant is 1.
  dec.coefficients = (dec.csquared * (2.0 / mass)).cwiseSqrt();
  dec.lambda = dec.coefficients.squaredNorm() / 2.0;
  return dec;
}

}  // namespace tfs
