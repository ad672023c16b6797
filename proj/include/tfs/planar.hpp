#pragma once

#include <vector>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/frame.hpp"

namespace tfs {

// Constructive scaling for unit-norm frames in the plane.  In R^2 the cone
// condition is not merely necessary: a planar frame is strictly scalable
// exactly when no unit f meets every cone |<f, f_i>| >= 1/sqrt(2) with one
// strict inequality, and in that case the coefficients can be assembled from
// orthogonal pairs and three-vector subframes alone.

// Quarter turn (x, y) -> (-y, x); maps a diagram direction to the normal of
// its half-plane constraint.
Eigen::Vector2d rotate_quarter(const Eigen::Vector2d& v);

// The exact planar cone test, phrased as a predicate: true when no unit
// vector violates the necessary condition (see cones.hpp).
bool planar_scaling_criterion(const Frame& F, const Config& cfg = {});

// Tight scaling of a single triple of unit vectors in R^2, if one exists.
// In the diagram plane each d_i is a unit direction; writing p_j =
// <Jd_1, d_j> for j = 2, 3, a nonnegative solution of
// c_1^2 d_1 + c_2^2 d_2 + c_3^2 d_3 = 0 exists only when p_2 and p_3 are
// both ~zero (then c_2 = c_3 = 1) or of strictly opposite signs (then
// c_2^2 = |p_3|, c_3^2 = |p_2|), with c_1^2 = -<d_1, c_2^2 d_2 + c_3^2 d_3>
// required to be nonnegative.  Infeasible is a verdict, not an error.
struct TripleScaling {
  bool feasible = false;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double residual = 0.0;  // ||c_1^2 d_1 + c_2^2 d_2 + c_3^2 d_3||
};

TripleScaling solve_triple(const Eigen::Vector2d& f1, const Eigen::Vector2d& f2,
                           const Eigen::Vector2d& f3, const Config& cfg = {});

// Coefficients assembled combinatorially:
//   - every unordered orthogonal pair adds 1 to both squared coefficients;
//   - every vector without an orthogonal partner anchors triples with all
//     unordered pairs of the remaining vectors, and each feasible triple
//     accumulates its squared local coefficients.
// The tally must end strictly positive everywhere and sum to a zero diagram
// vector (throws AccumulationFailed otherwise, with the residual).  With
// require_criterion, the cone test runs first (throws ConeCriterionViolated).
struct PlanarDecomposition {
  struct Triple {
    int a = 0, b = 0, c = 0;     // 0-based indices, a the anchor
    double ca = 0.0, cb = 0.0, cc = 0.0;
  };
  std::vector<std::pair<int, int>> pairs;  // orthogonal pairs used
  std::vector<Triple> triples;             // feasible triples used
  Eigen::VectorXd csquared;                // raw tally C_i^2
  Eigen::VectorXd coefficients;            // normalized: sum c^2 = 2, lambda = 1
  double lambda = 0.0;
  double residual = 0.0;  // ||sum C_i^2 d_i|| of the raw tally
};

PlanarDecomposition planar_scaling(const Frame& F, bool require_criterion = true,
                                   const Config& cfg = {});

}  // namespace tfs
