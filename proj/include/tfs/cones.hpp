#pragma once

#include <cstdint>
#include <string>
#include <vector>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/frame.hpp"

namespace tfs {

// Necessary condition for strict scalability of a real unit-norm frame: if
// sum c_i^2 f_i f_i^T = I with all c_i > 0 and sum c_i^2 = n, then for every
// unit f,  sum c_i^2 (<f, f_i>^2 - 1/n) = 0,  so no unit f can satisfy
// |<f, f_i>| >= 1/sqrt(n) for every i with strict inequality somewhere.
// Such an f is a *violation*; finding one certifies the frame is not
// strictly scalable.

double cone_threshold(int n);  // 1/sqrt(n)

// |<f, f_i>| - 1/sqrt(n) for each frame vector.  Real frames only.
Eigen::VectorXd cone_margins(const Frame& F, const Eigen::VectorXd& f,
                             const Config& cfg = {});

// Acceptance slacks for violation reports: every margin >= -kConeSlack and
// at least one margin > kConeStrict.  All margins within [-kConeSlack,
// kConeStrict] instead is a boundary contact (f touches every cone without
// certifying anything).
inline constexpr double kConeSlack = 1e-12;
inline constexpr double kConeStrict = 1e-9;

struct ViolationReport {
  bool found = false;
  Eigen::VectorXd violation;      // unit vector, set iff found
  Eigen::VectorXd margins;        // margins of the reported / best candidate
  double best_min_margin = 0.0;   // min margin of the best candidate seen
  bool boundary_contact = false;  // set only when !found
  Eigen::VectorXd contact_point;  // set iff boundary_contact
};

// Exact decision in the plane.  Mapping f(angle t) to its diagram direction
// d(angle 2t) turns each constraint |<f, f_i>| >= 1/sqrt(2) into a
// half-plane <d, d_i> >= 0, so the feasible set is an intersection of
// half-planes through the origin: empty, a ray/wedge bounded by rotations of
// the d_i, a half-plane, a line, or the whole plane.  If any feasible
// direction with one strict product exists, one already occurs among
// {d_i, +/- quarter rotations of d_i}; in f-space those are the frame
// vectors rotated by 0 and +/- pi/4, which is the candidate set scanned.
ViolationReport cone_violation_r2(const Frame& F, const Config& cfg = {});

// Seeded multi-start heuristic for n >= 3: projected gradient ascent on
// min_i s_i <f, f_i> with the sign pattern s frozen per restart, step-halving
// refinement, and an active-set centroid polish (which lands exactly on
// symmetric contact points).  Reports found only with certified margins;
// never certifies absence.  Deterministic for a fixed (seed, restarts).
ViolationReport cone_violation_search(const Frame& F, std::uint64_t seed,
                                      int restarts, const Config& cfg = {});

// Grid samples of the cone intersection for plotting.  subset holds 1-based
// vector indices (empty = all).  Grid points keep min margin >= -slack;
// slack < 0 picks one angular grid step, which is what makes measure-zero
// intersections (isolated contact points) show up as small clusters.
struct ConeSampleSet {
  int n = 0;
  std::vector<int> subset;
  int grid = 0;
  double slack = 0.0;
  std::vector<Eigen::VectorXd> points;  // grid order
};

ConeSampleSet export_cone_samples(const Frame& F, const std::vector<int>& subset,
                                  int grid, double slack = -1.0,
                                  const Config& cfg = {});

// "# n=<n> subset=<indices>" then one point per line, 17 significant digits.
std::string format_cone_samples(const ConeSampleSet& samples);

// The five-vector family in R^3: three copies of a symmetric perturbation
// (u, v, v), (v, u, v), (v, v, u) with u = sqrt(1 - 2 v^2), plus
// (e1 + e2)/sqrt(2) and (e1 - e2)/sqrt(2).  Unit-norm for 0 < v < 1/sqrt(2)
// (throws OutOfRange outside); not scalable anywhere in that range, while
// the v -> 0 limit {e1, e2, e3, ...} is strictly scalable.
Frame perturbed_frame(double v);

}  // namespace tfs
