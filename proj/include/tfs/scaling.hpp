#pragma once

#include <cstdint>
#include <string>
#include <vector>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/diagram.hpp"
#include "tfs/frame.hpp"
#include "tfs/numeric.hpp"

namespace tfs {

// Can a unit-norm frame be scaled into a tight frame?
//   StrictlyScalable: yes with every coefficient positive
//   SubsetScalable:   yes, but only with some coefficients equal to zero
//   NotScalable:      no nonzero nonnegative scaling exists
//   Borderline:       the input sits within the tolerance band of a decision
//                     surface; never silently coerced to a yes/no
enum class Verdict { StrictlyScalable, SubsetScalable, NotScalable, Borderline };

const char* verdict_name(Verdict v);

// Machine-checkable evidence for the verdict.  Every certificate re-validates
// by direct evaluation of the stated inequalities.
struct Certificate {
  enum class Kind {
    None,
    StrictWitness,       // y with <y, r_i> > 0 for all rows r_i of the kernel basis
    HullWeights,         // t >= 0, sum t = 1, ||sum t_i r_i|| <= tol_hull
    InvertibleGramian,   // diagram Gramian has no kernel; min eigenvalue recorded
    ConeViolation,       // unit f with |<f, f_i>| >= 1/sqrt(n) for all i, one strict
  };
  Kind kind = Kind::None;
  Eigen::VectorXd witness;
  Eigen::VectorXd weights;
  double min_eigenvalue = 0.0;
  Eigen::VectorXd violation;
};

const char* certificate_kind_name(Certificate::Kind k);

struct ScalingDiagnostics {
  Eigen::VectorXd spectrum;    // diagram Gramian eigenvalues, ascending
  Eigen::MatrixXd null_basis;  // k x l orthonormal kernel basis
  int rank = 0;
  int nullity = 0;
  double rank_gap = 0.0;
  double null_threshold = 0.0;
  bool borderline_rank = false;
  bool borderline_hull = false;
  std::string borderline_reason;
  std::uint64_t hull_iterations = 0;
  std::uint64_t perceptron_updates = 0;
  std::vector<int> zero_set;     // indices forced to coefficient zero
  double tight_residual = -1.0;  // ||S_c - lambda I||_F once coefficients exist
};

struct ScalingResult {
  Verdict verdict = Verdict::Borderline;
  bool has_coefficients = false;
  // Normalized so that sum c_i^2 = n, which pins the tight constant at
  // lambda = 1 (scaling relations between the c_i are homogeneous, so this
  // loses nothing).
  Eigen::VectorXd coefficients;
  double lambda = 0.0;
  Certificate certificate;
  ScalingDiagnostics diagnostics;
};

// The decision pipeline: diagram Gramian -> kernel -> convex position of the
// kernel-basis rows.  No kernel means not scalable; zero outside the row
// hull yields strictly positive coefficients from a witness; zero inside
// forces every index carried by a convex representation of zero to
// coefficient zero, and the test repeats on the remaining rows projected
// onto the orthogonal complement of the forced span.
ScalingResult decide_scaling(const Frame& F, const Config& cfg = {});

// Independent check of a claimed scaling, all three residuals spelled out:
//   (a) || G D G - lambda G ||_F <= tol_tight * lambda * ||G||_F,  D = diag(c^2)
//   (b) || S_c - lambda I ||_F   <= tol_tight * lambda
//   (c) | sum c_i^2 - lambda n | <= tol_tight * lambda * n
struct VerificationReport {
  bool pass = false;
  double gram_residual = 0.0;
  double gram_bound = 0.0;
  double operator_residual = 0.0;
  double operator_bound = 0.0;
  double trace_residual = 0.0;
  double trace_bound = 0.0;
};

VerificationReport verify_scaling(const Frame& F, const Eigen::VectorXd& c, double lambda,
                                  const Config& cfg = {});

// |d_i| for arbitrary (possibly complex) scalars: scaling a frame by d and by
// |d| produces the same frame operator, so tightness questions reduce to
// nonnegative coefficients.
Eigen::VectorXd normalize_scalars(const Eigen::VectorXcd& d);

// The polyhedral description of all strict scalings: coefficients are
// c_i = sqrt(<y, r_i>) for y ranging over {y : <y, r_i> > 0 for all i},
// where r_i are the rows of the kernel basis.  Throws EmptyNullSpace when
// the diagram Gramian is invertible.
struct SolutionRegion {
  Eigen::MatrixXd basis;                 // k x l kernel basis
  std::vector<Eigen::VectorXd> rows;     // r_i, one half-space <y, r_i> >= 0 each
  bool has_interior_point = false;
  Eigen::VectorXd interior_point;        // sample y, scaled so sum <y, r_i> = n
};

SolutionRegion solution_region(const Frame& F, const Config& cfg = {});

}  // namespace tfs
