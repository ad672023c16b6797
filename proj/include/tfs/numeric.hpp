#pragma once

#include <cstdint>
#include <vector>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/error.hpp"

namespace tfs {

// Self-contained dense symmetric eigensolver (cyclic-by-rows Jacobi).
// Eigenvalues ascending; eigenvector columns orthonormal and sign-fixed so
// results are deterministic: in each column the entry of largest magnitude
// (lowest index on ties) is made positive.
struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
};

// Throws NotSymmetric when max |M - M^T| exceeds tol_sym * max(1, max|M|),
// NoConvergence when the off-diagonal Frobenius norm is still above
// 1e-12 * ||M||_F after max_jacobi_sweeps sweeps.
EigenDecomposition sym_eigen(const Eigen::MatrixXd& M, const Config& cfg = {});

// Numerical kernel of a PSD matrix.  Eigenvalues at or below
// tol_null * max(1, lambda_max) count as zero.
struct NullSpaceData {
  Eigen::MatrixXd basis;     // k x l, orthonormal columns spanning the kernel
  Eigen::VectorXd spectrum;  // all k eigenvalues, ascending
  double threshold = 0.0;    // the absolute cutoff that was applied
  // Spectral gap across the cutoff: smallest retained eigenvalue minus
  // largest discarded one (distance of the spectrum to zero when nothing is
  // discarded; zero when everything is).
  double rank_gap = 0.0;
  // Some eigenvalue lies within borderline_factor of the cutoff, so the
  // nullity itself is in doubt.
  bool borderline = false;

  int nullity() const { return static_cast<int>(basis.cols()); }
  // Row i of the basis: the coordinates of the i-th coordinate axis in the
  // kernel, the point set all hull queries run on.
  std::vector<Eigen::VectorXd> row_vectors() const;
};

// Throws NotPSD when some eigenvalue is below -tol_psd * max(1, ||M||_F).
NullSpaceData null_space(const Eigen::MatrixXd& M, const Config& cfg = {});

// Exact-by-construction decision of 0 in conv{points}.  Either outcome comes
// with a certificate that re-checks by direct evaluation:
//   contains_zero:  weights t >= 0, sum t = 1, || sum t_i r_i || <= tol_hull
//   otherwise:      witness y with <y, r_i> > 0 for every i
// The optimizer is an away-step Frank-Wolfe on 1/2 ||x||^2 over the hull;
// witnesses are polished with the perceptron before being reported.
// A decision is flagged borderline when it holds by less than
// borderline_factor times tol_hull.  Throws IterationLimit when neither side
// can be certified within max_hull_iterations.
struct HullDecision {
  bool contains_zero = false;
  Eigen::VectorXd weights;        // set iff contains_zero
  Eigen::VectorXd witness;        // set iff !contains_zero, unit norm
  double nearest_norm = 0.0;      // ||sum t_i r_i|| resp. the final iterate norm
  bool borderline = false;
  std::uint64_t iterations = 0;
  std::uint64_t perceptron_updates = 0;  // polish cost (witness side only)
};

HullDecision hull_membership(const std::vector<Eigen::VectorXd>& points,
                             const Config& cfg = {});

// Classic perceptron: repeatedly add the first (lowest-index) normalized
// point with <y, r_i/||r_i||> <= 0 until all inner products are strictly
// positive.  Throws IterationCap once `cap` updates have been spent (also
// immediately when some point is zero, since no separator can exist).
Eigen::VectorXd perceptron_witness(const std::vector<Eigen::VectorXd>& points,
                                   Eigen::VectorXd y0, std::uint64_t cap,
                                   std::uint64_t* updates = nullptr);

}  // namespace tfs
