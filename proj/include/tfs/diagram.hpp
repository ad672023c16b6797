#pragma once

#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/frame.hpp"

namespace tfs {

// The diagram vector of f in R^n (n >= 2) stacks, over index pairs a < b in
// lexicographic order,
//     (f(a)^2 - f(b)^2) / sqrt(n-1)          [n(n-1)/2 difference entries]
//     sqrt(2n) f(a) f(b) / sqrt(n-1)         [n(n-1)/2 product entries]
// and for C^n the product block holds the two conjugate products
//     sqrt(n) f(a) conj(f(b)) / sqrt(n-1),  sqrt(n) conj(f(a)) f(b) / sqrt(n-1)
// adjacent per pair, giving 3n(n-1)/2 entries.  Key identities:
//     ||tilde f|| = ||f||^2
//     <tilde f, tilde g> = (n |<f, g>|^2 - ||f||^2 ||g||^2) / (n - 1)
// A unit-norm sequence is tight exactly when its diagram vectors sum to zero.
struct DiagramVector {
  Field field = Field::Real;
  int n = 0;
  Eigen::VectorXcd data;  // real field: entries have exact zero imaginary part

  int dim() const { return static_cast<int>(data.size()); }
};

struct DiagramGramian {
  Eigen::MatrixXd matrix;  // k x k, real symmetric PSD: (i,j) = <tilde f_i, tilde f_j>
};

// Materializes tilde f.  Throws DimensionTooSmall for n < 2.
DiagramVector diagram_vector(const Eigen::VectorXcd& f, Field field, const Config& cfg = {});

// <tilde f, tilde g> by the closed form above; O(n), no materialization.
double diagram_inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, Field field,
                     const Config& cfg = {});

// Gramian of the diagram vectors of a unit-norm frame (flag required).
DiagramGramian diagram_gramian(const Frame& F, const Config& cfg = {});

// sum_i w(i) * tilde f_i with w >= 0 (pass ones for the plain sum).
DiagramVector diagram_sum(const Frame& F, const Eigen::VectorXd& w, const Config& cfg = {});
DiagramVector diagram_sum(const Frame& F, const Config& cfg = {});

// || sum_i tilde f_i || <= tol_tight * sum_i ||f_i||^2.  Throws AllZeroFrame
// when every vector is zero (tightness is meaningless there).
bool is_tight_by_diagram(const Frame& F, const Config& cfg = {});

}  // namespace tfs
