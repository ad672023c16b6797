#pragma once

#include <complex>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/error.hpp"

namespace tfs {

using cd = std::complex<double>;

enum class Field { Real, Complex };

// Inner product, conjugate-linear in the second slot:
//   <u, v> = sum_l u(l) * conj(v(l)).
inline cd inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return v.dot(u);  // Eigen's dot conjugates its *first* argument
}

// A finite sequence of vectors in R^n or C^n, stored as the columns of an
// n x k matrix.  Real frames keep exact zero imaginary parts.  The unit_norm
// flag is a claim that is enforced by validate_frame; operations that require
// unit vectors demand the flag.
struct Frame {
  Field field = Field::Real;
  int n = 0;
  bool unit_norm = false;
  Eigen::MatrixXcd vectors;  // n x k, column i = f_i

  int k() const { return static_cast<int>(vectors.cols()); }
  Eigen::VectorXcd vec(int i) const { return vectors.col(i); }
};

Frame real_frame(const Eigen::MatrixXd& columns, bool unit_norm = true);
Frame complex_frame(const Eigen::MatrixXcd& columns, bool unit_norm = true);

// Throws InvalidFrame when shapes/entries are malformed, when a Real frame
// carries nonzero imaginary parts, or when unit_norm is claimed but some
// ||f_i|| is farther than tol_unit from 1.
void validate_frame(const Frame& F, const Config& cfg = {});

struct FrameOperator {
  Field field = Field::Real;
  Eigen::MatrixXcd matrix;  // n x n, Hermitian by construction
};

struct Gramian {
  Field field = Field::Real;
  Eigen::MatrixXcd matrix;  // k x k, Hermitian by construction
};

struct TightnessReport {
  bool is_frame = false;  // frame operator has full rank n
  bool is_tight = false;  // ||S - lambda I||_F <= tol_tight * max(1, lambda)
  double lambda = 0.0;    // trace(S) / n = (sum ||f_i||^2) / n
  double residual = 0.0;  // ||S - lambda I||_F
};

// S = sum_i f_i f_i^*, exactly Hermitian (symmetrized after assembly).
FrameOperator frame_operator(const Frame& F, const Config& cfg = {});

// G(i, j) = <f_i, f_j>, exactly Hermitian with real diagonal.
Gramian gramian(const Frame& F, const Config& cfg = {});

// Tightness is judged against the best constant lambda = trace(S)/n; the
// zero sequence reports residual 0 (and is_frame = false distinguishes it).
TightnessReport check_tight(const Frame& F, const Config& cfg = {});

// {c_i f_i}.  Requires c_i >= 0 and finite; the unit_norm flag survives only
// when every coefficient is exactly 1.
Frame scale_frame(const Frame& F, const Eigen::VectorXd& c, const Config& cfg = {});

}  // namespace tfs
