#pragma once

#include <cstdint>
#include <vector>
#include <Eigen/Dense>

#include "tfs/config.hpp"
#include "tfs/frame.hpp"

// Data-parallel assembly and scan kernels.  Each kernel exists twice:
//
//   kernels::reference::*  -- plain serial loops, the readable ground truth
//   kernels::*             -- dispatching entry points that run the OpenMP
//                             path when Exec (and the work estimate) ask for
//                             it, and fall back to the reference otherwise
//
// The parallel paths split work over *independent output entries* and keep
// the per-entry accumulation order identical to the reference, so the two
// implementations agree bit for bit -- the unit tests assert exact equality
// and the bench target times them against each other.
namespace tfs::kernels {

// True when `exec` (plus the rough flop estimate `work`) selects the OpenMP
// path.  Always false in builds without OpenMP.
bool run_parallel(Exec exec, std::size_t work);

// Lexicographic list of index pairs (a, b), a < b, over {0, ..., n-1}.
struct PairTable {
  std::vector<int> a;
  std::vector<int> b;
  int count() const { return static_cast<int>(a.size()); }
};
PairTable pair_table(int n);

namespace reference {

// S = sum_i w(i) * f_i f_i^*   (V is n x k, column i = f_i)
Eigen::MatrixXcd frame_operator(const Eigen::MatrixXcd& V, const Eigen::VectorXd& w);

// G(i, j) = <f_i, f_j>
Eigen::MatrixXcd gramian(const Eigen::MatrixXcd& V);

// Gt(i, j) = (n |<f_i, f_j>|^2 - ||f_i||^2 ||f_j||^2) / (n - 1)
Eigen::MatrixXd diagram_gramian(const Eigen::MatrixXcd& V, int n);

// Weighted sum of diagram vectors, laid out like diagram_vector():
// difference block over pairs, then product block(s).
Eigen::VectorXcd diagram_sum(const Eigen::MatrixXcd& V, Field field, const Eigen::VectorXd& w);

// Feasibility mask over a sphere / circle grid: mask[g] = 1 when the grid
// point p satisfies |<p, axes_j>| >= threshold - slack for every column j.
std::vector<std::uint8_t> sphere_cone_mask(int bands, const Eigen::MatrixXd& axes,
                                           double threshold, double slack);
std::vector<std::uint8_t> circle_cone_mask(int steps, const Eigen::MatrixXd& axes,
                                           double threshold, double slack);

}  // namespace reference

Eigen::MatrixXcd frame_operator(const Eigen::MatrixXcd& V, const Eigen::VectorXd& w,
                                Exec exec = Exec::Auto);
Eigen::MatrixXcd gramian(const Eigen::MatrixXcd& V, Exec exec = Exec::Auto);
Eigen::MatrixXd diagram_gramian(const Eigen::MatrixXcd& V, int n, Exec exec = Exec::Auto);
Eigen::VectorXcd diagram_sum(const Eigen::MatrixXcd& V, Field field, const Eigen::VectorXd& w,
                             Exec exec = Exec::Auto);
std::vector<std::uint8_t> sphere_cone_mask(int bands, const Eigen::MatrixXd& axes,
                                           double threshold, double slack,
                                           Exec exec = Exec::Auto);
std::vector<std::uint8_t> circle_cone_mask(int steps, const Eigen::MatrixXd& axes,
                                           double threshold, double slack,
                                           Exec exec = Exec::Auto);

// Grid parameterizations shared by the masks and the sample exporter.
// Sphere: 2*bands^2 points, g = a * (2*bands) + b with colatitude
// pi*(a+0.5)/bands and longitude pi*b/bands.  Circle: `steps` points at
// angle 2*pi*b/steps.
Eigen::Vector3d sphere_grid_point(int bands, std::int64_t g);
Eigen::Vector2d circle_grid_point(int steps, std::int64_t b);

}  // namespace tfs::kernels
