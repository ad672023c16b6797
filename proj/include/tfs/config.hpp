#pragma once

#include <cstdint>

namespace tfs {

// Execution policy for the assembly/scan kernels.  Auto picks the parallel
// path once the work estimate is large enough to amortize thread startup.
enum class Exec { Auto, Serial, Parallel };

// All tolerances and caps in one place, threaded through every operation.
// Relative tolerances state their reference scale next to the default.
struct Config {
  double tol_unit = 1e-8;    // | ||f|| - 1 | for unit-norm checks
  double tol_sym = 1e-12;    // symmetry, relative to max |entry|
  double tol_tight = 1e-9;   // tightness residuals, relative to lambda
  double tol_psd = 1e-10;    // PSD floor, relative to ||M||_F
  double tol_null = 1e-8;    // null threshold, relative to max(1, lambda_max)
  double tol_eig = 1e-10;    // eigen residual / eigenvalue comparisons
  double tol_rank = 1e-10;   // rank decisions on frame/Gram operators
  double tol_hull = 1e-9;    // convex hull membership trust region
  double borderline_factor = 10.0;  // width of the "too close to call" band

  int max_jacobi_sweeps = 100;
  std::uint64_t max_hull_iterations = 1000000;
  std::uint64_t max_perceptron_updates = 1000000;

  Exec exec = Exec::Auto;
};

}  // namespace tfs
