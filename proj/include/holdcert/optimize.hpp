#pragma once

#include <Eigen/Core>

#include <functional>

namespace holdcert::opt {

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

// Derivative-free simplex minimization (GSL nmsimplex2). `step` is the
// initial simplex edge; stops when the simplex size drops below `size_tol`.
MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step, double size_tol,
                           int max_iter = 2000);

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
};

// Brent minimization on [lo, hi].
ScalarMin brent_minimize(const std::function<double(double)>& f, double lo, double hi,
                         int bits = 48);

// Sample f on n+1 uniform points of [lo, hi], then Brent-refine around the best.
ScalarMin grid_then_brent(const std::function<double(double)>& f, double lo, double hi, int n);

}  // namespace holdcert::opt
