#include "holdcert/optimize.hpp"

#include <gsl/gsl_multimin.h>

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace holdcert::opt {

namespace {

struct Trampoline {
  const std::function<double(const Eigen::VectorXd&)>* f;
  Eigen::VectorXd scratch;
};

double call_objective(const gsl_vector* v, void* params) {
  auto* t = static_cast<Trampoline*>(params);
  for (Eigen::Index i = 0; i < t->scratch.size(); ++i) t->scratch[i] = gsl_vector_get(v, i);
  const double value = (*t->f)(t->scratch);
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

}  // namespace

MinimizeResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                           const Eigen::VectorXd& x0, double step, double size_tol,
                           int max_iter) {
  const auto n = static_cast<size_t>(x0.size());
  Trampoline tramp{&f, Eigen::VectorXd(x0.size())};

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &call_objective;
  fn.params = &tramp;

  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (size_t i = 0; i < n; ++i) gsl_vector_set(x, i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(ss, step);

  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x, ss);

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol) == GSL_SUCCESS) break;
  }

  MinimizeResult out;
  out.x.resize(x0.size());
  for (size_t i = 0; i < n; ++i) out.x[static_cast<Eigen::Index>(i)] = gsl_vector_get(s->x, i);
  out.value = s->fval;
  out.iterations = iter;

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return out;
}

ScalarMin brent_minimize(const std::function<double(double)>& f, double lo, double hi, int bits) {
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::brent_find_minima(f, lo, hi, bits, max_iter);
  return {r.first, r.second};
}

ScalarMin grid_then_brent(const std::function<double(double)>& f, double lo, double hi, int n) {
  n = std::max(n, 2);
  const double h = (hi - lo) / n;
  ScalarMin best{lo, f(lo)};
  int best_i = 0;
  for (int i = 1; i <= n; ++i) {
    const double x = lo + i * h;
    const double v = f(x);
    if (v < best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  const double a = lo + std::max(0, best_i - 1) * h;
  const double b = lo + std::min(n, best_i + 1) * h;
  const ScalarMin refined = brent_minimize(f, a, b);
  return refined.value < best.value ? refined : best;
}

}  // namespace holdcert::opt
