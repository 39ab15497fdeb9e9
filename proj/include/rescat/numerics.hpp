#pragma once

#include <functional>

#include "rescat/common.hpp"

namespace rescat {

/// Bracketed 1-D minimization (Brent). The minimum must lie in [a, b].
double brent_minimize(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, int max_iter = 200);

/// Bracketed root finding (bisection with secant acceleration).
/// f(a) and f(b) must have opposite signs.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double x_tol, int max_iter = 200);

/// Adaptive Simpson quadrature to an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

/// Composite Simpson over n uniform steps (n even) starting at a with step h.
/// Samples are provided through f(i) for i = 0..n.
double simpson_uniform(const std::function<double(int)>& sample, int n, double h);

/// Least-squares straight line y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};
LinearFit fit_line(const double* x, const double* y, int n);

}  // namespace rescat
