#include "rescat/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace rescat {

double brent_minimize(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, int max_iter) {
  if (!(a < b)) throw InvalidInput("brent_minimize: bad bracket");
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double tol = rel_tol * std::abs(x) + 1e-300;
    if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) return x;
    double p = 0.0, q = 0.0, r = 0.0;
    bool parabolic = false;
    if (std::abs(e) > tol) {
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      if (std::abs(p) < std::abs(0.5 * q * e) && p > q * (a - x) && p < q * (b - x)) {
        e = d;
        d = p / q;
        parabolic = true;
      }
    }
    if (!parabolic) {
      e = (x < m) ? b - x : a - x;
      d = gold * e;
    }
    const double u = (std::abs(d) >= tol) ? x + d : x + (d > 0 ? tol : -tol);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double x_tol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw InvalidInput("find_root: endpoints do not bracket");
  for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    // secant candidate, fall back to midpoint if it leaves the bracket
    double m = (std::abs(fb - fa) > 0.0) ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
    const double mid = 0.5 * (a + b);
    if (!(m > a && m < b)) m = mid;
    // alternate to guarantee bracket shrinkage
    if (it % 2 == 1) m = mid;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m; fa = fm;
    } else {
      b = m; fb = fm;
    }
  }
  return 0.5 * (a + b);
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole,
                    double abs_tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= max_depth) throw NumericsError("adaptive quadrature did not converge");
  if (std::abs(delta) <= 15.0 * abs_tol) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * abs_tol, depth + 1, max_depth) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * abs_tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth);
}

double simpson_uniform(const std::function<double(int)>& sample, int n, double h) {
  if (n <= 0) return 0.0;
  if (n % 2 != 0) throw InvalidInput("simpson_uniform requires an even step count");
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += sample(i);
  for (int i = 2; i < n; i += 2) even += sample(i);
  return h / 3.0 * (sample(0) + sample(n) + 4.0 * odd + 2.0 * even);
}

LinearFit fit_line(const double* x, const double* y, int n) {
  if (n < 2) throw InvalidInput("fit_line requires at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i]; sy += y[i];
    sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidInput("fit_line: degenerate abscissae");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (int i = 0; i < n; ++i) {
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(y[i] - fit.intercept - fit.slope * x[i]));
  }
  return fit;
}

}  // namespace rescat
