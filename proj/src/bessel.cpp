#include "rescat/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rescat {

namespace {

constexpr double kSaturate = 1e280;

// Upward recurrence for C_l (y-type): stable for all l at fixed x.
// c_prev = C_{l-1}, seeded by C_{-1} = -sin x, C_0 = cos x.
void c_ladder(int ell_max, double x, std::vector<double>& c) {
  c.resize(ell_max + 1);
  double c_prev = -std::sin(x);
  double c_cur = std::cos(x);
  c[0] = c_cur;
  for (int l = 0; l < ell_max; ++l) {
    double c_next = (2.0 * l + 1.0) / x * c_cur - c_prev;
    if (std::abs(c_next) > kSaturate) c_next = std::copysign(kSaturate, c_next);
    c_prev = (std::abs(c_cur) >= kSaturate) ? std::copysign(kSaturate, c_cur) : c_cur;
    c_cur = c_next;
    c[l + 1] = c_cur;
  }
}

// Downward Miller recurrence for S_l (j-type), normalized through the
// cross-product identity S_0 C_1 - S_1 C_0 = 1.
void s_ladder_downward(int ell_max, double x, const std::vector<double>& c,
                       std::vector<double>& s) {
  if (ell_max == 0) {
    s.assign(1, std::sin(x));
    return;
  }
  const int start = ell_max + 16 + static_cast<int>(2.0 * std::sqrt(ell_max + 1.0));
  double up = 0.0;          // ~ S_{start+1}
  double cur = 1e-280;      // ~ S_{start}
  std::vector<double> raw(ell_max + 1, 0.0);
  for (int l = start; l >= 1; --l) {
    const double down = (2.0 * l + 1.0) / x * cur - up;
    up = cur;
    cur = down;
    if (l - 1 <= ell_max) raw[l - 1] = cur;
    if (std::abs(cur) > 1e260) {
      const double f = 1e-260;
      cur *= f;
      up *= f;
      for (int j = std::min(ell_max, std::max(l - 1, 0)); j <= ell_max; ++j) raw[j] *= f;
    }
  }
  // raw[l] ~ alpha * S_l for l <= ell_max; fix alpha via the exact identity
  const double alpha = raw[0] * c[1] - raw[1] * c[0];
  if (alpha == 0.0) throw NumericsError("riccati ladder normalization failed");
  s.resize(ell_max + 1);
  for (int l = 0; l <= ell_max; ++l) {
    const double v = raw[l] / alpha;
    s[l] = std::abs(v) < 1e-300 ? 0.0 : v;
  }
}

// Upward recurrence for S_l: stable only in the oscillatory zone (x > l).
void s_ladder_upward(int ell_max, double x, std::vector<double>& s) {
  s.resize(ell_max + 1);
  double s_prev = std::cos(x);  // S_{-1}
  double s_cur = std::sin(x);
  s[0] = s_cur;
  for (int l = 0; l < ell_max; ++l) {
    const double s_next = (2.0 * l + 1.0) / x * s_cur - s_prev;
    s_prev = s_cur;
    s_cur = s_next;
    s[l + 1] = s_cur;
  }
}

}  // namespace

void riccati_ladder(int ell_max, double x, std::vector<double>& s,
                    std::vector<double>& c) {
  if (ell_max < 0) throw InvalidInput("riccati_ladder: ell_max must be >= 0");
  if (!(x > 0.0)) throw InvalidInput("riccati_ladder: x must be positive");
  c_ladder(ell_max, x, c);
  if (x > ell_max + 10.0) {
    s_ladder_upward(ell_max, x, s);
  } else {
    s_ladder_downward(ell_max, x, c, s);
  }
}

RiccatiPair riccati_sc(int ell, double x) {
  std::vector<double> s, c;
  riccati_ladder(ell, x, s, c);
  return {s[ell], c[ell]};
}

double free_envelope(int ell, double x) {
  if (ell == 0) return 1.0;
  std::vector<double> s, c;
  riccati_ladder(ell, x, s, c);
  if (std::abs(c[ell]) >= kSaturate)
    return std::numeric_limits<double>::infinity();
  return s[ell] * s[ell] + c[ell] * c[ell];
}

namespace {

// Asymptotic tail of the defect integral, valid for x >~ 20 sqrt(lambda).
double defect_series(double lam, double x) {
  const double x2 = x * x;
  return lam / (2.0 * x) + lam * (lam - 6.0) / (24.0 * x2 * x) +
         lam * (lam * lam - 28.0 * lam + 60.0) / (80.0 * x2 * x2 * x);
}

}  // namespace

double numerov_wavenumber(double k, double h) {
  const double x2 = k * h * k * h;
  const double c = (1.0 - 5.0 * x2 / 12.0) / (1.0 + x2 / 12.0);
  if (!(c > -1.0 && c < 1.0)) return k;  // step too coarse; no correction
  return std::acos(c) / h;
}

double free_phase_defect(int ell, double x) {
  if (ell == 0) return 0.0;
  if (!(x > 0.0)) throw InvalidInput("free_phase_defect: x must be positive");
  const double lam = static_cast<double>(ell) * (ell + 1.0);
  const double anchor = 20.0 * std::sqrt(lam + 1.0);
  if (x >= anchor) return defect_series(lam, x);

  // log-spaced Simpson over [x, anchor], series beyond the anchor
  const double span = std::log(anchor / x);
  int n = 2 * std::max(8, static_cast<int>(std::ceil(span * 24.0)));
  const double du = span / n;
  auto integrand = [&](int i) {
    const double t = x * std::exp(i * du);
    const double rho = free_envelope(ell, t);
    const double d = std::isinf(rho) ? 1.0 : 1.0 - 1.0 / rho;
    return d * t;  // du-measure: dt = t du
  };
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += integrand(i);
  for (int i = 2; i < n; i += 2) even += integrand(i);
  const double quad = du / 3.0 * (integrand(0) + integrand(n) + 4.0 * odd + 2.0 * even);
  return quad + defect_series(lam, anchor);
}

}  // namespace rescat
