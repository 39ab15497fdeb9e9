#include "rescat/correction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rescat/numerics.hpp"

namespace rescat {

double F_closed(const CorrectionInputs& in) {
  if (in.lambda < 0.0) throw InvalidInput("F_closed: Lambda must be >= 0");
  const double x = in.lambda * in.delta_A0;
  const double d = in.delta_delta0;
  double f;
  if (std::abs(x) < 1e-6) {
    // three-term expansion around x = 0
    f = square(std::sin(d)) - 0.5 * x * std::sin(2.0 * d) +
        x * x / 3.0 * std::cos(2.0 * d);
  } else {
    f = 0.5 - std::sin(x) / (2.0 * x) * std::cos(2.0 * d - x);
  }
  return std::clamp(f, 0.0, 1.0);
}

double F_quadrature(const std::function<double(double)>& delta_eta_of_lambda,
                    double lambda, double abs_tol) {
  if (!(lambda > 0.0)) {
    if (lambda == 0.0) return square(std::sin(delta_eta_of_lambda(0.0)));
    throw InvalidInput("F_quadrature: Lambda must be >= 0");
  }
  const double integral = adaptive_simpson(
      [&](double lam) { return square(std::sin(delta_eta_of_lambda(lam))); }, 0.0,
      lambda, abs_tol * lambda);
  return integral / lambda;
}

double f_locking(double delta_delta0) { return square(std::sin(delta_delta0)); }

SigmaModel sigma_model(double sigma0, double f_corr, double sigma_L, double k,
                       const CorrectionInputs& in) {
  if (sigma0 < 0.0 || f_corr < 0.0 || sigma_L < 0.0)
    throw InvalidInput("sigma_model: inputs must be non-negative");
  SigmaModel out;
  out.sigma_model = sigma0 + f_corr * sigma_L;
  out.sigma_lock = (kPi / (k * k) + sigma_L) * square(std::sin(in.delta_delta0));
  const double x = in.lambda * in.delta_A0;
  const double osc_factor = (std::abs(x) < 1e-6)
                                ? (1.0 - x * x / 6.0) * std::cos(2.0 * in.delta_delta0 - x)
                                : std::sin(x) / x * std::cos(2.0 * in.delta_delta0 - x);
  out.sigma_osc = 0.5 * sigma_L * osc_factor;
  return out;
}

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::suppressed: return "suppressed";
    case CaseTag::average: return "average";
    case CaseTag::enhanced: return "enhanced";
  }
  return "?";
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::wigner: return "wigner";
    case Regime::locking: return "locking";
    case Regime::unlocking: return "unlocking";
  }
  return "?";
}

CaseTag classify_case(double plateau_delta0) {
  const double a = std::abs(plateau_delta0);
  if (a > 0.5 * kPi + 1e-12)
    throw InvalidInput("classify_case: plateau delta_delta0 outside (-pi/2, pi/2]");
  if (a <= kPi / 6.0) return CaseTag::suppressed;
  if (a <= kPi / 3.0) return CaseTag::average;
  return CaseTag::enhanced;
}

RegimeLabel classify(double plateau_delta0, double plateau_drift,
                     const std::vector<double>& energies,
                     const std::vector<double>& f_model,
                     const std::vector<double>& f_lock,
                     const std::vector<int>& ell_cutoff, double e_star) {
  const size_t n = energies.size();
  if (n < 2 || f_model.size() != n || f_lock.size() != n || ell_cutoff.size() != n)
    throw InvalidInput("classify: inconsistent scan columns");
  if (energies.back() / energies.front() < 1e6)
    throw InvalidInput("classify: scan must cover at least 6 decades");

  RegimeLabel label;
  label.case_tag = classify_case(plateau_delta0);
  label.e_wigner = e_star;
  label.low_confidence = std::abs(plateau_drift) > 0.2;

  label.e_lock_onset = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < n; ++i) {
    if (ell_cutoff[i] >= 8) {
      label.e_lock_onset = energies[i];
      break;
    }
  }

  // first energy where |F - f| > 0.1 is sustained across half a decade
  label.e_unlock = std::numeric_limits<double>::quiet_NaN();
  const double half_decade = std::sqrt(10.0);
  for (size_t i = 0; i < n; ++i) {
    bool sustained = std::abs(f_model[i] - f_lock[i]) > 0.1;
    bool window_seen = false;
    for (size_t j = i; sustained && j < n && energies[j] <= energies[i] * half_decade;
         ++j) {
      window_seen = energies[j] >= energies[i] * half_decade * 0.99 || j + 1 == n ||
                    window_seen;
      if (std::abs(f_model[j] - f_lock[j]) <= 0.1) sustained = false;
    }
    if (sustained) {
      label.e_unlock = energies[i];
      break;
    }
  }
  return label;
}

Regime regime_at(const RegimeLabel& label, double energy) {
  if (energy <= label.e_wigner) return Regime::wigner;
  if (std::isnan(label.e_unlock) || energy < label.e_unlock) return Regime::locking;
  return Regime::unlocking;
}

}  // namespace rescat
