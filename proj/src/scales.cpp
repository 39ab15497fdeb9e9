#include "rescat/scales.hpp"

namespace rescat {

ScaleSet derive_scales(const TailSpec& tail, double mu) {
  tail.validate();
  if (!(mu > 0.0)) throw InvalidInput("reduced mass must be positive");
  ScaleSet s;
  s.r_star = std::pow(2.0 * mu * tail.c_n, 1.0 / (tail.n - 2));
  s.e_star = 1.0 / (2.0 * mu * s.r_star * s.r_star);
  s.k_star = 1.0 / s.r_star;
  return s;
}

double g_factor(int n) {
  if (n < 3) throw InvalidInput("g_factor requires n >= 3");
  const double nn = static_cast<double>(n);
  return nn / (nn - 2.0) * std::pow((nn - 2.0) / 2.0, 2.0 / nn);
}

double cutoff_lambda(const TailSpec& tail, double mu, double energy) {
  if (!(energy > 0.0)) throw InvalidInput("cutoff_lambda requires E > 0");
  const ScaleSet s = derive_scales(tail, mu);
  const double nn = tail.n;
  return g_factor(tail.n) * std::pow(energy / s.e_star, (nn - 2.0) / nn);
}

double energy_for_lambda(const TailSpec& tail, double mu, double lambda) {
  if (!(lambda > 0.0)) throw InvalidInput("energy_for_lambda requires Lambda > 0");
  const ScaleSet s = derive_scales(tail, mu);
  const double nn = tail.n;
  return s.e_star * std::pow(lambda / g_factor(tail.n), nn / (nn - 2.0));
}

double langevin_sigma(const TailSpec& tail, double mu, double energy) {
  if (!(energy > 0.0)) throw InvalidInput("langevin_sigma requires E > 0");
  tail.validate();
  if (!(mu > 0.0)) throw InvalidInput("reduced mass must be positive");
  return kPi * g_factor(tail.n) * std::pow(tail.c_n / energy, 2.0 / tail.n);
}

BarrierGeometry barrier_geometry(const TailSpec& tail, double mu, double ell) {
  tail.validate();
  if (!(mu > 0.0)) throw InvalidInput("reduced mass must be positive");
  const double lam = ell * (ell + 1.0);
  if (!(lam > 0.0)) throw InvalidInput("no centrifugal barrier for ell = 0");
  BarrierGeometry b;
  b.ell = ell;
  b.s_ell = std::pow(tail.n * tail.c_n * mu / lam, 1.0 / (tail.n - 2));
  b.e_top = -tail.c_n * std::pow(b.s_ell, -tail.n) +
            lam / (2.0 * mu * b.s_ell * b.s_ell);
  return b;
}

double critical_ell(double lambda) {
  if (lambda < 0.0) throw InvalidInput("Lambda must be non-negative");
  return 0.5 * (std::sqrt(1.0 + 4.0 * lambda) - 1.0);
}

int sum_cutoff(const TailSpec& tail, double mu, double energy) {
  return static_cast<int>(std::ceil(critical_ell(cutoff_lambda(tail, mu, energy))));
}

}  // namespace rescat
