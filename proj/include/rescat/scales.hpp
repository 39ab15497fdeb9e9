#pragma once

#include "rescat/common.hpp"

namespace rescat {

/// Attractive long-range power-law tail V(r) -> -C_n / r^n.
struct TailSpec {
  int n = 4;      // power-law exponent, n >= 3
  double c_n = 1.0;  // tail coefficient, a.u. (energy * length^n), > 0

  void validate() const {
    if (n < 3) throw InvalidInput("tail exponent must satisfy n >= 3");
    if (!(c_n > 0.0)) throw InvalidInput("tail coefficient C_n must be positive");
  }
  double value(double r) const { return -c_n * std::pow(r, -n); }
};

/// Characteristic scales of a power-law tail: R* = (2 mu C_n)^{1/(n-2)},
/// E* = 1/(2 mu R*^2), k* = 1/R* (hbar = 1).
struct ScaleSet {
  double r_star = 0.0;
  double e_star = 0.0;
  double k_star = 0.0;
};

/// Centrifugal-barrier top for a continuous partial wave ell.
struct BarrierGeometry {
  double s_ell = 0.0;  // radius of the barrier top
  double e_top = 0.0;  // barrier height
  double ell = 0.0;    // partial wave (continuous)
};

ScaleSet derive_scales(const TailSpec& tail, double mu);

/// g_n = [n/(n-2)] * [(n-2)/2]^{2/n}; 1 < g_n <= 2 for n > 2, max at n = 4.
double g_factor(int n);

/// Capture cutoff Lambda(n;E) = g_n (E/E*)^{(n-2)/n}, with Lambda = L(L+1).
double cutoff_lambda(const TailSpec& tail, double mu, double energy);

/// Inverse of cutoff_lambda: energy at which the cutoff equals lambda.
double energy_for_lambda(const TailSpec& tail, double mu, double lambda);

/// Generalized Langevin capture cross section sigma_L = pi g_n (C_n/E)^{2/n}.
double langevin_sigma(const TailSpec& tail, double mu, double energy);

BarrierGeometry barrier_geometry(const TailSpec& tail, double mu, double ell);

/// Continuous critical partial wave: L = (sqrt(1+4*Lambda) - 1)/2.
double critical_ell(double lambda);

/// Partial-wave sum cutoff: ceil(L(E)). Truncated terms are negligible.
int sum_cutoff(const TailSpec& tail, double mu, double energy);

}  // namespace rescat
