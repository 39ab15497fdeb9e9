#pragma once

#include <vector>

#include "rescat/common.hpp"

namespace rescat {

// Riccati-Bessel pair: S_l(x) = x j_l(x) -> sin(x - l pi/2),
//                      C_l(x) = -x y_l(x) -> cos(x - l pi/2).
// Cross product identity: S_{l-1} C_l - S_l C_{l-1} = 1.
struct RiccatiPair {
  double s = 0.0;
  double c = 0.0;
};

/// Stable evaluation for a single l: upward recurrence for the C family,
/// downward (continued-fraction normalized) recurrence for S when x < l.
RiccatiPair riccati_sc(int ell, double x);

/// Fill s[0..lmax], c[0..lmax] at fixed x. Entries whose magnitude exceeds
/// ~1e280 saturate (the corresponding free envelope is effectively infinite).
void riccati_ladder(int ell_max, double x, std::vector<double>& s,
                    std::vector<double>& c);

/// Free-field envelope rho_free = S_l^2 + C_l^2 = x^2 (j_l^2 + y_l^2) >= 1.
/// Returns +inf when saturated (deep centrifugal shadow).
double free_envelope(int ell, double x);

/// Defect tail T_l(x) = Int_x^inf [1 - 1/rho_free(t)] dt. Monotone decreasing,
/// T_l(0+) = l pi/2, T_l(x) ~ l(l+1)/(2x) for large x.
double free_phase_defect(int ell, double x);

/// Wavenumber propagated by the Numerov recurrence at step h for a plane wave
/// of physical wavenumber k. Seeding and matching asymptotics at q~ instead
/// of k removes the leading dispersion drift over long integration spans.
double numerov_wavenumber(double k, double h);

}  // namespace rescat
