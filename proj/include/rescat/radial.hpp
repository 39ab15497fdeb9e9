#pragma once

#include "rescat/bessel.hpp"
#include "rescat/grid.hpp"

namespace rescat {

/// Regular radial solution on a grid. Samples are normalized to max|u| = 1
/// within each rescale segment; segment_shift[i] counts the 2^-1020 rescales
/// applied before sample i (only ratios within a segment are meaningful
/// across segments use the shift).
struct RadialSolution {
  std::vector<double> u;
  std::vector<int> shift;  // rescale count per sample
  int nodes = 0;
};

/// Absolute phase shift record for one (ell, E) solve.
struct PhaseShiftRecord {
  int ell = 0;
  double energy = 0.0;
  double eta = 0.0;         // absolute, not modulo pi
  double eta_mod_pi = 0.0;  // in [0, pi)
  int nodes = 0;
  enum class Method { matching, milne, hybrid } method = Method::matching;
};

/// Outward Numerov integration of u'' = U u, U = 2 mu (V - E) + l(l+1)/r^2.
/// Seeding follows the grid plan: deep-forbidden WKB start or a small-r
/// power-series start for potentials regular at the origin.
RadialSolution integrate_radial(const Potential& v, double mu, double energy,
                                int ell, const RadialGrid& grid, bool wkb_seed);

struct MatchResult {
  double eta_mod_pi = 0.0;  // [0, pi)
  double condition = 0.0;   // matching denominator scale; tiny => ill-conditioned
  int nodes = 0;
};

/// Modulo-pi phase shift by matching the outward solution to free
/// Riccati-Bessel combinations at two asymptotic radii near r_end.
/// If tail != nullptr and tail_correction is set, the first-order Born phase
/// of the residual tail beyond r_end is added.
MatchResult phase_shift_mod_pi(const Potential& v, double mu, double energy,
                               int ell, const RadialGrid& grid, bool wkb_seed,
                               const TailSpec* tail = nullptr,
                               bool tail_correction = false);

/// Convenience: plan + grid + match in one call.
MatchResult phase_shift_mod_pi(const Potential& v, const TailSpec& tail, double mu,
                               double energy, int ell, const SolverSettings& s,
                               bool tail_correction = false);

struct BoundStateCount {
  int n = 0;
  bool ambiguous = false;  // marginal zero-energy state suspected
  int n_alt = 0;           // alternative count when ambiguous
};

/// Number of bound states of V_eff from the node count of the zero-energy
/// regular solution integrated through the tail region.
BoundStateCount count_bound_states(const Potential& v, const TailSpec& tail,
                                   double mu, int ell, const SolverSettings& s);

struct ScatteringLength {
  double a = 0.0;
  double uncertainty = 0.0;
  bool large_uncertainty = false;
};

/// s-wave scattering length from delta_0(k) ~ -k a, Richardson-extrapolated
/// over k in {k0, k0/2, k0/4} with k0 R* = 1e-2. Requires tail n > 3.
ScatteringLength scattering_length(const Potential& v, const TailSpec& tail,
                                   double mu, const SolverSettings& s);

}  // namespace rescat
