#pragma once

#include <memory>
#include <optional>

#include "rescat/radial.hpp"

namespace rescat {

/// Milne envelope rho_l(r) of one channel, held as k/rho samples on the
/// shared grid. Produced by inward integration of two independent radial
/// solutions seeded with exact free-field values at r_end, so that
/// rho = u1^2 + u2^2 satisfies the envelope equation
///   rho''' - 4 U rho' - 2 U' rho = 0,  rho -> rho_free as r -> r_end,
/// and stays on the smooth (non-oscillatory) branch by construction.
struct EnvelopeSolution {
  std::shared_ptr<const RadialGrid> grid;
  const Potential* channel = nullptr;
  double mu = 0.0;
  double energy = 0.0;
  double k = 0.0;
  int ell = 0;
  int i_start = 0;                 // first stored sample (inward early stop)
  std::vector<double> k_over_rho;  // k/rho for grid indices [i_start, size)
  std::vector<double> phase_adv;   // Int_r^{r_end} k/rho dr', same indexing
  bool stopped_early = false;      // k/rho fell below cutoff before the grid start
  bool regular_inner = false;      // potential regular at the origin (series seed)
  double rho_end_ratio = 1.0;      // rho(r_end)/rho_free(k r_end) (diagnostic)

  double k_over_rho_at(int i) const {
    return (i < i_start) ? 0.0 : k_over_rho[i - i_start];
  }
  // exact phase advance of the pair between sample i and r_end; constant
  // below the early stop (k/rho is below the cutoff there)
  double phase_advance_at(int i) const {
    return (i < i_start) ? phase_adv.front() : phase_adv[i - i_start];
  }
};

/// Integrate the envelope inward from r_end. The sweep stops once
/// k/rho < settings.envelope_cutoff inside a classically forbidden region,
/// but never above min_r_keep (pass 0 to allow the earliest stop).
/// regular_inner marks potentials regular at the origin, whose small inner
/// phase below the grid start is added analytically by the assemblies.
EnvelopeSolution milne_envelope(const Potential& channel, double mu, double energy,
                                int ell, std::shared_ptr<const RadialGrid> grid,
                                const SolverSettings& settings,
                                double min_r_keep = 0.0,
                                bool regular_inner = false);

/// Absolute phase shift from the envelope:
///   eta = l pi/2 + Int_0^inf (k/rho - k) dr,
/// assembled as grid quadrature plus the exact free-field defect beyond r_end
/// and the first-order tail phase of the potential (when tail is given).
/// Valid when the envelope reaches the inner forbidden core (no intermediate
/// barrier shadow); use split_phase above the critical partial wave.
double phase_integral(const EnvelopeSolution& env, const TailSpec* tail);

/// Inner/outer split at s' near the barrier top (ell > L(E)):
/// eta = pi N + eta_out with N the inner node count.
struct PhaseSplit {
  int n_inner = 0;
  double eta_out = 0.0;
  double split_radius = 0.0;
};
PhaseSplit split_phase(const EnvelopeSolution& env, const BarrierGeometry& barrier,
                       const TailSpec* tail, const SolverSettings& settings);

/// Phase-shift difference eta_b - eta_a for one (ell, E) on a shared grid.
/// For ell > L(E) the inner region is shadowed by the centrifugal barrier and
/// the value is meaningful modulo pi only (mod_pi_only set); sin^2 is exact
/// either way.
struct DeltaEtaPoint {
  double delta_eta = 0.0;
  bool mod_pi_only = false;
  double eta_a = 0.0;  // absolute per-channel phases (when !mod_pi_only)
  double eta_b = 0.0;
};
DeltaEtaPoint delta_eta_point(const ChannelPair& pair, double energy, int ell,
                              const SolverSettings& settings);

/// Curvature coefficient Delta A of the quadratic-in-ell model
///   Delta eta(lambda) = Delta eta_0 - lambda * Delta A, lambda = l(l+1).
struct CurvatureCoefficient {
  double value = 0.0;
  double energy = 0.0;
  enum class Method { fit, envelope_integral } method = Method::fit;
  bool nonlinear = false;      // linear model residual exceeded tolerance
  bool fell_back_to_fit = false;
  double fit_residual = 0.0;
  double intercept = 0.0;      // fitted Delta eta at lambda = 0
};

/// Least-squares slope of -Delta eta_l against lambda over the given ells.
CurvatureCoefficient delta_A_fit(const ChannelPair& pair, double energy,
                                 const std::vector<int>& ells,
                                 const SolverSettings& settings);

/// Short-range envelope-integral route:
///   Delta A_l = (1/lambda) Int_0^R k (1/rho_0 - 1/rho_l) d r  per channel,
/// differenced between channels; equals (Delta eta_0 - Delta eta_l)/lambda
/// restricted to r < boundary_R. Falls back to the fit on failure.
CurvatureCoefficient delta_A_envelope(const ChannelPair& pair, double energy,
                                      int ell, const SolverSettings& settings);

}  // namespace rescat
