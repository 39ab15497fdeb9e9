#pragma once

#include "rescat/milne.hpp"

namespace rescat {

struct EngineSettings {
  SolverSettings solver;
  int ell_margin = 5;          // partial waves kept above ceil(L)
  double ceiling_fraction = 0.2;   // hard validity ceiling E < 0.2 V_depth
  double warn_fraction = 0.01;     // high-energy warning threshold
};

struct DeltaEtaEntry {
  int ell = 0;
  double delta_eta = 0.0;  // absolute for ell <= L, modulo pi above
  double sin2 = 0.0;
  bool mod_pi_only = false;
};

struct DeltaEtaSeries {
  double energy = 0.0;
  double cutoff_L = 0.0;        // continuous critical partial wave
  int truncated_at = 0;         // last computed ell
  double remainder_per_term = 0.0;  // (pi/k^2)(2 l +1) 1e-6 bound per dropped term
  bool high_energy_warning = false;
  std::vector<DeltaEtaEntry> entries;
};

/// Phase-shift differences for ell = 0 .. ceil(L) + margin on shared grids.
/// Throws PhysicsError above the validity ceiling E >= 0.2 V_depth.
DeltaEtaSeries delta_eta_series(const ChannelPair& pair, double energy,
                                const EngineSettings& settings);

struct SigmaPair {
  double sigma_exc = 0.0;
  double sigma0 = 0.0;
};

/// sigma_exc = (pi/k^2) sum (2l+1) sin^2(Delta eta_l); sigma0 is the s-wave term.
SigmaPair exchange_cross_section(const DeltaEtaSeries& series, double k);

/// Exact quantal correction F = (sigma_exc - sigma0)/sigma_L; may exceed 1 at
/// low-energy shape resonances, never clamped.
double exact_correction(double sigma_exc, double sigma0, double sigma_L);

struct LevinsonSplit {
  int delta_n0 = 0;          // integer with Delta eta_0 = pi delta_n0 + delta_delta0
  int delta_n0_levinson = 0; // N_0^b - N_0^a from bound-state counts
  double delta_delta0 = 0.0; // folded into (-pi/2, pi/2]
  bool ambiguous = false;    // a bound-state count was ambiguous
};

/// Split the absolute s-wave difference into its integer-pi part and the
/// residual. delta_n0 makes the identity exact at every energy; it equals the
/// bound-count difference in the E -> 0 limit.
LevinsonSplit levinson_decompose(const ChannelPair& pair, double energy,
                                 const EngineSettings& settings);

/// Per-energy observable bundle.
struct ExchangePoint {
  double energy = 0.0;
  double k = 0.0;
  double sigma0 = 0.0;
  double sigma_exc = 0.0;
  double sigma_L = 0.0;
  double lambda = 0.0;
  double f_exact = 0.0;
  double delta_eta0 = 0.0;     // absolute
  double delta_delta0 = 0.0;   // (-pi/2, pi/2]
  int delta_n0 = 0;
  bool high_energy_warning = false;
  bool resonance = false;      // set by the scan layer from dDeltaEta/dE spikes
  std::vector<double> delta_eta;  // per-ell values (diagnostics)
};

ExchangePoint evaluate_point(const ChannelPair& pair, double energy,
                             const EngineSettings& settings);

/// Cached per-channel zero-energy bound-state counts for a pair.
struct PairBoundCounts {
  BoundStateCount a;
  BoundStateCount b;
};
PairBoundCounts bound_counts(const ChannelPair& pair, const SolverSettings& s);

}  // namespace rescat
