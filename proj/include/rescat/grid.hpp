#pragma once

#include <memory>
#include <vector>

#include "rescat/potentials.hpp"

namespace rescat {

/// Numerical controls shared by the solvers. All tolerances are explicit so
/// that runs are reproducible from the configuration alone.
struct SolverSettings {
  double steps_per_wavelength = 20.0;  // local resolution in the allowed region
  double match_vtol = 1e-8;            // |V(r_end)| / E matching criterion
  double rmax_cap = 0.0;               // absolute cap on r_end; 0 = no cap
  double action_budget = 18.0;         // WKB decay depth below turning points
  double forbidden_factor = 10.0;      // V_eff/E defining "deep" start points
  double envelope_cutoff = 1e-12;      // stop inward sweeps once k/rho drops below
  double quadrature_abstol = 1e-8;
};

/// One uniform run of steps. Samples are r0 + i*h for i = 0..n; the endpoint
/// is shared with the next block. Step sizes are h_top / 2^m with m
/// non-increasing outward, so outward sweeps only ever coarsen.
struct GridBlock {
  int first = 0;  // global index of the block's first sample
  double r0 = 0.0;
  double h = 0.0;
  int n = 0;  // even
};

struct GridSpec {
  const Potential* va = nullptr;
  const Potential* vb = nullptr;  // may equal va
  double mu = 0.0;
  double energy = 0.0;  // E >= 0 (0 for zero-energy node counts)
  int ell = 0;
  double r_start = 0.0;
  double r_end = 0.0;
  double steps_per_wavelength = 20.0;
};

/// Piecewise-uniform radial mesh shared by both channels of an (ell, E) task.
class RadialGrid {
 public:
  static RadialGrid build(const GridSpec& spec);

  int size() const { return static_cast<int>(r_.size()); }
  double r(int i) const { return r_[i]; }
  const std::vector<double>& points() const { return r_; }
  const std::vector<GridBlock>& blocks() const { return blocks_; }
  double r_start() const { return r_.front(); }
  double r_end() const { return r_.back(); }
  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  std::vector<GridBlock> blocks_;  // ordered inside -> outside
  std::vector<double> r_;
};

/// Radial extent of an (ell, E) task and how the regular solution is seeded.
struct DomainPlan {
  double r_start = 0.0;
  double r_end = 0.0;
  double r_turn_inner = 0.0;  // innermost classical turning point (0 if none)
  bool wkb_seed = false;      // true: deep forbidden start; false: series seed
};

/// Choose r_start from the inner turning point plus a WKB action budget and
/// r_end from the matching criterion |V(r_end)|/E < match_vtol (power tails:
/// r_end = (C_n/(vtol E))^{1/n}). Throws if r_end would exceed the cap.
DomainPlan plan_domain(const ChannelPair& pair, double energy, int ell,
                       const SolverSettings& s);

/// Same, for a single channel (used by single-channel operations and tests).
DomainPlan plan_domain_single(const Potential& v, const TailSpec* tail, double mu,
                              double energy, int ell, const SolverSettings& s,
                              double r_end_override = 0.0);

}  // namespace rescat
