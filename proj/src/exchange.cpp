#include "rescat/exchange.hpp"

#include <algorithm>
#include <cmath>

namespace rescat {

namespace {

void check_ceiling(const ChannelPair& pair, double energy,
                   const EngineSettings& settings, bool* warn) {
  if (!(energy > 0.0)) throw InvalidInput("energy must be positive");
  if (energy >= settings.ceiling_fraction * pair.well_depth) {
    throw PhysicsError(
        "collision energy exceeds the validity ceiling E < " +
        std::to_string(settings.ceiling_fraction) + " * V_depth");
  }
  if (warn) *warn = energy > settings.warn_fraction * pair.well_depth;
}

}  // namespace

DeltaEtaSeries delta_eta_series(const ChannelPair& pair, double energy,
                                const EngineSettings& settings) {
  DeltaEtaSeries series;
  series.energy = energy;
  check_ceiling(pair, energy, settings, &series.high_energy_warning);

  const double lambda = cutoff_lambda(pair.tail, pair.mu, energy);
  series.cutoff_L = critical_ell(lambda);
  const int ell_top = static_cast<int>(std::ceil(series.cutoff_L)) + settings.ell_margin;
  series.truncated_at = ell_top;
  const double k2 = 2.0 * pair.mu * energy;
  series.remainder_per_term = kPi / k2 * (2.0 * ell_top + 3.0) * 1e-6;

  series.entries.reserve(ell_top + 1);
  for (int ell = 0; ell <= ell_top; ++ell) {
    DeltaEtaPoint p = delta_eta_point(pair, energy, ell, settings.solver);
    if (!std::isfinite(p.delta_eta)) {
      // ill-conditioned solve (isolated resonance): re-solve at a nudged energy
      p = delta_eta_point(pair, energy * (1.0 + 1e-9), ell, settings.solver);
    }
    DeltaEtaEntry e;
    e.ell = ell;
    e.delta_eta = p.delta_eta;
    e.sin2 = square(std::sin(p.delta_eta));
    e.mod_pi_only = p.mod_pi_only;
    series.entries.push_back(e);
  }
  return series;
}

SigmaPair exchange_cross_section(const DeltaEtaSeries& series, double k) {
  if (!(k > 0.0)) throw InvalidInput("exchange_cross_section: k must be positive");
  if (series.entries.empty() ||
      series.entries.front().ell != 0 ||
      static_cast<int>(series.entries.size()) != series.truncated_at + 1)
    throw InvalidInput("exchange_cross_section: incomplete series");
  const double pref = kPi / (k * k);
  SigmaPair out;
  out.sigma0 = pref * series.entries.front().sin2;
  double sum = 0.0;
  for (const auto& e : series.entries) {
    if (e.ell == 0) continue;
    sum += (2.0 * e.ell + 1.0) * e.sin2;
  }
  out.sigma_exc = out.sigma0 + pref * sum;
  return out;
}

double exact_correction(double sigma_exc, double sigma0, double sigma_L) {
  if (!(sigma_L > 0.0)) throw InvalidInput("exact_correction: sigma_L must be > 0");
  return (sigma_exc - sigma0) / sigma_L;
}

PairBoundCounts bound_counts(const ChannelPair& pair, const SolverSettings& s) {
  PairBoundCounts out;
  out.a = count_bound_states(*pair.va, pair.tail, pair.mu, 0, s);
  out.b = count_bound_states(*pair.vb, pair.tail, pair.mu, 0, s);
  return out;
}

LevinsonSplit levinson_decompose(const ChannelPair& pair, double energy,
                                 const EngineSettings& settings) {
  check_ceiling(pair, energy, settings, nullptr);
  const DeltaEtaPoint p = delta_eta_point(pair, energy, 0, settings.solver);
  const PairBoundCounts counts = bound_counts(pair, settings.solver);

  LevinsonSplit out;
  out.delta_n0_levinson = counts.b.n - counts.a.n;
  out.ambiguous = counts.a.ambiguous || counts.b.ambiguous;
  out.delta_delta0 = fold_half_pi(p.delta_eta);
  out.delta_n0 = static_cast<int>(std::lround((p.delta_eta - out.delta_delta0) / kPi));
  return out;
}

ExchangePoint evaluate_point(const ChannelPair& pair, double energy,
                             const EngineSettings& settings) {
  ExchangePoint pt;
  pt.energy = energy;
  pt.k = std::sqrt(2.0 * pair.mu * energy);
  const DeltaEtaSeries series = delta_eta_series(pair, energy, settings);
  pt.high_energy_warning = series.high_energy_warning;
  const SigmaPair sig = exchange_cross_section(series, pt.k);
  pt.sigma0 = sig.sigma0;
  pt.sigma_exc = sig.sigma_exc;
  pt.lambda = cutoff_lambda(pair.tail, pair.mu, energy);
  pt.sigma_L = langevin_sigma(pair.tail, pair.mu, energy);
  pt.f_exact = exact_correction(pt.sigma_exc, pt.sigma0, pt.sigma_L);
  pt.delta_eta0 = series.entries.front().delta_eta;
  pt.delta_delta0 = fold_half_pi(pt.delta_eta0);
  pt.delta_n0 = static_cast<int>(std::lround((pt.delta_eta0 - pt.delta_delta0) / kPi));
  pt.delta_eta.reserve(series.entries.size());
  for (const auto& e : series.entries) pt.delta_eta.push_back(e.delta_eta);
  return pt;
}

}  // namespace rescat
