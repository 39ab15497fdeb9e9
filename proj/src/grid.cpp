#include "rescat/grid.hpp"

#include <algorithm>
#include <cmath>

#include "rescat/numerics.hpp"

namespace rescat {

namespace {

// Envelope of the local wavenumber scale used by the step rule: covers the
// oscillation rate, the decay rate, and the centrifugal scale.
double k_ref2(const GridSpec& s, double r) {
  const double va = std::abs(s.va->value(r));
  const double vb = (s.vb == s.va) ? va : std::abs(s.vb->value(r));
  const double lam = static_cast<double>(s.ell) * (s.ell + 1.0);
  return 2.0 * s.mu * (s.energy + va + vb) + lam / (r * r);
}

double k_ref2_deriv(const GridSpec& s, double r) {
  const double va = s.va->value(r);
  double d = (va >= 0.0 ? 1.0 : -1.0) * s.va->deriv(r);
  const double vb = (s.vb == s.va) ? va : s.vb->value(r);
  d += (vb >= 0.0 ? 1.0 : -1.0) * ((s.vb == s.va) ? s.va->deriv(r) : s.vb->deriv(r));
  const double lam = static_cast<double>(s.ell) * (s.ell + 1.0);
  return 2.0 * s.mu * d - 2.0 * lam / (r * r * r);
}

double target_step(const GridSpec& s, double r) {
  const double c = 2.0 * kPi / s.steps_per_wavelength;
  const double k2 = std::max(k_ref2(s, r), 1e-300);
  double h = c / std::sqrt(k2);
  // resolve the variation scale of U as well (power-law walls, centrifugal)
  const double dk2 = std::abs(k_ref2_deriv(s, r));
  if (dk2 > 0.0) h = std::min(h, 0.2 * k2 / dk2);
  return h;
}

}  // namespace

RadialGrid RadialGrid::build(const GridSpec& spec) {
  if (!spec.va) throw InvalidInput("grid: missing potential");
  if (!(spec.mu > 0.0)) throw InvalidInput("grid: reduced mass must be positive");
  if (!(spec.r_start > 0.0) || !(spec.r_start < spec.r_end))
    throw InvalidInput("grid: need 0 < r_start < r_end");

  RadialGrid g;
  g.spec_ = spec;
  if (!g.spec_.vb) g.spec_.vb = g.spec_.va;

  const double h_top = target_step(g.spec_, spec.r_end);
  constexpr int kQuantum = 16;  // steps per block; even

  // Build inward from r_end. Step sizes are h_top / 2^m, never growing
  // inward; the innermost block lands inside (0, r_start].
  struct RawBlock {
    double r_outer;
    double h;
    int n;
  };
  std::vector<RawBlock> raw;
  double r_cursor = spec.r_end;
  double h_cur = h_top;
  while (r_cursor > spec.r_start * (1.0 + 1e-14)) {
    // geometric descent bound keeps the final landing block well-posed
    const double descent = 0.05 * std::max(r_cursor - 0.55 * spec.r_start,
                                           7.0 * spec.r_start);
    double h = std::min({h_cur, target_step(g.spec_, r_cursor), descent});
    const int m =
        std::max(0, static_cast<int>(std::ceil(std::log2(h_top / h) - 1e-12)));
    if (m > 600) throw NumericsError("grid: step refinement did not terminate");
    h = h_top / std::exp2(m);
    int n = kQuantum;
    // shorten the block if the rule tightens before its inner end
    while (n > 2 && h > target_step(g.spec_, r_cursor - n * h) * (1.0 + 1e-12)) {
      n -= 2;
    }
    if (r_cursor - n * h <= spec.r_start) {
      n = static_cast<int>(std::ceil((r_cursor - spec.r_start) / h - 1e-9));
      n += n % 2;  // keep Simpson-friendly
      n = std::max(n, 2);
    }
    raw.push_back({r_cursor, h, n});
    r_cursor -= n * h;
    h_cur = h;
    if (raw.size() > 2'000'000) throw NumericsError("grid: too many blocks");
  }

  // materialize outward
  std::reverse(raw.begin(), raw.end());
  int total = 1;
  for (const auto& b : raw) total += b.n;
  g.r_.reserve(total);
  g.blocks_.reserve(raw.size());
  double r0 = r_cursor;
  int first = 0;
  g.r_.push_back(r0);
  for (const auto& b : raw) {
    GridBlock blk;
    blk.first = first;
    blk.r0 = r0;
    blk.h = b.h;
    blk.n = b.n;
    for (int i = 1; i <= b.n; ++i) g.r_.push_back(r0 + i * b.h);
    first += b.n;
    r0 = g.r_.back();
    g.blocks_.push_back(blk);
  }
  return g;
}

namespace {

double v_eff(const Potential& v, double mu, int ell, double r) {
  const double lam = static_cast<double>(ell) * (ell + 1.0);
  return v.value(r) + lam / (2.0 * mu * r * r);
}

}  // namespace

DomainPlan plan_domain_single(const Potential& v, const TailSpec* tail, double mu,
                              double energy, int ell, const SolverSettings& s,
                              double r_end_override) {
  DomainPlan plan;

  // outer end: matching criterion for power tails, or explicit override
  if (r_end_override > 0.0) {
    plan.r_end = r_end_override;
  } else if (tail) {
    if (!(energy > 0.0)) throw InvalidInput("plan_domain: E must be positive");
    plan.r_end = std::pow(tail->c_n / (s.match_vtol * energy), 1.0 / tail->n);
  } else {
    throw InvalidInput("plan_domain: need a tail spec or an explicit r_end");
  }
  const double k = std::sqrt(2.0 * mu * std::max(energy, 0.0));
  const double lam = static_cast<double>(ell) * (ell + 1.0);
  if (k > 0.0) {
    // keep the far end beyond the centrifugal turning point and a few waves out
    plan.r_end = std::max(plan.r_end, 2.5 * std::sqrt(lam + 1.0) / k);
    plan.r_end = std::max(plan.r_end, 4.0 * kPi / k);
  }
  if (s.rmax_cap > 0.0 && plan.r_end > s.rmax_cap) {
    throw PhysicsError(
        "matching radius exceeds the configured cap; raise the cap or enable "
        "the tail-corrected matching mode");
  }

  // inner wall: innermost + -> - crossing of V_eff - E on a log probe grid
  const double r_floor = plan.r_end * 1e-12;
  const int kProbe = 512;
  const double lstep = std::log(plan.r_end / r_floor) / (kProbe - 1);
  double r_wall = 0.0;
  double prev_r = r_floor;
  double prev_f = v_eff(v, mu, ell, r_floor) - energy;
  const double fb_threshold = std::max(s.forbidden_factor * std::abs(energy),
                                       1e-30);
  bool has_wall = prev_f > 0.0;
  if (has_wall) {
    for (int i = 1; i < kProbe; ++i) {
      const double r = r_floor * std::exp(i * lstep);
      const double f = v_eff(v, mu, ell, r) - energy;
      if (prev_f > 0.0 && f <= 0.0) {
        r_wall = find_root([&](double x) { return v_eff(v, mu, ell, x) - energy; },
                           prev_r, r, prev_r * 1e-12);
        break;
      }
      prev_r = r;
      prev_f = f;
    }
    if (r_wall == 0.0) {
      // forbidden everywhere probed (E at or below the potential floor)
      has_wall = v_eff(v, mu, ell, plan.r_end * 0.5) - energy > 0.0;
      r_wall = has_wall ? plan.r_end * 0.5 : 0.0;
    }
  }

  if (has_wall && r_wall > 0.0) {
    plan.r_turn_inner = r_wall;
    plan.wkb_seed = true;
    // extend inward until the WKB action int kappa dr reaches the budget and
    // V_eff exceeds E by the forbidden factor
    double action = 0.0;
    double r = r_wall;
    const double dl = 0.5 * 2.0 * kPi / s.steps_per_wavelength;  // in action units
    while (action < s.action_budget && r > r_floor) {
      const double kap2 = 2.0 * mu * (v_eff(v, mu, ell, r) - energy);
      const double kap = std::sqrt(std::max(kap2, 1e-300));
      const double dr = std::min(dl / kap, 0.05 * r);
      action += kap * dr;
      r -= dr;
    }
    // honor the forbidden-depth criterion as well
    while (r > r_floor &&
           v_eff(v, mu, ell, r) - energy < fb_threshold) {
      r *= 0.97;
    }
    plan.r_start = std::max(r, r_floor);
  } else {
    // regular at the origin (free particle, finite-depth core): series seed.
    // The analytic inner-phase term used by the assemblies is accurate to
    // O((k_in r_start)^2) relative, so start at a small local phase.
    plan.wkb_seed = false;
    const double v0 = std::abs(v.value(plan.r_end * 1e-9));
    const double kin = std::sqrt(2.0 * mu * (std::abs(energy) + v0) + 1.0e-300);
    plan.r_start = 5e-3 / std::max(kin, 1e-150);
    plan.r_start = std::min(plan.r_start, 0.02 * plan.r_end);
    plan.r_start = std::max(plan.r_start, r_floor);
  }
  return plan;
}

DomainPlan plan_domain(const ChannelPair& pair, double energy, int ell,
                       const SolverSettings& s) {
  DomainPlan a = plan_domain_single(*pair.va, &pair.tail, pair.mu, energy, ell, s);
  DomainPlan b = plan_domain_single(*pair.vb, &pair.tail, pair.mu, energy, ell, s);
  DomainPlan plan;
  plan.r_end = std::max(a.r_end, b.r_end);
  plan.r_start = std::min(a.r_start, b.r_start);
  plan.r_turn_inner = std::min(a.r_turn_inner, b.r_turn_inner);
  plan.wkb_seed = a.wkb_seed && b.wkb_seed;
  return plan;
}

}  // namespace rescat
