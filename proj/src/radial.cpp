#include "rescat/radial.hpp"

#include <algorithm>
#include <cmath>

#include "sweep.hpp"

namespace rescat {

using detail::UField;

namespace {

// Regular power-series seed u = r^{l+1} (1 + c1 r^2 + c2 r^4) for potentials
// regular at the origin; values are scaled to avoid underflow at high l.
void series_seed(const UField& U, int ell, double r0, double r1, double* u0,
                 double* u1) {
  const double w = U(r0) - U.lam / (r0 * r0);
  const double c1 = w / (4.0 * ell + 6.0);
  const double c2 = w * c1 / (8.0 * ell + 20.0);
  const double lr0 = (ell + 1.0) * std::log(r0);
  const double lr1 = (ell + 1.0) * std::log(r1);
  const double base = std::max(lr0, lr1);
  *u0 = std::exp(lr0 - base) * (1.0 + c1 * r0 * r0 + c2 * r0 * r0 * r0 * r0);
  *u1 = std::exp(lr1 - base) * (1.0 + c1 * r1 * r1 + c2 * r1 * r1 * r1 * r1);
}

void make_seed(const UField& U, int ell, const RadialGrid& grid, bool wkb_seed,
               double* u0, double* u1) {
  const double r0 = grid.r(0), r1 = grid.r(1);
  if (wkb_seed) {
    if (U(r0) <= 0.0)
      throw InvalidInput("radial seed: WKB start is outside the forbidden region");
    *u0 = 0.0;  // admixture of the inward-decaying solution dies off
    *u1 = 1e-200;
  } else {
    series_seed(U, ell, r0, r1, u0, u1);
  }
}

}  // namespace

RadialSolution integrate_radial(const Potential& v, double mu, double energy,
                                int ell, const RadialGrid& grid, bool wkb_seed) {
  if (!(mu > 0.0)) throw InvalidInput("integrate_radial: mu must be positive");
  if (ell < 0) throw InvalidInput("integrate_radial: ell must be >= 0");
  UField U{&v, 2.0 * mu, energy, static_cast<double>(ell) * (ell + 1.0)};

  double u0, u1;
  make_seed(U, ell, grid, wkb_seed, &u0, &u1);

  RadialSolution sol;
  sol.u.assign(grid.size(), 0.0);
  sol.shift.assign(grid.size(), 0);
  double last = 0.0;
  bool have_last = false;
  detail::numerov_sweep<1>(grid, U, true, {u0}, {u1},
                           [&](int i, const std::array<double, 1>& u, int shift) {
                             sol.u[i] = u[0];
                             sol.shift[i] = shift;
                             if (have_last && last != 0.0 && u[0] != 0.0 &&
                                 std::signbit(last) != std::signbit(u[0]))
                               ++sol.nodes;
                             last = u[0];
                             have_last = true;
                             return true;
                           });
  return sol;
}

namespace {

// matching sample a quarter asymptotic wavelength below the grid end
int quarter_wave_index(const RadialGrid& grid, double k) {
  const auto& top = grid.blocks().back();
  const double quarter = 0.5 * kPi / k;
  int steps_back = std::max(2, static_cast<int>(std::lround(quarter / top.h)));
  steps_back = std::min(steps_back, top.n - 1);
  return top.first + top.n - steps_back;
}

}  // namespace

MatchResult phase_shift_mod_pi(const Potential& v, double mu, double energy,
                               int ell, const RadialGrid& grid, bool wkb_seed,
                               const TailSpec* tail, bool tail_correction) {
  if (!(energy > 0.0)) throw InvalidInput("phase_shift_mod_pi: E must be positive");
  const double k = std::sqrt(2.0 * mu * energy);
  UField U{&v, 2.0 * mu, energy, static_cast<double>(ell) * (ell + 1.0)};

  const int i2 = grid.size() - 1;
  const int i1 = quarter_wave_index(grid, k);
  double u1 = 0.0, u2 = 0.0;
  int s1 = 0, s2 = 0;

  double a0, a1;
  make_seed(U, ell, grid, wkb_seed, &a0, &a1);

  MatchResult out;
  double last = 0.0;
  bool have_last = false;
  detail::numerov_sweep<1>(grid, U, true, {a0}, {a1},
                           [&](int i, const std::array<double, 1>& u, int shift) {
                             if (i == i1) {
                               u1 = u[0];
                               s1 = shift;
                             } else if (i == i2) {
                               u2 = u[0];
                               s2 = shift;
                             }
                             if (have_last && last != 0.0 && u[0] != 0.0 &&
                                 std::signbit(last) != std::signbit(u[0]))
                               ++out.nodes;
                             last = u[0];
                             have_last = true;
                             return true;
                           });

  if (u2 == 0.0) throw NumericsError("phase matching: node at the outer radius");
  const double ratio = (u1 / u2) * std::exp2(1020.0 * (s1 - s2));

  // match at the discretization's wavenumber to cancel dispersion drift
  const double kq = numerov_wavenumber(k, grid.blocks().back().h);
  const RiccatiPair f1 = riccati_sc(ell, kq * grid.r(i1));
  const RiccatiPair f2 = riccati_sc(ell, kq * grid.r(i2));
  const double num = f1.s - ratio * f2.s;
  const double den = ratio * f2.c - f1.c;
  double eta = std::atan2(num, den);
  out.condition = std::abs(den) / (1.0 + std::abs(ratio));

  if (tail_correction && tail) {
    // first-order phase of the residual tail beyond r_end
    eta += tail->c_n * 2.0 * mu /
           (2.0 * k * (tail->n - 1) * std::pow(grid.r(i2), tail->n - 1));
  }
  eta = std::fmod(eta, kPi);
  if (eta < 0.0) eta += kPi;
  out.eta_mod_pi = eta;
  return out;
}

MatchResult phase_shift_mod_pi(const Potential& v, const TailSpec& tail, double mu,
                               double energy, int ell, const SolverSettings& s,
                               bool tail_correction) {
  const DomainPlan plan = plan_domain_single(v, &tail, mu, energy, ell, s);
  GridSpec gs;
  gs.va = &v;
  gs.vb = &v;
  gs.mu = mu;
  gs.energy = energy;
  gs.ell = ell;
  gs.r_start = plan.r_start;
  gs.r_end = plan.r_end;
  gs.steps_per_wavelength = s.steps_per_wavelength;
  const RadialGrid grid = RadialGrid::build(gs);
  return phase_shift_mod_pi(v, mu, energy, ell, grid, plan.wkb_seed, &tail,
                            tail_correction);
}

BoundStateCount count_bound_states(const Potential& v, const TailSpec& tail,
                                   double mu, int ell, const SolverSettings& s) {
  tail.validate();
  auto nodes_to = [&](double r_end) {
    const DomainPlan plan = plan_domain_single(v, &tail, mu, 0.0, ell, s, r_end);
    GridSpec gs;
    gs.va = &v;
    gs.vb = &v;
    gs.mu = mu;
    gs.energy = 0.0;
    gs.ell = ell;
    gs.r_start = plan.r_start;
    gs.r_end = plan.r_end;
    gs.steps_per_wavelength = s.steps_per_wavelength;
    const RadialGrid grid = RadialGrid::build(gs);
    return integrate_radial(v, mu, 0.0, ell, grid, plan.wkb_seed).nodes;
  };

  // integrate until the remaining WKB tail phase cannot hold another node
  const double half = 0.5 * tail.n - 1.0;
  const double r_tail =
      std::pow(std::sqrt(2.0 * mu * tail.c_n) / (0.05 * half), 1.0 / half);
  BoundStateCount out;
  out.n = nodes_to(r_tail);
  out.n_alt = nodes_to(2.0 * r_tail);
  if (out.n_alt != out.n) out.ambiguous = true;  // marginal zero-energy state
  return out;
}

ScatteringLength scattering_length(const Potential& v, const TailSpec& tail,
                                   double mu, const SolverSettings& s) {
  tail.validate();
  if (tail.n <= 3)
    throw InvalidInput("scattering_length requires a tail exponent n > 3");
  const ScaleSet scales = derive_scales(tail, mu);
  const double k0 = 1e-2 / scales.r_star;

  auto a_of_k = [&](double k) {
    const double e = k * k / (2.0 * mu);
    const MatchResult m = phase_shift_mod_pi(v, tail, mu, e, 0, s);
    return -fold_half_pi(m.eta_mod_pi) / k;
  };
  const double a1 = a_of_k(k0);
  const double a2 = a_of_k(0.5 * k0);
  const double a3 = a_of_k(0.25 * k0);
  // a(k) = a + c1 k + c2 k^2: two Richardson stages
  const double b1 = 2.0 * a2 - a1;
  const double b2 = 2.0 * a3 - a2;
  ScatteringLength out;
  out.a = (4.0 * b2 - b1) / 3.0;
  out.uncertainty = std::abs(out.a - b2) + std::abs(b2 - b1) / 3.0;
  out.large_uncertainty =
      out.uncertainty > 0.02 * std::max(std::abs(out.a), scales.r_star);
  return out;
}

}  // namespace rescat
