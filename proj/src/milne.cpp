#include "rescat/milne.hpp"

#include <algorithm>
#include <cmath>

#include "rescat/numerics.hpp"
#include "sweep.hpp"

namespace rescat {

using detail::UField;

EnvelopeSolution milne_envelope(const Potential& channel, double mu, double energy,
                                int ell, std::shared_ptr<const RadialGrid> grid,
                                const SolverSettings& settings, double min_r_keep,
                                bool regular_inner) {
  if (!(energy > 0.0)) throw InvalidInput("milne_envelope: E must be positive");
  const double k = std::sqrt(2.0 * mu * energy);
  const int n_total = grid->size();

  EnvelopeSolution env;
  env.grid = grid;
  env.channel = &channel;
  env.mu = mu;
  env.energy = energy;
  env.k = k;
  env.ell = ell;
  env.regular_inner = regular_inner;

  UField U{&channel, 2.0 * mu, energy, static_cast<double>(ell) * (ell + 1.0)};

  // free-field seeds at the two outermost samples, evaluated at the
  // discretization's own wavenumber so the pair stays phase-coherent
  const double kq = numerov_wavenumber(k, grid->blocks().back().h);
  const RiccatiPair f_last = riccati_sc(ell, kq * grid->r(n_total - 1));
  const RiccatiPair f_prev = riccati_sc(ell, kq * grid->r(n_total - 2));

  std::vector<double> inv(n_total, 0.0);  // k/rho
  std::vector<double> adv(n_total, 0.0);  // phase advance to r_end
  int i_stop = 0;
  bool stopped = false;
  double angle_prev = 0.0;
  double adv_cum = 0.0;
  double rho_recent = 0.0;  // decaying maximum, the local envelope scale
  bool first = true;
  detail::numerov_sweep<2>(
      *grid, U, false, {f_last.s, f_last.c}, {f_prev.s, f_prev.c},
      [&](int i, const std::array<double, 2>& u, int shift) {
        const double rho = u[0] * u[0] + u[1] * u[1];
        inv[i] = (shift > 0 || rho == 0.0) ? 0.0 : k / rho;
        // Exact phase decrement of the pair: the polar angle of (u1, u2)
        // obeys d(angle)/dr = k/rho > 0 and advances by < 2 pi per resolved
        // step, so inward unwrapping is unambiguous. Samples where rho dips
        // below the roundoff floor of a strongly elliptic pair carry a
        // garbage angle and are bridged.
        const bool suspect = rho < 1e-20 * rho_recent;
        rho_recent = std::max(rho, 0.95 * rho_recent);
        if (!suspect) {
          const double angle = std::atan2(u[0], u[1]);
          if (first) {
            first = false;
          } else {
            double d = std::fmod(angle_prev - angle, 2.0 * kPi);
            if (d < 0.0) d += 2.0 * kPi;
            if (d > 1.5 * kPi) d -= 2.0 * kPi;  // backward roundoff jitter
            adv_cum += d;
          }
          angle_prev = angle;
        }
        adv[i] = adv_cum;
        const double r = grid->r(i);
        if (i < n_total - 2 && inv[i] < settings.envelope_cutoff &&
            (min_r_keep <= 0.0 || r < min_r_keep) && U(r) > 0.0) {
          i_stop = i;
          stopped = true;
          return false;
        }
        return true;
      });
  env.i_start = stopped ? i_stop : 0;
  env.stopped_early = stopped;
  env.k_over_rho.assign(inv.begin() + env.i_start, inv.end());
  env.phase_adv.assign(adv.begin() + env.i_start, adv.end());

  // boundary-condition ripple diagnostic a few samples in from the top
  const int i_diag = std::max(env.i_start, n_total - 17);
  const double rho_free = free_envelope(ell, k * grid->r(i_diag));
  const double kr = env.k_over_rho_at(i_diag);
  if (kr > 0.0 && std::isfinite(rho_free)) {
    env.rho_end_ratio = (k / kr) / rho_free;
  }
  return env;
}

namespace {

double tail_phase(const TailSpec* tail, double mu, double k, double r_end) {
  if (!tail) return 0.0;
  return mu * tail->c_n / (k * (tail->n - 1) * std::pow(r_end, tail->n - 1));
}

// Analytic inner contribution below the grid start: for a potential regular
// at the origin, k/rho ~ r^{2l} there, so
//   Int_0^{r0} k/rho dr ~ (k/rho)(r0) * r0 / (2l+1);
// behind a wall or deep inside a forbidden region k/rho is below the cutoff
// and the same expression is negligible.
double inner_phase(const EnvelopeSolution& env) {
  if (!env.regular_inner) return 0.0;
  const int i0 = env.i_start;
  return env.k_over_rho_at(i0) * env.grid->r(i0) / (2.0 * env.ell + 1.0);
}

// eta = l pi/2 + Int_0^inf (k/rho - k) dr assembled from the exact pair-angle
// advance between r0 and r_end plus the analytic pieces outside that range.
double assemble_eta(const EnvelopeSolution& env, const TailSpec* tail,
                    int i_from, double extra_inner) {
  const RadialGrid& grid = *env.grid;
  const double x_end = env.k * grid.r_end();
  return env.ell * kPi / 2.0 + extra_inner + env.phase_advance_at(i_from) -
         env.k * grid.r_end() - free_phase_defect(env.ell, x_end) +
         tail_phase(tail, env.mu, env.k, grid.r_end());
}

}  // namespace

double phase_integral(const EnvelopeSolution& env, const TailSpec* tail) {
  return assemble_eta(env, tail, env.i_start, inner_phase(env));
}

PhaseSplit split_phase(const EnvelopeSolution& env, const BarrierGeometry& barrier,
                       const TailSpec* tail, const SolverSettings&) {
  const RadialGrid& grid = *env.grid;
  if (barrier.e_top <= env.energy)
    throw PhysicsError("split_phase requires ell > L(E): barrier top below E");
  const double s_lo = 0.8 * barrier.s_ell, s_hi = 1.2 * barrier.s_ell;
  if (grid.r(env.i_start) > s_lo)
    throw InvalidInput("split_phase: envelope does not cover the barrier window");

  // s' = plateau bottom of k/rho inside the window
  int i_min = -1;
  double best = 0.0;
  for (int i = env.i_start; i < grid.size(); ++i) {
    const double r = grid.r(i);
    if (r < s_lo) continue;
    if (r > s_hi) break;
    const double v = env.k_over_rho_at(i);
    if (i_min < 0 || v < best) {
      i_min = i;
      best = v;
    }
  }
  if (i_min < 0) throw InvalidInput("split_phase: barrier window not on the grid");
  // the plateau must pin the inner phase to an integer multiple of pi
  if (best * (s_hi - s_lo) > 0.5 * kPi)
    throw PhysicsError("split_phase: E too close to the barrier top for a clean split");

  PhaseSplit out;
  out.split_radius = grid.r(i_min);

  // inner node count of the regular solution below s'
  const RadialSolution sol = integrate_radial(*env.channel, env.mu, env.energy,
                                              env.ell, grid, !env.regular_inner);
  int nodes = 0;
  for (int i = 1; i <= i_min; ++i) {
    const double a = sol.u[i - 1], b = sol.u[i];
    if (a != 0.0 && b != 0.0 && std::signbit(a) != std::signbit(b)) ++nodes;
  }
  out.n_inner = nodes;
  out.eta_out = assemble_eta(env, tail, i_min, 0.0);
  return out;
}

namespace {

std::shared_ptr<const RadialGrid> shared_grid(const ChannelPair& pair, double energy,
                                              int ell, const DomainPlan& plan,
                                              const SolverSettings& settings) {
  GridSpec gs;
  gs.va = pair.va.get();
  gs.vb = pair.vb.get();
  gs.mu = pair.mu;
  gs.energy = energy;
  gs.ell = ell;
  gs.r_start = plan.r_start;
  gs.r_end = plan.r_end;
  gs.steps_per_wavelength = settings.steps_per_wavelength;
  return std::make_shared<const RadialGrid>(RadialGrid::build(gs));
}

}  // namespace

DeltaEtaPoint delta_eta_point(const ChannelPair& pair, double energy, int ell,
                              const SolverSettings& settings) {
  const DomainPlan plan = plan_domain(pair, energy, ell, settings);
  auto grid = shared_grid(pair, energy, ell, plan, settings);

  const double lambda_cut = cutoff_lambda(pair.tail, pair.mu, energy);
  const double lam = static_cast<double>(ell) * (ell + 1.0);
  const bool super_critical = lam > lambda_cut;

  EnvelopeSolution ea = milne_envelope(*pair.va, pair.mu, energy, ell, grid,
                                       settings, 0.0, !plan.wkb_seed);
  EnvelopeSolution eb = milne_envelope(*pair.vb, pair.mu, energy, ell, grid,
                                       settings, 0.0, !plan.wkb_seed);

  DeltaEtaPoint out;
  const int i_common = std::min(ea.i_start, eb.i_start);
  out.delta_eta = (eb.phase_advance_at(i_common) + inner_phase(eb)) -
                  (ea.phase_advance_at(i_common) + inner_phase(ea));

  double s_half = 0.0;
  if (super_critical) {
    s_half = 0.5 * barrier_geometry(pair.tail, pair.mu, ell).s_ell;
  }
  const bool a_shadowed =
      super_critical && ea.stopped_early && grid->r(ea.i_start) > s_half;
  const bool b_shadowed =
      super_critical && eb.stopped_early && grid->r(eb.i_start) > s_half;
  out.mod_pi_only = a_shadowed || b_shadowed;
  if (!out.mod_pi_only) {
    out.eta_a = phase_integral(ea, &pair.tail);
    out.eta_b = phase_integral(eb, &pair.tail);
  }
  return out;
}

CurvatureCoefficient delta_A_fit(const ChannelPair& pair, double energy,
                                 const std::vector<int>& ells,
                                 const SolverSettings& settings) {
  if (ells.size() < 4)
    throw InvalidInput("delta_A_fit needs at least 4 partial waves");
  std::vector<double> lam(ells.size()), de(ells.size());
  for (size_t i = 0; i < ells.size(); ++i) {
    lam[i] = static_cast<double>(ells[i]) * (ells[i] + 1.0);
    de[i] = delta_eta_point(pair, energy, ells[i], settings).delta_eta;
  }
  const LinearFit fit = fit_line(lam.data(), de.data(), static_cast<int>(lam.size()));
  CurvatureCoefficient out;
  out.value = -fit.slope;  // Delta eta = Delta eta_0 - lambda DeltaA
  out.energy = energy;
  out.method = CurvatureCoefficient::Method::fit;
  out.fit_residual = fit.max_residual;
  out.intercept = fit.intercept;
  out.nonlinear = fit.max_residual > 0.05;
  return out;
}

CurvatureCoefficient delta_A_envelope(const ChannelPair& pair, double energy,
                                      int ell, const SolverSettings& settings) {
  CurvatureCoefficient out;
  out.energy = energy;
  out.method = CurvatureCoefficient::Method::envelope_integral;
  try {
    if (ell <= 0) throw InvalidInput("delta_A_envelope needs ell >= 1");
    const double lam = static_cast<double>(ell) * (ell + 1.0);

    // short-range phase difference Int_0^R k (1/rho_b - 1/rho_a) dr
    auto short_range_delta = [&](int l) {
      const DomainPlan plan = plan_domain(pair, energy, l, settings);
      auto grid = shared_grid(pair, energy, l, plan, settings);
      EnvelopeSolution ea = milne_envelope(*pair.va, pair.mu, energy, l, grid,
                                           settings, 0.0, !plan.wkb_seed);
      EnvelopeSolution eb = milne_envelope(*pair.vb, pair.mu, energy, l, grid,
                                           settings, 0.0, !plan.wkb_seed);
      int i_r = grid->size() - 1;
      while (i_r > 0 && grid->r(i_r - 1) > pair.boundary_r) --i_r;
      const int i0 = std::min(ea.i_start, eb.i_start);
      const double db =
          eb.phase_advance_at(i0) - eb.phase_advance_at(i_r) + inner_phase(eb);
      const double da =
          ea.phase_advance_at(i0) - ea.phase_advance_at(i_r) + inner_phase(ea);
      return db - da;
    };
    const double d0 = short_range_delta(0);
    const double dl = short_range_delta(ell);
    out.value = (d0 - dl) / lam;
  } catch (const std::exception&) {
    // unstable or invalid: fall back to the fit route
    const int lmax = std::max(4, std::min(8, sum_cutoff(pair.tail, pair.mu, energy)));
    std::vector<int> ells;
    for (int l = 1; l <= lmax; ++l) ells.push_back(l);
    CurvatureCoefficient fit = delta_A_fit(pair, energy, ells, settings);
    fit.fell_back_to_fit = true;
    return fit;
  }
  return out;
}

}  // namespace rescat
