#include "rescat/potentials.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rescat/numerics.hpp"

namespace rescat {

ChannelPotential::ChannelPotential(char label, double c_rep, TailSpec tail)
    : label_(label), c_rep_(c_rep), tail_(tail) {
  tail_.validate();
  if (!(c_rep > 0.0))
    throw InvalidInput("core coefficient must be positive (no inner wall otherwise)");
  if (tail_.n >= 12)
    throw InvalidInput("core/tail powers degenerate: need tail exponent n < 12");
}

TabulatedPotential::TabulatedPotential(std::vector<double> r, std::vector<double> v,
                                       double splice_radius, TailSpec tail)
    : r_(std::move(r)), v_(std::move(v)), splice_radius_(splice_radius), tail_(tail) {
  tail_.validate();
  const int n = static_cast<int>(r_.size());
  if (n < 4 || v_.size() != r_.size())
    throw InvalidInput("tabulated potential needs at least 4 (r, V) samples");
  for (int i = 0; i + 1 < n; ++i) {
    if (!(r_[i] > 0.0) || !(r_[i] < r_[i + 1]))
      throw InvalidInput("tabulated radii must be positive and strictly increasing");
  }
  if (!(splice_radius_ > r_.front()) || !(splice_radius_ <= r_.back()))
    throw InvalidInput("splice radius must lie inside the tabulated range");

  // natural cubic spline second derivatives (tridiagonal solve)
  m_.assign(n, 0.0);
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (int i = 1; i + 1 < n; ++i) {
    const double h0 = r_[i] - r_[i - 1];
    const double h1 = r_[i + 1] - r_[i];
    const double rhs = 6.0 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
    const double diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
    c[i] = h1 / diag;
    d[i] = (rhs - h0 * d[i - 1]) / diag;
  }
  for (int i = n - 2; i >= 1; --i) m_[i] = d[i] - c[i] * m_[i + 1];
}

int TabulatedPotential::segment(double r) const {
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  int i = static_cast<int>(it - r_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(r_.size()) - 2);
}

double TabulatedPotential::value(double r) const {
  if (r > splice_radius_) return tail_.value(r);
  if (r < r_.front()) {
    // extrapolate the innermost spline segment (steeply repulsive wall)
    const double slope = deriv(r_.front());
    return v_.front() + slope * (r - r_.front());
  }
  const int i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double a = (r_[i + 1] - r) / h, b = (r - r_[i]) / h;
  return a * v_[i] + b * v_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double TabulatedPotential::deriv(double r) const {
  if (r > splice_radius_) return -tail_.n * tail_.value(r) / r;
  const int i = segment(std::max(r, r_.front()));
  const double h = r_[i + 1] - r_[i];
  const double a = (r_[i + 1] - std::max(r, r_.front())) / h;
  const double b = 1.0 - a;
  return (v_[i + 1] - v_[i]) / h +
         h / 6.0 * ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]);
}

double TabulatedPotential::second_deriv(double r) const {
  if (r > splice_radius_) return -tail_.n * (tail_.n + 1.0) * tail_.value(r) / (r * r);
  if (r < r_.front()) return 0.0;
  const int i = segment(r);
  const double h = r_[i + 1] - r_[i];
  const double a = (r_[i + 1] - r) / h, b = (r - r_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

TabulatedPotential TabulatedPotential::from_file(const std::string& path,
                                                 double splice_radius, TailSpec tail) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential file: " + path);
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double ri, vi;
    if (!(ss >> ri)) continue;  // blank / comment-only line
    if (!(ss >> vi))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'r V' pair");
    r.push_back(ri);
    v.push_back(vi);
  }
  return TabulatedPotential(std::move(r), std::move(v), splice_radius, tail);
}

WellSummary well_summary(const Potential& v, double r_lo_hint, double r_hi_hint) {
  if (!(r_lo_hint > 0.0) || !(r_lo_hint < r_hi_hint))
    throw InvalidInput("well_summary: bad bracket hints");
  // bracket the minimum on a log grid, then polish with Brent
  const int kProbe = 256;
  const double step = std::log(r_hi_hint / r_lo_hint) / (kProbe - 1);
  int best = -1;
  double best_v = 0.0;
  std::vector<double> rs(kProbe), vs(kProbe);
  for (int i = 0; i < kProbe; ++i) {
    rs[i] = r_lo_hint * std::exp(i * step);
    vs[i] = v.value(rs[i]);
    if (best < 0 || vs[i] < best_v) {
      best = i;
      best_v = vs[i];
    }
  }
  if (best == 0 || best == kProbe - 1 || !(best_v < 0.0))
    throw PhysicsError("well_summary: no interior potential minimum found");
  const double r_min = brent_minimize([&](double r) { return v.value(r); },
                                      rs[best - 1], rs[best + 1], 1e-12);
  WellSummary w;
  w.r_min = r_min;
  w.v_depth = -v.value(r_min);
  if (!(w.v_depth > 0.0)) throw PhysicsError("well_summary: found minimum is not a well");
  return w;
}

namespace {

ChannelPair finish_pair(std::shared_ptr<const Potential> va,
                        std::shared_ptr<const Potential> vb, const TailSpec& tail,
                        double mu, double boundary_r, double r_well_hint_lo,
                        double r_well_hint_hi) {
  ChannelPair pair;
  pair.va = std::move(va);
  pair.vb = std::move(vb);
  pair.tail = tail;
  pair.mu = mu;
  pair.boundary_r = boundary_r;
  const WellSummary wa = well_summary(*pair.va, r_well_hint_lo, r_well_hint_hi);
  const WellSummary wb = well_summary(*pair.vb, r_well_hint_lo, r_well_hint_hi);
  // the shallower well sets the validity ceiling E << V_depth
  if (wa.v_depth <= wb.v_depth) {
    pair.well_depth = wa.v_depth;
    pair.well_r_min = wa.r_min;
  } else {
    pair.well_depth = wb.v_depth;
    pair.well_r_min = wb.r_min;
  }
  return pair;
}

}  // namespace

ChannelPair make_pair(double c_rep_a, double c_rep_b, const TailSpec& tail, double mu) {
  tail.validate();
  if (!(mu > 0.0)) throw InvalidInput("reduced mass must be positive");
  auto va = std::make_shared<ChannelPotential>('a', c_rep_a, tail);
  auto vb = std::make_shared<ChannelPotential>('b', c_rep_b, tail);
  const ScaleSet scales = derive_scales(tail, mu);
  // boundary: the larger core term has fallen below 1e-10 * E*, which pins
  // the channel difference below any phase-relevant tolerance
  const double c_rep_max = std::max(c_rep_a, c_rep_b);
  const double boundary_r = std::pow(c_rep_max / (1e-10 * scales.e_star), 1.0 / 12.0);
  const double r0 = std::pow(3.0 * c_rep_max / tail.c_n, 1.0 / (12 - tail.n));
  return finish_pair(std::move(va), std::move(vb), tail, mu, boundary_r, 0.05 * r0,
                     std::max(50.0 * r0, 2.0 * boundary_r));
}

ChannelPair make_tabulated_pair(const std::string& file_a, const std::string& file_b,
                                double splice_radius, const TailSpec& tail, double mu) {
  tail.validate();
  if (!(mu > 0.0)) throw InvalidInput("reduced mass must be positive");
  auto va = std::make_shared<TabulatedPotential>(
      TabulatedPotential::from_file(file_a, splice_radius, tail));
  auto vb = std::make_shared<TabulatedPotential>(
      TabulatedPotential::from_file(file_b, splice_radius, tail));
  const double lo = splice_radius * 1e-3;
  return finish_pair(std::move(va), std::move(vb), tail, mu, splice_radius, lo,
                     splice_radius);
}

}  // namespace rescat
