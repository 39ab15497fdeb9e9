#pragma once

// Internal piecewise-uniform Numerov propagation engine shared by the radial
// and envelope integrators. Blocks carry steps h_top / 2^m; transitions are
// re-seeded exactly when possible (outward doubling) and otherwise through a
// one-sided fifth-order Taylor ghost built from U, U', U''.

#include <array>
#include <cmath>

#include "rescat/grid.hpp"

namespace rescat::detail {

constexpr double kRescaleLimit = 0x1p+1020;
constexpr double kRescaleFactor = 0x1p-1020;

// u(r + h) = A u(r) + B h u'(r) for u'' = U u, through O(h^5) (signed h).
struct TaylorAB {
  double a, b;
};
inline TaylorAB taylor_ab(double u, double du, double ddu, double h) {
  const double h2 = h * h;
  TaylorAB t;
  t.a = 1.0 + h2 * u / 2.0 + h2 * h * du / 6.0 + h2 * h2 * (ddu + u * u) / 24.0 +
        h2 * h2 * h * u * du / 30.0;
  t.b = 1.0 + h2 * u / 6.0 + h2 * h * du / 12.0 + h2 * h2 * (3.0 * ddu + u * u) / 120.0;
  return t;
}

// U(r) = 2 mu (V - E) + l(l+1)/r^2 and its first two derivatives.
struct UField {
  const Potential* v = nullptr;
  double two_mu = 0.0;
  double energy = 0.0;
  double lam = 0.0;
  double operator()(double r) const {
    return two_mu * (v->value(r) - energy) + lam / (r * r);
  }
  double d1(double r) const {
    return two_mu * v->deriv(r) - 2.0 * lam / (r * r * r);
  }
  double d2(double r) const {
    return two_mu * v->second_deriv(r) + 6.0 * lam / (r * r * r * r);
  }
};

// Sweep over the whole grid. Seeds are the values at the first two samples in
// sweep order. emit(i, values, shift) is called for EVERY sample including the
// seeds; returning false stops the sweep early. True value = value * 2^(1020*shift).
template <int NS, typename U, typename Emit>
void numerov_sweep(const RadialGrid& grid, const U& u_field, bool outward,
                   std::array<double, NS> seed_first,
                   std::array<double, NS> seed_second, Emit&& emit) {
  const auto& blocks = grid.blocks();
  const int nb = static_cast<int>(blocks.size());
  std::array<double, NS> prev = seed_first, cur = seed_second, prev2{};
  int shift = 0;

  const int b_begin = outward ? 0 : nb - 1;
  const int b_end = outward ? nb : -1;
  const int b_stride = outward ? 1 : -1;

  bool first_block = true;
  double h_old = 0.0;
  for (int bi = b_begin; bi != b_end; bi += b_stride) {
    const auto& blk = blocks[bi];
    const double h = blk.h;
    const double hh12 = h * h / 12.0;
    const double dir = outward ? 1.0 : -1.0;

    // local index of the sample held in `cur` at entry to this block
    int j_cur;
    if (first_block) {
      j_cur = outward ? 1 : blk.n - 1;
      const int j_prev = outward ? 0 : blk.n;
      if (!emit(blk.first + j_prev, prev, shift)) return;
      if (!emit(blk.first + j_cur, cur, shift)) return;
      first_block = false;
    } else {
      // transition: cur sits on the shared endpoint sample
      j_cur = outward ? 0 : blk.n;
      if (h != h_old) {
        const double r_b = blk.r0 + j_cur * h;
        if (outward && h == 2.0 * h_old) {
          prev = prev2;  // exact: the sample two fine steps back
        } else {
          const double ub = u_field(r_b), du = u_field.d1(r_b), ddu = u_field.d2(r_b);
          const TaylorAB old_ab = taylor_ab(ub, du, ddu, -dir * h_old);
          const TaylorAB new_ab = taylor_ab(ub, du, ddu, -dir * h);
          for (int s = 0; s < NS; ++s) {
            const double dudr =
                (prev[s] - old_ab.a * cur[s]) / (old_ab.b * (-dir * h_old));
            prev[s] = new_ab.a * cur[s] + new_ab.b * (-dir * h) * dudr;
          }
        }
      }
    }

    const int j_stop = outward ? blk.n : 0;
    double f_prev = 1.0 - hh12 * u_field(blk.r0 + (j_cur - b_stride) * h);
    double f_cur = 1.0 - hh12 * u_field(blk.r0 + j_cur * h);
    for (int j = j_cur + b_stride; outward ? (j <= j_stop) : (j >= j_stop);
         j += b_stride) {
      const double f_next = 1.0 - hh12 * u_field(blk.r0 + j * h);
      double amax = 0.0;
      for (int s = 0; s < NS; ++s) {
        const double u_next =
            ((12.0 - 10.0 * f_cur) * cur[s] - f_prev * prev[s]) / f_next;
        prev2[s] = prev[s];
        prev[s] = cur[s];
        cur[s] = u_next;
        amax = std::max(amax, std::abs(u_next));
      }
      f_prev = f_cur;
      f_cur = f_next;
      if (amax > kRescaleLimit) {
        for (int s = 0; s < NS; ++s) {
          prev2[s] *= kRescaleFactor;
          prev[s] *= kRescaleFactor;
          cur[s] *= kRescaleFactor;
        }
        ++shift;
      }
      if (!emit(blk.first + j, cur, shift)) return;
    }
    h_old = h;
    (void)dir;
  }
}

}  // namespace rescat::detail
