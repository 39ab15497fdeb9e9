#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rescat/scales.hpp"

namespace rescat {

/// Radial interaction potential. Derivatives are needed by the integrators'
/// block-boundary handoff and by the grid refinement rule.
class Potential {
 public:
  virtual ~Potential() = default;
  virtual double value(double r) const = 0;
  virtual double deriv(double r) const = 0;
  virtual double second_deriv(double r) const = 0;
};

/// Model channel: repulsive 1/r^12 core plus the shared attractive tail,
///   V(r) = C_rep / r^12 - C_n / r^n.
/// Stands in for ab initio curves; one core coefficient per channel.
class ChannelPotential final : public Potential {
 public:
  ChannelPotential(char label, double c_rep, TailSpec tail);

  double value(double r) const override {
    const double inv = 1.0 / r;
    const double inv4 = square(square(inv));
    return c_rep_ * square(inv4) * inv4 - tail_.c_n * std::pow(inv, tail_.n);
  }
  double deriv(double r) const override {
    const double inv = 1.0 / r;
    const double inv4 = square(square(inv));
    return -12.0 * c_rep_ * square(inv4) * inv4 * inv +
           tail_.n * tail_.c_n * std::pow(inv, tail_.n + 1);
  }
  double second_deriv(double r) const override {
    const double inv = 1.0 / r;
    const double inv4 = square(square(inv));
    return 156.0 * c_rep_ * square(inv4) * inv4 * inv * inv -
           tail_.n * (tail_.n + 1.0) * tail_.c_n * std::pow(inv, tail_.n + 2);
  }

  char label() const { return label_; }
  double c_rep() const { return c_rep_; }
  const TailSpec& tail() const { return tail_; }

 private:
  char label_;
  double c_rep_;
  TailSpec tail_;
};

/// Tabulated potential: natural cubic spline through (r, V) samples up to a
/// declared splice radius, pure power-law tail beyond it.
class TabulatedPotential final : public Potential {
 public:
  TabulatedPotential(std::vector<double> r, std::vector<double> v,
                     double splice_radius, TailSpec tail);

  static TabulatedPotential from_file(const std::string& path,
                                      double splice_radius, TailSpec tail);

  double value(double r) const override;
  double deriv(double r) const override;
  double second_deriv(double r) const override;

  double splice_radius() const { return splice_radius_; }

 private:
  int segment(double r) const;

  std::vector<double> r_, v_, m_;  // knots, values, spline second derivatives
  double splice_radius_;
  TailSpec tail_;
};

/// Location and depth of the potential minimum.
struct WellSummary {
  double r_min = 0.0;
  double v_depth = 0.0;  // positive
};

/// Bracketed minimization of V over (0, inf); relative tolerance 1e-10.
WellSummary well_summary(const Potential& v, double r_lo_hint, double r_hi_hint);

/// Two scattering channels sharing one long-range tail. The exchange
/// interaction lives entirely below boundary_r.
struct ChannelPair {
  std::shared_ptr<const Potential> va;
  std::shared_ptr<const Potential> vb;
  TailSpec tail;
  double mu = 0.0;
  double boundary_r = 0.0;      // channels agree beyond this radius
  double well_depth = 0.0;      // depth of the shallower well (energy ceiling)
  double well_r_min = 0.0;      // minimum location of the shallower well
};

/// Build a model pair from two core coefficients and a shared tail.
/// boundary_r is placed where the larger core term drops below 1e-10 * E*.
ChannelPair make_pair(double c_rep_a, double c_rep_b, const TailSpec& tail, double mu);

/// Build a pair from tabulated samples (text files: "r V" rows, '#' comments).
ChannelPair make_tabulated_pair(const std::string& file_a, const std::string& file_b,
                                double splice_radius, const TailSpec& tail, double mu);

}  // namespace rescat
