#pragma once

#include <functional>
#include <vector>

#include "rescat/common.hpp"

namespace rescat {

/// Inputs of the closed-form correction function.
struct CorrectionInputs {
  double delta_delta0 = 0.0;  // s-wave phase difference, radians
  double delta_A0 = 0.0;      // curvature coefficient
  double lambda = 0.0;        // capture cutoff Lambda = L(L+1), >= 0
};

/// Closed form of the quantal correction function,
///   F = 1/2 - [sin(x)/(2x)] cos(2 d0 - x),   x = Lambda * DeltaA0,
/// with the small-x limit F -> sin^2(d0). Always in [0, 1].
double F_closed(const CorrectionInputs& in);

/// Partial-wave integral F_Lambda = (1/Lambda) Int_0^Lambda sin^2(delta_eta(lam)) dlam
/// by adaptive quadrature; with a linear delta_eta it reproduces F_closed.
double F_quadrature(const std::function<double(double)>& delta_eta_of_lambda,
                    double lambda, double abs_tol = 1e-8);

/// Locking approximation f = sin^2(delta_delta0).
double f_locking(double delta_delta0);

/// Model cross sections built from sigma0, F and sigma_L.
struct SigmaModel {
  double sigma_model = 0.0;  // sigma0 + F sigma_L
  double sigma_lock = 0.0;   // (pi/k^2 + sigma_L) sin^2(d0)
  double sigma_osc = 0.0;    // oscillatory part: sigma_model = sigma0 + sigma_L/2 - sigma_osc
};
SigmaModel sigma_model(double sigma0, double f_corr, double sigma_L, double k,
                       const CorrectionInputs& in);

enum class CaseTag { suppressed, average, enhanced };
enum class Regime { wigner, locking, unlocking };

const char* to_string(CaseTag tag);
const char* to_string(Regime regime);

/// Band assignment from the plateau |delta_delta0|:
/// <= pi/6 suppressed, pi/6..pi/3 average, pi/3..pi/2 enhanced.
CaseTag classify_case(double plateau_delta0);

struct RegimeLabel {
  CaseTag case_tag = CaseTag::suppressed;
  double e_wigner = 0.0;      // = E*
  double e_unlock = 0.0;      // NaN if the scan never unlocks
  double e_lock_onset = 0.0;  // lower edge of the detected locking window
  bool low_confidence = false;
};

/// Regime boundaries from model curves on the scan grid:
/// E_unlock = first energy where |F - f| > 0.1 holds across half a decade;
/// the locking window opens once ceil(L) >= 8 partial waves contribute
/// (below that the continuum conversion of the partial-wave sum is moot).
RegimeLabel classify(double plateau_delta0, double plateau_drift,
                     const std::vector<double>& energies,
                     const std::vector<double>& f_model,
                     const std::vector<double>& f_lock,
                     const std::vector<int>& ell_cutoff, double e_star);

Regime regime_at(const RegimeLabel& label, double energy);

}  // namespace rescat
