#pragma once

// Duan-Simon inseparability witness in the half-normalized quadratures
// x = (a + a†)/2, p = (a - a†)/(2i) (vacuum variance 1/4), for the EPR pair
// u = x_a + x_b, v = p_a - p_b. Separable states obey
// Delta^2 u + Delta^2 v >= 1; a value below 1 certifies entanglement.
//
// For the ground state the witness reduces to
//   W = (omega Omega + w_- w_+) [ (omega+Omega)(w_- + w_+) + (w_+ - w_-) K ]
//       / (8 omega Omega w_- w_+)
// where K can be expressed three equivalent ways (mixing angle, coupling
// strength, or the four frequencies alone); all three are provided and must
// agree. The g = 0 bracket collapses to (omega+Omega)^2 - (Omega-omega)^2
// = 4 omega Omega, pinning the separability boundary at exactly 1.

#include <cmath>

#include "oscpair/core.hpp"
#include "oscpair/gaussian.hpp"

namespace oscpair {

enum class WitnessForm {
  theta_form,
  g_form,
  frequencies_form,
  covariance_form,
  thermal_resonant,
};

inline const char* to_string(WitnessForm f) {
  switch (f) {
    case WitnessForm::theta_form: return "theta_form";
    case WitnessForm::g_form: return "g_form";
    case WitnessForm::frequencies_form: return "frequencies_form";
    case WitnessForm::covariance_form: return "covariance_form";
    case WitnessForm::thermal_resonant: return "thermal_resonant";
  }
  return "?";
}

struct WitnessReport {
  double value;
  double bound = 1.0;
  bool entangled = false;  ///< strict: value < bound (ties are inconclusive)
  WitnessForm form_used = WitnessForm::frequencies_form;
};

namespace detail {

// values within 1e-12 of the bound count as ties: the separability boundary
// itself (g = 0) lands a few ulp off exact 1 and must stay inconclusive
inline WitnessReport make_report(double value, WitnessForm form) {
  WitnessReport r;
  r.value = value;
  r.bound = 1.0;
  r.entangled = value < r.bound - 1e-12;
  r.form_used = form;
  return r;
}

}  // namespace detail

/// Ground-state witness through one of the three closed forms.
inline WitnessReport duan_ground(
    const OscillatorPair& pair,
    WitnessForm form = WitnessForm::frequencies_form) {
  const double w = pair.omega(), W = pair.Omega(), g = pair.g();
  const NormalModes nm = normal_modes(pair);
  const double wm = nm.omega_minus, wp = nm.omega_plus;

  double correction;  // (w_+ - w_-) K in the bracket above
  switch (form) {
    case WitnessForm::theta_form: {
      const double K = (w - W) * std::cos(2.0 * nm.theta) -
                       2.0 * std::sqrt(w * W) * std::sin(2.0 * nm.theta);
      correction = (wp - wm) * K;
      break;
    }
    case WitnessForm::g_form: {
      // K = -(4 g omega Omega + (omega-Omega)^2 (omega+Omega)) / root with
      // root = sqrt((omega^2-Omega^2)^2 + 4 omega Omega g^2); at g = 0 the
      // root equals the bare splitting and K reduces to (omega - Omega).
      const double bare = w * w - W * W;
      const double root = std::sqrt(bare * bare + 4.0 * w * W * g * g);
      if (root == 0.0) {  // resonant, g = 0
        correction = 0.0;
        break;
      }
      correction = -(wp - wm) *
                   (4.0 * g * w * W + (w - W) * (w - W) * (w + W)) / root;
      break;
    }
    case WitnessForm::frequencies_form: {
      // (w_+ - w_-) K rewritten with (w_+ - w_-) = (w_+^2 - w_-^2)/(w_+ + w_-)
      // and the coupling eliminated through the frequency relation.
      const double dressed = wp * wp - wm * wm;
      const double bare = W * W - w * w;
      const double rad = std::max(0.0, dressed * dressed - bare * bare);
      correction = -(2.0 * std::sqrt(w * W) * std::sqrt(rad) +
                     (w + W) * (w - W) * (w - W)) /
                   (wm + wp);
      break;
    }
    default:
      throw domain_error(
          "duan_ground evaluates the theta/g/frequencies closed forms only");
  }

  const double bracket = (w + W) * (wm + wp) + correction;
  const double value =
      (w * W + wm * wp) * bracket / (8.0 * w * W * wm * wp);
  return detail::make_report(value, form);
}

/// Resonant thermal witness,
///   e^{-2 xi_-} (n_- + 1/2) + e^{2 xi_+} (n_+ + 1/2),
/// with n_pm the Bose occupations of the dressed modes. The beta -> infinity
/// limit is omega_-/(2 omega) + omega/(2 omega_+), the resonant ground form.
inline WitnessReport duan_thermal_resonant(const OscillatorPair& pair,
                                           const Temperature& temp) {
  if (!pair.resonant()) {
    throw domain_error(
        "duan_thermal_resonant requires omega == Omega; use "
        "duan_from_covariance off resonance");
  }
  const NormalModes nm = normal_modes(pair);
  const double nminus = thermal_occupation(temp, nm.omega_minus);
  const double nplus = thermal_occupation(temp, nm.omega_plus);
  const double value = std::exp(-2.0 * nm.xi_minus) * (nminus + 0.5) +
                       std::exp(2.0 * nm.xi_plus) * (nplus + 0.5);
  return detail::make_report(value, WitnessForm::thermal_resonant);
}

/// Witness from an explicit covariance matrix; this is the general route for
/// non-resonant thermal states. The covariance lives in the dimensional
/// quadratures (vacuum <X^2> = 1/(2 omega)), so the bridge back to the
/// half-normalized convention is
///   Delta^2 u = (omega/2) X_11 + (Omega/2) X_22 + sqrt(omega Omega) X_12
///   Delta^2 v = P_11/(2 omega) + P_22/(2 Omega) - P_12/sqrt(omega Omega),
/// normalized so the uncoupled vacuum sits exactly on the bound.
inline WitnessReport duan_from_covariance(const CovarianceMatrix& cov,
                                          const OscillatorPair& pair) {
  const double w = pair.omega(), W = pair.Omega();
  if (std::abs(cov.omega - w) > 1e-12 * w ||
      std::abs(cov.Omega - W) > 1e-12 * W) {
    throw domain_error(
        "covariance was built for a different oscillator pair");
  }
  const double du = 0.5 * w * cov.X.m00 + 0.5 * W * cov.X.m11 +
                    std::sqrt(w * W) * cov.X.m01;
  const double dv = cov.P.m00 / (2.0 * w) + cov.P.m11 / (2.0 * W) -
                    cov.P.m01 / std::sqrt(w * W);
  return detail::make_report(du + dv, WitnessForm::covariance_form);
}

/// The far-detuned limit expression e^{-2 xi_-}/2 + e^{2 xi_-}/2
/// = omega_-/(2 omega) + omega/(2 omega_-), which is >= 1 for every input by
/// the AM-GM inequality. Only valid as the witness itself when Omega >> omega
/// with fixed absolute coupling; the exact witness can dip below 1 at large
/// detuning when g tracks g_c.
inline double offresonant_limit_value(const OscillatorPair& pair) {
  const NormalModes nm = normal_modes(pair);
  return nm.omega_minus / (2.0 * pair.omega()) +
         pair.omega() / (2.0 * nm.omega_minus);
}

}  // namespace oscpair
