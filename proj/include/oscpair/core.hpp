#pragma once

// Two linearly coupled harmonic oscillators,
//
//   H = omega a†a + Omega b†b + (g/2)(a + a†)(b + b†),
//
// diagonalized exactly into two dressed modes c, d with frequencies
// omega_minus <= omega <= Omega <= omega_plus. Everything downstream
// (covariances, witnesses, metrology bounds) is a closed-form function of
// the four frequencies plus the mixing angle, so this header carries the
// whole analytic backbone. Units: hbar = k_B = 1, frequencies in multiples
// of an arbitrary caller-chosen reference.

#include <array>
#include <cmath>
#include <utility>

#include "oscpair/errors.hpp"

namespace oscpair {

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw domain_error(std::string(name) + " must be finite");
  }
}

inline void require_positive(double v, const char* name) {
  require_finite(v, name);
  if (v <= 0.0) {
    throw domain_error(std::string(name) + " must be > 0");
  }
}

}  // namespace detail

/// Instability threshold g_c = sqrt(omega * Omega).
inline double critical_coupling(double omega, double Omega) {
  detail::require_positive(omega, "omega");
  detail::require_positive(Omega, "Omega");
  return std::sqrt(omega * Omega);
}

/// Margin kept below g_c: construction requires g < g_c * (1 - kCriticalMargin)
/// so omega_minus^2 stays clear of catastrophic cancellation.
inline constexpr double kCriticalMargin = 1e-9;

/// Bare frequencies and coupling. Labels are normalized so omega <= Omega;
/// if the caller's labels arrive the other way round they are swapped and
/// the swap recorded (reports can then restore the caller's naming).
class OscillatorPair {
 public:
  OscillatorPair(double omega, double Omega, double g)
      : omega_(omega), Omega_(Omega), g_(g) {
    detail::require_positive(omega_, "omega");
    detail::require_positive(Omega_, "Omega");
    detail::require_finite(g_, "g");
    if (g_ < 0.0) throw domain_error("g must be >= 0");
    if (omega_ > Omega_) {
      std::swap(omega_, Omega_);
      swapped_ = true;
    }
    const double gc = std::sqrt(omega_ * Omega_);
    if (g_ >= gc * (1.0 - kCriticalMargin)) {
      throw domain_error("coupling at or beyond the instability threshold: "
                         "g >= g_c (1 - 1e-9)");
    }
  }

  double omega() const { return omega_; }
  double Omega() const { return Omega_; }
  double g() const { return g_; }
  double critical() const { return std::sqrt(omega_ * Omega_); }
  double g_ratio() const { return g_ / critical(); }
  /// True when the caller supplied omega > Omega and labels were swapped.
  bool labels_swapped() const { return swapped_; }
  bool resonant() const { return Omega_ - omega_ <= 1e-12 * Omega_; }

 private:
  double omega_, Omega_, g_;
  bool swapped_ = false;
};

/// Dressed frequencies, mixing angle and the two single-mode squeezing
/// parameters. xi_minus >= 0 belongs to the lower bare mode, xi_plus <= 0
/// to the upper one; omega_minus = omega e^{-2 xi_minus} and
/// omega_plus = Omega e^{-2 xi_plus} hold by construction.
struct NormalModes {
  double omega_minus;
  double omega_plus;
  double theta;
  double xi_minus;
  double xi_plus;
};

/// Exact diagonalization of the position-coupling matrix
/// V = [[omega^2, G], [G, Omega^2]], G = g sqrt(omega Omega):
///   omega_pm^2 = (omega^2 + Omega^2)/2 ± sqrt(((omega^2-Omega^2)/2)^2 + G^2)
/// with theta = atan2(2G, Omega^2 - omega^2) / 2 in [0, pi/4].
/// omega_minus^2 is evaluated through the eigenvalue product
/// omega Omega (g_c^2 - g^2) / omega_plus^2, which stays accurate arbitrarily
/// close to the threshold. theta = 0 at g = 0 (any angle diagonalizes there;
/// the identity is the canonical choice).
inline NormalModes normal_modes(const OscillatorPair& pair) {
  const double w = pair.omega(), W = pair.Omega(), g = pair.g();
  if (g == 0.0) return {w, W, 0.0, 0.0, 0.0};
  const double half_split = 0.5 * (W * W - w * w);
  const double G = g * std::sqrt(w * W);
  const double root = std::sqrt(half_split * half_split + G * G);
  const double wp2 = 0.5 * (w * w + W * W) + root;
  const double wm2 = w * W * (w * W - g * g) / wp2;
  const double wp = std::sqrt(wp2);
  const double wm = std::sqrt(wm2);
  const double theta = 0.5 * std::atan2(2.0 * G, W * W - w * w);
  return {wm, wp, theta, -0.5 * std::log(wm / w), -0.5 * std::log(wp / W)};
}

/// Spectroscopy inversion: squeezing parameters from measured bare and
/// dressed frequencies, xi_- = -log(omega_-/omega)/2, xi_+ = -log(omega_+/Omega)/2.
inline std::pair<double, double> squeezing_from_frequencies(
    double omega, double Omega, double omega_minus, double omega_plus) {
  detail::require_positive(omega, "omega");
  detail::require_positive(Omega, "Omega");
  detail::require_positive(omega_minus, "omega_minus");
  detail::require_positive(omega_plus, "omega_plus");
  // tiny relative slack so normal_modes round trips survive rounding
  if (omega_minus > omega * (1.0 + 1e-12) ||
      omega_plus < Omega * (1.0 - 1e-12)) {
    throw spectrum_error(
        "unphysical spectroscopy input: require omega_minus <= omega and "
        "omega_plus >= Omega");
  }
  return {-0.5 * std::log(omega_minus / omega),
          -0.5 * std::log(omega_plus / Omega)};
}

/// Coupling strength from the four frequencies,
///   g = sqrt(((omega_+^2 - omega_-^2)^2 - (Omega^2 - omega^2)^2) / (4 omega Omega)).
/// A negative radicand means the spectrum cannot come from the bilinear
/// Hamiltonian at all.
inline double coupling_from_frequencies(double omega, double Omega,
                                        double omega_minus,
                                        double omega_plus) {
  detail::require_positive(omega, "omega");
  detail::require_positive(Omega, "Omega");
  detail::require_positive(omega_minus, "omega_minus");
  detail::require_positive(omega_plus, "omega_plus");
  const double dressed = omega_plus * omega_plus - omega_minus * omega_minus;
  const double bare = Omega * Omega - omega * omega;
  const double numerator = dressed * dressed - bare * bare;
  const double scale = std::max(dressed * dressed, bare * bare);
  if (numerator < 0.0) {
    if (numerator < -1e-12 * scale) {
      throw spectrum_error(
          "inconsistent spectrum: dressed splitting smaller than bare "
          "splitting");
    }
    return 0.0;  // roundoff-negative radicand at g ~ 0
  }
  return std::sqrt(numerator / (4.0 * omega * Omega));
}

/// Real 4x4 matrix taking the bare operator column (a, a†, b, b†) to the
/// dressed column (c, c†, d, d†). Bosonic commutators are preserved:
/// [c,c†]=[d,d†]=1, [c,d]=[c,d†]=0 as bilinear identities on the entries.
struct SymplecticTransform {
  std::array<std::array<double, 4>, 4> coeffs;

  /// [row_i, row_j†]-style bilinear; rows in (c, c†, d, d†) order map to
  /// operators X_i = sum_k coeffs[i][k] * (a,a†,b,b†)_k. For X = u1 a + v1 a†
  /// + u2 b + v2 b† and Y likewise, [X, Y†] = u1 uY1 - v1 vY1 + u2 uY2 - v2 vY2
  /// when Y† has coefficients (vY1, uY1, vY2, uY2).
  double commutator_with_dagger(int i, int j) const {
    const auto& x = coeffs[i];
    const auto& y = coeffs[j];
    return x[0] * y[0] - x[1] * y[1] + x[2] * y[2] - x[3] * y[3];
  }
  /// Plain commutator [X_i, X_j] as a bilinear on the entries.
  double commutator(int i, int j) const {
    const auto& x = coeffs[i];
    const auto& y = coeffs[j];
    return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
  }
};

/// Bogoliubov coefficients of the dressed annihilation operators. The dressed
/// mode c is the quadrature pair (X_-, P_-) quantized at omega_minus, where
/// X_- = cos(theta) X_a - sin(theta) X_b, so
///   c = cos(theta) [(omega+omega_-) a + (omega_- - omega) a†] / (2 sqrt(omega omega_-))
///     - sin(theta) [(Omega+omega_-) b + (omega_- - Omega) b†] / (2 sqrt(Omega omega_-))
/// and d analogously from (X_+, P_+) at omega_plus. These satisfy
/// [c, H] = omega_- c and annihilate the ground state; g = 0 gives the
/// identity mapping.
inline SymplecticTransform bogoliubov(const OscillatorPair& pair) {
  const NormalModes nm = normal_modes(pair);
  const double w = pair.omega(), W = pair.Omega();
  const double wm = nm.omega_minus, wp = nm.omega_plus;
  const double c = std::cos(nm.theta), s = std::sin(nm.theta);

  const double ca_u = c * (w + wm) / (2.0 * std::sqrt(w * wm));
  const double ca_v = c * (wm - w) / (2.0 * std::sqrt(w * wm));
  const double cb_u = -s * (W + wm) / (2.0 * std::sqrt(W * wm));
  const double cb_v = -s * (wm - W) / (2.0 * std::sqrt(W * wm));

  const double da_u = s * (w + wp) / (2.0 * std::sqrt(w * wp));
  const double da_v = s * (wp - w) / (2.0 * std::sqrt(w * wp));
  const double db_u = c * (W + wp) / (2.0 * std::sqrt(W * wp));
  const double db_v = c * (wp - W) / (2.0 * std::sqrt(W * wp));

  SymplecticTransform t;
  t.coeffs[0] = {ca_u, ca_v, cb_u, cb_v};  // c
  t.coeffs[1] = {ca_v, ca_u, cb_v, cb_u};  // c†
  t.coeffs[2] = {da_u, da_v, db_u, db_v};  // d
  t.coeffs[3] = {da_v, da_u, db_v, db_u};  // d†
  return t;
}

}  // namespace oscpair
