#pragma once

// Grid sweeps and single-point evaluation backing the CLI. Sweeps are
// parameterized by dimensionless coordinates (omega / Omega, g / g_c and
// beta omega_-, with Omega = 1 as the reference frequency); the inverse
// temperature is resolved per cell as beta = (beta omega_-) / omega_-(g),
// because omega_- itself moves with the coupling. Output is deterministic:
// fixed row-major cell order and %.17g float formatting, so identical
// invocations are byte-identical.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "oscpair/core.hpp"
#include "oscpair/errors.hpp"
#include "oscpair/gaussian.hpp"
#include "oscpair/metrology.hpp"
#include "oscpair/witness.hpp"

namespace oscpair {

inline std::string format17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class Axis { omega_ratio, g_ratio, beta_omega_minus };
enum class Quantity { duan, log_negativity, enhancement };

inline const char* to_string(Axis a) {
  switch (a) {
    case Axis::omega_ratio: return "omega_ratio";
    case Axis::g_ratio: return "g_ratio";
    case Axis::beta_omega_minus: return "beta_omega_minus";
  }
  return "?";
}

inline const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::duan: return "duan";
    case Quantity::log_negativity: return "log_negativity";
    case Quantity::enhancement: return "enhancement";
  }
  return "?";
}

struct AxisSpec {
  Axis name;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
};

struct SweepSpec {
  AxisSpec axis1;
  AxisSpec axis2;
  // fixed values for whichever coordinates are not on an axis
  double omega_ratio = 1.0;
  double g_ratio = 0.0;
  double beta_omega_minus = std::numeric_limits<double>::infinity();
  Quantity quantity = Quantity::duan;
  bool clamp_at_one = false;
};

/// Parameters of a single evaluation point (absolute units).
struct PointParams {
  double omega = 1.0;
  double Omega = 1.0;
  double g = 0.0;
  std::optional<double> g_ratio;           ///< overrides g when set
  double beta = std::numeric_limits<double>::infinity();
  std::optional<double> beta_omega_minus;  ///< overrides beta when set
  double mean_excitation = 1.0;
  double time = 1.0;
};

/// Everything the point queries report. The witness picks the thermal
/// resonant closed form at resonance and the covariance route otherwise;
/// the negativity always goes through the general symplectic pipeline.
struct PointReport {
  OscillatorPair pair;
  double beta;
  NormalModes modes;
  WitnessReport witness;
  NegativityResult negativity;
  SnrReport snr;
};

inline PointReport run_point(const PointParams& params) {
  detail::require_positive(params.omega, "omega");
  detail::require_positive(params.Omega, "Omega");
  double g = params.g;
  if (params.g_ratio) {
    g = *params.g_ratio * critical_coupling(params.omega, params.Omega);
  }
  OscillatorPair pair(params.omega, params.Omega, g);
  const NormalModes nm = normal_modes(pair);
  double beta = params.beta;
  if (params.beta_omega_minus) {
    beta = *params.beta_omega_minus / nm.omega_minus;
  }
  const Temperature temp(beta);

  WitnessReport witness =
      temp.is_ground()
          ? duan_ground(pair)
          : (pair.resonant()
                 ? duan_thermal_resonant(pair, temp)
                 : duan_from_covariance(thermal_covariance(pair, temp), pair));
  const CovarianceMatrix cov = temp.is_ground()
                                   ? ground_covariance(pair)
                                   : thermal_covariance(pair, temp);
  const NegativityResult neg = log_negativity(cov);
  const SnrReport snr = snr_bound_interacting(
      pair, ProbeSpec{params.mean_excitation, params.time, 0.0});
  return {pair, beta, nm, witness, neg, snr};
}

namespace detail {

inline void validate(const AxisSpec& ax) {
  if (ax.count < 2) throw domain_error("axis count must be >= 2");
  if (!(ax.min <= ax.max)) throw domain_error("axis min must be <= max");
  switch (ax.name) {
    case Axis::omega_ratio:
      if (ax.min <= 0.0 || ax.max > 1.0) {
        throw domain_error("omega_ratio axis must lie in (0, 1]");
      }
      break;
    case Axis::g_ratio:
      if (ax.min < 0.0 || ax.max >= 1.0) {
        throw domain_error("g_ratio axis must lie in [0, 1)");
      }
      break;
    case Axis::beta_omega_minus:
      if (ax.min <= 0.0) {
        throw domain_error("beta_omega_minus axis must be > 0");
      }
      break;
  }
}

inline double axis_value(const AxisSpec& ax, int i) {
  return ax.min + (ax.max - ax.min) * double(i) / double(ax.count - 1);
}

struct CellResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool entangled = false;
  std::string error;
};

inline CellResult evaluate_cell(double omega_ratio, double g_ratio,
                                double beta_omega_minus, Quantity q) {
  CellResult cell;
  try {
    OscillatorPair pair(omega_ratio, 1.0,
                        g_ratio * critical_coupling(omega_ratio, 1.0));
    const NormalModes nm = normal_modes(pair);
    const bool ground = std::isinf(beta_omega_minus);
    const Temperature temp =
        ground ? Temperature::ground()
               : Temperature(beta_omega_minus / nm.omega_minus);
    switch (q) {
      case Quantity::duan: {
        const WitnessReport r =
            ground ? duan_ground(pair)
                   : (pair.resonant() ? duan_thermal_resonant(pair, temp)
                                      : duan_from_covariance(
                                            thermal_covariance(pair, temp),
                                            pair));
        cell.value = r.value;
        cell.entangled = r.entangled;
        break;
      }
      case Quantity::log_negativity: {
        const CovarianceMatrix cov = ground
                                         ? ground_covariance(pair)
                                         : thermal_covariance(pair, temp);
        const NegativityResult r = log_negativity(cov);
        cell.value = r.log_negativity;
        cell.entangled = r.log_negativity > 0.0;
        break;
      }
      case Quantity::enhancement: {
        cell.value = snr_bound_interacting(pair, {1.0, 1.0, 0.0})
                         .enhancement_over_sql;
        cell.entangled = duan_ground(pair).entangled;
        break;
      }
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (auto& ch : msg) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    cell.error = msg;
  }
  return cell;
}

}  // namespace detail

/// Row-major CSV sweep. Header: axis1,axis2,value[,display_value],entangled,error;
/// display_value (value clamped at 1) appears only when the spec asks for
/// clamping, and `value` always carries the raw number. Cell failures are
/// recorded in-row as nan plus the error message; the sweep continues.
inline std::string run_sweep(const SweepSpec& spec) {
  detail::validate(spec.axis1);
  detail::validate(spec.axis2);
  if (spec.axis1.name == spec.axis2.name) {
    throw domain_error("sweep axes must differ");
  }

  std::string out;
  out += to_string(spec.axis1.name);
  out += ',';
  out += to_string(spec.axis2.name);
  out += ",value";
  if (spec.clamp_at_one) out += ",display_value";
  out += ",entangled,error\n";

  for (int i = 0; i < spec.axis1.count; ++i) {
    const double v1 = detail::axis_value(spec.axis1, i);
    for (int j = 0; j < spec.axis2.count; ++j) {
      const double v2 = detail::axis_value(spec.axis2, j);
      double omega_ratio = spec.omega_ratio;
      double g_ratio = spec.g_ratio;
      double bwm = spec.beta_omega_minus;
      for (const auto& [ax, val] :
           {std::pair{spec.axis1, v1}, std::pair{spec.axis2, v2}}) {
        switch (ax.name) {
          case Axis::omega_ratio: omega_ratio = val; break;
          case Axis::g_ratio: g_ratio = val; break;
          case Axis::beta_omega_minus: bwm = val; break;
        }
      }
      const auto cell =
          detail::evaluate_cell(omega_ratio, g_ratio, bwm, spec.quantity);
      out += format17(v1);
      out += ',';
      out += format17(v2);
      out += ',';
      out += format17(cell.value);
      if (spec.clamp_at_one) {
        out += ',';
        out += format17(std::isnan(cell.value) ? cell.value
                                               : std::min(cell.value, 1.0));
      }
      out += ',';
      out += cell.entangled ? "true" : "false";
      out += ',';
      out += cell.error;
      out += '\n';
    }
  }
  return out;
}

/// Ground-state witness versus omega/Omega and g/g_c, 50x50, clamped display.
inline SweepSpec fig1_preset() {
  SweepSpec s;
  s.axis1 = {Axis::omega_ratio, 0.05, 1.0, 50};
  s.axis2 = {Axis::g_ratio, 0.0, 0.99, 50};
  s.quantity = Quantity::duan;
  s.clamp_at_one = true;
  return s;
}

/// Resonant thermal witness versus g/g_c and beta omega_-, 50x50.
inline SweepSpec fig2_preset() {
  SweepSpec s;
  s.axis1 = {Axis::g_ratio, 0.0, 0.99, 50};
  s.axis2 = {Axis::beta_omega_minus, 0.1, 10.0, 50};
  s.omega_ratio = 1.0;
  s.quantity = Quantity::duan;
  s.clamp_at_one = true;
  return s;
}

}  // namespace oscpair
