#pragma once

// Closed-form-versus-oracle verification suite. Every grid point evaluates
// the analytic quantities and their brute-force counterparts and records the
// deviation against a fixed tolerance; points where the oracle's truncation
// policy refuses (g/g_c > 0.9) are reported as analytic-only rather than as
// failures. The comparator is exposed separately so a perturbed value can be
// fed through it in sensitivity tests.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oscpair/core.hpp"
#include "oscpair/gaussian.hpp"
#include "oscpair/oracle.hpp"
#include "oscpair/witness.hpp"

namespace oscpair {

struct VerifyCheck {
  std::string name;
  double closed_form = 0.0;
  double oracle_value = 0.0;
  double deviation = 0.0;
  double tol = 0.0;
  bool analytic_only = false;  ///< oracle refused; closed form reported alone
  bool pass = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double worst_duan_dev = 0.0;
  double worst_negativity_dev = 0.0;
  double worst_spectrum_dev = 0.0;
  bool all_pass = true;
};

enum class VerifyPreset { standard, quick };

inline VerifyCheck compare(const std::string& name, double closed,
                           double oracle_value, double tol) {
  VerifyCheck c;
  c.name = name;
  c.closed_form = closed;
  c.oracle_value = oracle_value;
  c.deviation = std::abs(closed - oracle_value);
  c.tol = tol;
  c.pass = c.deviation < tol;
  return c;
}

namespace detail {

struct VerifyGrid {
  std::vector<double> ground_ratios, ground_g_ratios;
  std::vector<double> thermal_g_ratios, thermal_bwm;
  std::vector<double> refused_g_ratios;
  int n_max = 40;
  double duan_tol = 1e-6;
  double negativity_tol = 1e-4;
  double thermal_duan_tol = 1e-5;
  double spectrum_tol = 1e-6;  // relative
};

inline VerifyGrid grid_for(VerifyPreset preset) {
  VerifyGrid g;
  if (preset == VerifyPreset::standard) {
    g.ground_ratios = {0.25, 0.5, 1.0};
    g.ground_g_ratios = {0.1, 0.3, 0.5, 0.7, 0.8};
    g.thermal_g_ratios = {0.3, 0.5, 0.7};
    g.thermal_bwm = {1.0, 2.0, 5.0};
    g.refused_g_ratios = {0.95};
    g.n_max = 40;
  } else {
    g.ground_ratios = {0.5, 1.0};
    g.ground_g_ratios = {0.3};
    g.thermal_g_ratios = {0.5};
    g.thermal_bwm = {2.0};
    g.refused_g_ratios = {0.95};
    g.n_max = 24;
  }
  return g;
}

inline std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::string tag(double ratio, double g_ratio) {
  return "w/W=" + format_short(ratio) + ",g/gc=" + format_short(g_ratio);
}

}  // namespace detail

inline VerifyReport run_verify(VerifyPreset preset = VerifyPreset::standard,
                               int n_max_override = 0) {
  auto grid = detail::grid_for(preset);
  if (n_max_override > 0) grid.n_max = n_max_override;
  VerifyReport report;

  auto add = [&report](VerifyCheck c, double* worst) {
    if (!c.analytic_only && worst) *worst = std::max(*worst, c.deviation);
    report.all_pass = report.all_pass && c.pass;
    report.checks.push_back(std::move(c));
  };

  const oracle::FockConfig cfg{grid.n_max, 1e-7, 4096};

  // ground grid: witness, negativity, spectrum ladder
  for (double ratio : grid.ground_ratios) {
    for (double gr : grid.ground_g_ratios) {
      const OscillatorPair pair(ratio, 1.0, gr * std::sqrt(ratio));
      const std::string where = detail::tag(ratio, gr);
      const auto state = oracle::ground_state(pair, cfg);

      add(compare("duan_ground[" + where + "]", duan_ground(pair).value,
                  oracle::duan(state), grid.duan_tol),
          &report.worst_duan_dev);
      add(compare("log_negativity[" + where + "]",
                  log_negativity(ground_covariance(pair)).log_negativity,
                  oracle::log_negativity(state), grid.negativity_tol),
          &report.worst_negativity_dev);

      const NormalModes nm = normal_modes(pair);
      const double e0_pred =
          0.5 * (nm.omega_minus + nm.omega_plus - pair.omega() - pair.Omega());
      VerifyCheck e0 = compare(
          "ground_energy[" + where + "]", e0_pred, state.ground_energy,
          grid.spectrum_tol * std::max(std::abs(e0_pred), 1e-6));
      add(std::move(e0), &report.worst_spectrum_dev);

      // lowest-6 ladder and the two single-excitation gaps
      const auto spec = oracle::low_spectrum(pair, cfg, 8);
      std::vector<double> ladder;
      for (int km = 0; km < 8; ++km)
        for (int kp = 0; kp < 8; ++kp)
          ladder.push_back(km * nm.omega_minus + kp * nm.omega_plus);
      std::sort(ladder.begin(), ladder.end());
      double worst_rel = 0.0;
      for (int k = 1; k < 6; ++k) {
        const double got = spec[k] - spec[0];
        worst_rel = std::max(worst_rel, std::abs(got - ladder[k]) / ladder[k]);
      }
      double gap_plus_rel = 1.0;
      for (int k = 1; k < static_cast<int>(spec.size()); ++k) {
        gap_plus_rel =
            std::min(gap_plus_rel, std::abs((spec[k] - spec[0]) -
                                            nm.omega_plus) /
                                       nm.omega_plus);
      }
      VerifyCheck lad;
      lad.name = "spectrum_ladder[" + where + "]";
      lad.closed_form = 0.0;
      lad.oracle_value = worst_rel;
      lad.deviation = std::max(worst_rel, gap_plus_rel);
      lad.tol = grid.spectrum_tol;
      lad.pass = lad.deviation < lad.tol;
      add(std::move(lad), &report.worst_spectrum_dev);
    }
  }

  // thermal resonant grid: Eq.-insT witness and thermal negativity
  for (double gr : grid.thermal_g_ratios) {
    for (double bwm : grid.thermal_bwm) {
      const OscillatorPair pair(1.0, 1.0, gr);
      const NormalModes nm = normal_modes(pair);
      const Temperature temp(bwm / nm.omega_minus);
      const std::string where =
          "g/gc=" + detail::format_short(gr) +
          ",bwm=" + detail::format_short(bwm);
      const auto state = oracle::thermal_state(pair, temp, cfg);
      add(compare("duan_thermal[" + where + "]",
                  duan_thermal_resonant(pair, temp).value,
                  oracle::duan(state), grid.thermal_duan_tol),
          &report.worst_duan_dev);
      add(compare("log_negativity_thermal[" + where + "]",
                  log_negativity_resonant(pair, temp).log_negativity,
                  oracle::log_negativity(state), grid.negativity_tol),
          &report.worst_negativity_dev);
    }
  }

  // refusal region: analytic values reported without oracle backing
  for (double gr : grid.refused_g_ratios) {
    const OscillatorPair pair(1.0, 1.0, gr);
    VerifyCheck c;
    c.name = "duan_ground[g/gc=" + detail::format_short(gr) +
             "] (analytic only)";
    c.closed_form = duan_ground(pair).value;
    c.analytic_only = true;
    c.pass = true;
    try {
      oracle::ground_state(pair, oracle::FockConfig{grid.n_max, 1e-7, 4096});
      c.pass = false;  // the refusal policy should have fired
      c.name += " [oracle unexpectedly accepted]";
    } catch (const convergence_error&) {
    }
    add(std::move(c), nullptr);
  }

  return report;
}

}  // namespace oscpair
