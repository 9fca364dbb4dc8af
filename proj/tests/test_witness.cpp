#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oscpair/witness.hpp"

using namespace oscpair;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("boundary exactness: g = 0 sits on the separability bound") {
  std::mt19937_64 rng(40221);
  std::uniform_real_distribution<double> freq(0.05, 20.0);
  for (int i = 0; i < 100; ++i) {
    const OscillatorPair p(freq(rng), freq(rng), 0.0);
    for (auto form : {WitnessForm::theta_form, WitnessForm::g_form,
                      WitnessForm::frequencies_form}) {
      const auto r = duan_ground(p, form);
      CHECK_THAT(r.value, WithinAbs(1.0, 1e-12));
      CHECK_FALSE(r.entangled);  // ties are inconclusive, not entangled
    }
  }
}

TEST_CASE("ground witness: known points") {
  const auto res = duan_ground(OscillatorPair(1.0, 1.0, 0.5));
  CHECK_THAT(res.value, WithinRel(0.76180168105713675, 1e-13));
  CHECK(res.entangled);
  CHECK(res.bound == 1.0);

  const auto det = duan_ground(OscillatorPair(1.0, 2.0, 0.5));
  CHECK_THAT(det.value, WithinRel(0.84085047892628673, 1e-13));
  CHECK(det.entangled);
}

TEST_CASE("three closed forms agree over the parameter plane") {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double ratio = 0.05 + (1.0 - 0.05) * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double gr = 0.99 * j / 49.0;
      const OscillatorPair p(ratio, 1.0, gr * std::sqrt(ratio));
      const double a = duan_ground(p, WitnessForm::theta_form).value;
      const double b = duan_ground(p, WitnessForm::g_form).value;
      const double c = duan_ground(p, WitnessForm::frequencies_form).value;
      worst = std::max(worst, std::abs(a - b) / a);
      worst = std::max(worst, std::abs(a - c) / a);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("resonant reduction of the frequencies form") {
  for (double gr : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const OscillatorPair p(1.0, 1.0, gr);
    const auto nm = normal_modes(p);
    const double reduced =
        nm.omega_minus / 2.0 + 1.0 / (2.0 * nm.omega_plus);
    CHECK_THAT(duan_ground(p, WitnessForm::frequencies_form).value,
               WithinRel(reduced, 1e-12));
  }
}

TEST_CASE("witness is scale covariant") {
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> lam(0.01, 100.0);
  for (int i = 0; i < 50; ++i) {
    const double s = lam(rng);
    const double a = duan_ground(OscillatorPair(1.0, 2.0, 0.7)).value;
    const double b = duan_ground(OscillatorPair(s, 2 * s, 0.7 * s)).value;
    CHECK_THAT(b, WithinRel(a, 1e-12));
  }
}

TEST_CASE("thermal resonant witness") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  const auto nm = normal_modes(p);

  SECTION("known value at beta omega_- = 2") {
    const auto r = duan_thermal_resonant(p, Temperature(2.0 / nm.omega_minus));
    CHECK_THAT(r.value, WithinRel(0.89885943907171362, 1e-13));
    CHECK(r.entangled);
    CHECK(r.form_used == WitnessForm::thermal_resonant);
  }
  SECTION("hot state is not entangled") {
    const auto r = duan_thermal_resonant(p, Temperature(0.2 / nm.omega_minus));
    CHECK(r.value > 1.0);
    CHECK_FALSE(r.entangled);
  }
  SECTION("ground limit matches duan_ground") {
    const auto r = duan_thermal_resonant(p, Temperature::ground());
    CHECK_THAT(r.value, WithinAbs(duan_ground(p).value, 1e-12));
  }
  SECTION("uncoupled thermal product state never violates the bound") {
    const OscillatorPair free(1.0, 1.0, 0.0);
    for (double beta : {0.5, 1.0, 3.0}) {
      const auto r = duan_thermal_resonant(free, Temperature(beta));
      const double n = thermal_occupation(Temperature(beta), 1.0);
      CHECK_THAT(r.value, WithinRel(2.0 * (n + 0.5), 1e-13));
      CHECK(r.value >= 1.0);
      CHECK_FALSE(r.entangled);
    }
  }
  SECTION("strictly increasing in temperature") {
    double last = 0.0;
    for (double bwm : {5.0, 2.0, 1.0, 0.5, 0.2}) {
      const auto r =
          duan_thermal_resonant(p, Temperature(bwm / nm.omega_minus));
      CHECK(r.value > last);
      last = r.value;
    }
  }
  SECTION("off-resonant input rejected") {
    CHECK_THROWS_AS(
        duan_thermal_resonant(OscillatorPair(1.0, 2.0, 0.5), Temperature(1.0)),
        domain_error);
  }
}

TEST_CASE("witness from covariance") {
  SECTION("convention anchor: uncoupled vacuum gives exactly 1") {
    const OscillatorPair p(1.0, 2.0, 0.0);
    const auto r = duan_from_covariance(ground_covariance(p), p);
    CHECK(r.value == 1.0);
    CHECK(r.form_used == WitnessForm::covariance_form);
  }
  SECTION("matches the closed ground forms") {
    std::mt19937_64 rng(3302);
    std::uniform_real_distribution<double> ratio(0.05, 1.0);
    std::uniform_real_distribution<double> gr(0.0, 0.99);
    for (int i = 0; i < 200; ++i) {
      const double w = ratio(rng);
      const OscillatorPair p(w, 1.0, gr(rng) * std::sqrt(w));
      const double closed = duan_ground(p).value;
      const double from_cov =
          duan_from_covariance(ground_covariance(p), p).value;
      CHECK_THAT(from_cov, WithinRel(closed, 1e-10));
    }
  }
  SECTION("non-resonant thermal value (oracle-verified constant)") {
    const OscillatorPair p(1.0, 2.0, 0.5);
    const auto r =
        duan_from_covariance(thermal_covariance(p, Temperature(3.0)), p);
    CHECK_THAT(r.value, WithinRel(0.89917337659607799, 1e-12));
    CHECK(r.entangled);
  }
  SECTION("mismatched pair is rejected") {
    const OscillatorPair p(1.0, 2.0, 0.5);
    const OscillatorPair other(1.0, 1.9, 0.5);
    CHECK_THROWS_AS(duan_from_covariance(ground_covariance(p), other),
                    domain_error);
  }
}

TEST_CASE("far-detuned limit expression") {
  CHECK(offresonant_limit_value(OscillatorPair(1.0, 2.0, 0.0)) == 1.0);
  CHECK_THAT(offresonant_limit_value(OscillatorPair(1.0, 1.0, 0.5)),
             WithinRel(1.0606601717798212, 1e-13));

  // AM-GM bound holds everywhere, including where the limit form is not a
  // valid witness
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ratio(0.001, 1.0);
  std::uniform_real_distribution<double> gr(0.0, 0.999);
  for (int i = 0; i < 300; ++i) {
    const double w = ratio(rng);
    const OscillatorPair p(w, 1.0, gr(rng) * std::sqrt(w));
    CHECK(offresonant_limit_value(p) >= 1.0 - 1e-14);
  }

  // the exact witness can certify entanglement at 50x detuning when the
  // coupling tracks g_c; the limit form is only meaningful for fixed g
  const OscillatorPair far(0.02, 1.0, 0.7 * std::sqrt(0.02));
  CHECK_THAT(duan_ground(far).value, WithinRel(0.91718145833878839, 1e-12));
  CHECK(duan_ground(far).entangled);
  CHECK(offresonant_limit_value(far) >= 1.0);
}

TEST_CASE("resonance minimizes the ground witness at fixed g ratio") {
  for (double gr : {0.5, 0.8, 0.95}) {
    double best = 1e300;
    int best_index = -1;
    for (int i = 0; i < 50; ++i) {
      const double ratio = 0.05 + (1.0 - 0.05) * i / 49.0;
      const OscillatorPair p(ratio, 1.0, gr * std::sqrt(ratio));
      const double v = duan_ground(p).value;
      if (v < best) {
        best = v;
        best_index = i;
      }
    }
    CHECK(best_index == 49);  // omega/Omega = 1
  }
}

TEST_CASE("duan_ground rejects non-closed-form tags") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  CHECK_THROWS_AS(duan_ground(p, WitnessForm::covariance_form), domain_error);
  CHECK_THROWS_AS(duan_ground(p, WitnessForm::thermal_resonant), domain_error);
}
