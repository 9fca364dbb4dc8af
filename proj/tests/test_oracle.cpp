#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "oscpair/oracle.hpp"
#include "oscpair/witness.hpp"

using namespace oscpair;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const oracle::FockConfig kSmall{16, 1e-6, 4096};
const oracle::FockConfig kMedium{20, 1e-6, 4096};
}  // namespace

TEST_CASE("hamiltonian matrix structure") {
  const OscillatorPair p(1.0, 2.0, 0.5);
  const oracle::FockConfig cfg{4, 1e-6, 4096};
  const auto H = oracle::build_hamiltonian(p, cfg);
  REQUIRE(H.rows() == 16);
  CHECK(H.isApprox(H.transpose()));
  // diagonal: omega n_a + Omega n_b
  CHECK(H(0, 0) == 0.0);
  CHECK(H(4 * 1 + 2, 4 * 1 + 2) == 1.0 + 4.0);
  // coupling <1,1| (g/2) a†b† |0,0>
  CHECK(H(4 + 1, 0) == 0.25);
  // <0,1| (g/2) a b† |1,0>
  CHECK(H(1, 4) == 0.25);

  const auto Hfree =
      oracle::build_hamiltonian(OscillatorPair(1.0, 2.0, 0.0), cfg);
  CHECK(Hfree.diagonal().asDiagonal().toDenseMatrix() == Hfree);
}

TEST_CASE("dimension cap and config validation") {
  const OscillatorPair p(1.0, 1.0, 0.1);
  CHECK_THROWS_AS(oracle::build_hamiltonian(p, {80, 1e-6, 4096}),
                  domain_error);
  CHECK_NOTHROW(oracle::build_hamiltonian(p, {20, 1e-6, 4096}));
  CHECK_THROWS_AS(oracle::build_hamiltonian(p, {1, 1e-6, 4096}),
                  domain_error);
  CHECK_THROWS_AS(oracle::build_hamiltonian(p, {20, -1.0, 4096}),
                  domain_error);
}

TEST_CASE("triplet dump round-trips the matrix") {
  const OscillatorPair p(1.0, 2.0, 0.5);
  const oracle::FockConfig cfg{3, 1e-6, 4096};
  std::ostringstream os;
  oracle::dump_hamiltonian(p, cfg, os);
  const std::string text = os.str();
  CHECK(text.find("n_max = 3") != std::string::npos);

  const auto H = oracle::build_hamiltonian(p, cfg);
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(9, 9);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int r, c;
    double v;
    row >> r >> c >> v;
    R(r, c) = v;
  }
  CHECK((H - R).cwiseAbs().maxCoeff() == 0.0);

  std::ostringstream os2;
  oracle::dump_hamiltonian(p, cfg, os2);
  CHECK(os.str() == os2.str());
}

TEST_CASE("ground state: uncoupled pair is the bare vacuum") {
  const auto st =
      oracle::ground_state(OscillatorPair(1.0, 2.0, 0.0), kSmall);
  CHECK(st.ground_energy == 0.0);
  CHECK(std::abs(st.psi[0]) == 1.0);
  CHECK(st.psi.tail(st.psi.size() - 1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(oracle::duan(st) == 1.0);
  CHECK_THAT(oracle::log_negativity(st), WithinAbs(0.0, 1e-12));
}

TEST_CASE("ground state: resonant benchmark point") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  const auto st = oracle::ground_state(p, kMedium);
  CHECK_THAT(st.ground_energy, WithinAbs(-0.034074173710931799, 1e-9));
  CHECK_THAT(oracle::duan(st), WithinAbs(0.76180168105713675, 1e-6));
  CHECK_THAT(oracle::log_negativity(st),
             WithinAbs(0.39624062518028885, 1e-4));
  CHECK(st.cert.max_shift < kMedium.convergence_tol);
  CHECK(st.cert.n_fine == 2 * kMedium.n_max);
}

TEST_CASE("ground state covariance matches the Gaussian layer") {
  const OscillatorPair p(1.0, 2.0, 0.5);
  const auto st = oracle::ground_state(p, kMedium);
  const auto num = oracle::covariance(st);
  const auto closed = ground_covariance(p);
  CHECK_THAT(num.X.m00, WithinAbs(closed.X.m00, 1e-6));
  CHECK_THAT(num.X.m01, WithinAbs(closed.X.m01, 1e-6));
  CHECK_THAT(num.X.m11, WithinAbs(closed.X.m11, 1e-6));
  CHECK_THAT(num.P.m00, WithinAbs(closed.P.m00, 1e-6));
  CHECK_THAT(num.P.m01, WithinAbs(closed.P.m01, 1e-6));
  CHECK_THAT(num.P.m11, WithinAbs(closed.P.m11, 1e-6));
  // and the covariance-route witness closes the loop
  CHECK_THAT(duan_from_covariance(num, p).value,
             WithinAbs(oracle::duan(st), 1e-10));
}

TEST_CASE("ground state is the dressed vacuum") {
  for (auto [w, W, g] : {std::tuple{1.0, 1.0, 0.5}, {1.0, 2.0, 0.5}}) {
    const OscillatorPair p(w, W, g);
    const auto st = oracle::ground_state(p, kMedium);
    const auto t = bogoliubov(p);
    CHECK(oracle::mode_occupation(st, t, 0) < 1e-8);
    CHECK(oracle::mode_occupation(st, t, 1) < 1e-8);
  }
}

TEST_CASE("low spectrum matches the dressed ladder") {
  const OscillatorPair p(1.0, 2.0, 0.5);
  const auto nm = normal_modes(p);
  const auto spec = oracle::low_spectrum(p, {24, 1e-6, 4096}, 6);
  REQUIRE(spec.size() == 6);
  // ladder: 0, w-, 2w-, w+, 3w-, w- + w+
  const double wm = nm.omega_minus, wp = nm.omega_plus;
  const double expected[6] = {0.0, wm, 2 * wm, wp, 3 * wm, wm + wp};
  for (int k = 1; k < 6; ++k) {
    CHECK_THAT(spec[k] - spec[0], WithinRel(expected[k], 1e-6));
  }
}

TEST_CASE("thermal state: zero-temperature limit matches the ground state") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  const auto nm = normal_modes(p);
  const auto cold =
      oracle::thermal_state(p, Temperature(50.0 / nm.omega_minus), kSmall);
  const auto gs = oracle::ground_state(p, kSmall);
  CHECK_THAT(oracle::duan(cold), WithinAbs(oracle::duan(gs), 1e-10));
  CHECK_THAT(oracle::log_negativity(cold),
             WithinAbs(oracle::log_negativity(gs), 1e-9));
}

TEST_CASE("thermal state: resonant benchmark point") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  const auto nm = normal_modes(p);
  const Temperature temp(2.0 / nm.omega_minus);
  const auto st = oracle::thermal_state(p, temp, kMedium);
  CHECK_THAT(oracle::duan(st), WithinAbs(0.89885943907171362, 1e-5));
  CHECK_THAT(oracle::log_negativity(st),
             WithinAbs(0.15461506435475572, 1e-4));
  // dressed occupation equals the Bose factor
  const auto t = bogoliubov(p);
  CHECK_THAT(oracle::mode_occupation(st, t, 0),
             WithinAbs(0.15651764274966565, 1e-6));
  CHECK_THAT(oracle::mode_occupation(st, t, 1),
             WithinAbs(0.032312531451114707, 1e-6));
  CHECK(std::abs(st.weights.sum() - 1.0) < 1e-12);
}

TEST_CASE("thermal state: non-resonant point against the covariance route") {
  const OscillatorPair p(1.0, 2.0, 0.5);
  const Temperature temp(3.0);
  const auto st = oracle::thermal_state(p, temp, kMedium);
  CHECK_THAT(oracle::duan(st), WithinAbs(0.89917337659607799, 1e-5));
  const auto closed = log_negativity(thermal_covariance(p, temp));
  CHECK_THAT(oracle::log_negativity(st),
             WithinAbs(closed.log_negativity, 1e-4));
}

TEST_CASE("convergence failures are loud") {
  const OscillatorPair p(1.0, 1.0, 0.5);
  // absurd tolerance: the truncation shift cannot beat it
  const oracle::FockConfig strict{8, 1e-18, 4096};
  bool threw = false;
  try {
    oracle::ground_state(p, strict);
  } catch (const convergence_error& e) {
    threw = true;
    CHECK(e.has_estimates);
  }
  CHECK(threw);
}

TEST_CASE("oracle refuses past its validated envelope") {
  const OscillatorPair p(1.0, 1.0, 0.95);
  CHECK_THROWS_AS(oracle::ground_state(p, kSmall), convergence_error);
  CHECK_THROWS_AS(oracle::thermal_state(p, Temperature(1.0), kSmall),
                  convergence_error);
  CHECK(oracle::refuses(p));
  CHECK_FALSE(oracle::refuses(OscillatorPair(1.0, 1.0, 0.9)));

  CHECK(oracle::default_n_max(OscillatorPair(1.0, 1.0, 0.5)) == 40);
  CHECK(oracle::default_n_max(OscillatorPair(1.0, 1.0, 0.85)) == 64);
  CHECK_THROWS_AS(oracle::default_n_max(p), convergence_error);
}
