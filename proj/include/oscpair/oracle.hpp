#pragma once

// Brute-force verifier: the Hamiltonian of the coupled pair is materialized
// in the truncated two-mode Fock basis |n_a, n_b> (n = 0 .. n_max-1, flat
// index n_a * n_max + n_b, row-major) and every witness / negativity
// quantity is evaluated from first principles, independently of the closed
// forms it checks.
//
// The coupling changes n_a and n_b by one simultaneously, so H conserves the
// parity of n_a + n_b; all dense work happens per parity sector. Ground
// states come from a deterministic Lanczos run (smallest eigenpair); thermal
// states from a full dense symmetric eigendecomposition (LAPACK dsyevd,
// pinned to one BLAS thread so results cannot depend on thread count).
//
// Every state is certified by re-running at twice the truncation and
// requiring each reported observable to move by less than the configured
// tolerance; failures raise convergence_error carrying both estimates.
// The dimension cap applies to the requested n_max; the internal doubled
// certification run is exempt (otherwise no capped configuration could ever
// certify itself). For the pure-state negativity the doubled-size estimate
// uses the Schmidt identity ||rho^{T_b}||_1 = (sum of singular values of the
// reshaped state)^2, which is exact for pure states; at the base size the
// partial-transpose eigendecomposition route is computed as well and the two
// must agree to 1e-10.

#include <Eigen/Dense>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "oscpair/core.hpp"
#include "oscpair/errors.hpp"
#include "oscpair/gaussian.hpp"

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace oscpair::oracle {

struct FockConfig {
  int n_max = 40;
  double convergence_tol = 1e-7;
  int dim_cap = 4096;  ///< bound on n_max^2 for user-requested solves
};

/// Truncation policy used by the verification grids: n_max = 40 up to
/// g/g_c = 0.8, 64 up to 0.9. Beyond that the squeezing grows too fast for
/// any affordable truncation and the oracle refuses; that region is covered
/// by the analytic path only.
inline int default_n_max(const OscillatorPair& pair) {
  const double r = pair.g_ratio();
  if (r <= 0.8) return 40;
  if (r <= 0.9) return 64;
  throw convergence_error(
      "oracle refuses g/g_c > 0.9: truncated-Fock convergence is not "
      "certifiable this close to the instability");
}

inline bool refuses(const OscillatorPair& pair) {
  return pair.g_ratio() > 0.9 + 1e-12;
}

struct Certification {
  int n_coarse = 0;
  int n_fine = 0;
  double max_shift = 0.0;
  double tol = 0.0;
};

class FockState;

namespace detail {

inline void validate(const FockConfig& cfg) {
  if (cfg.n_max < 2) throw domain_error("n_max must be >= 2");
  if (cfg.n_max > 46340 ||
      cfg.n_max * cfg.n_max > cfg.dim_cap) {
    throw domain_error("dimension cap exceeded: n_max^2 > dim_cap");
  }
  if (!(cfg.convergence_tol > 0.0)) {
    throw domain_error("convergence_tol must be > 0");
  }
}

inline void pin_blas_threads() {
  static const bool done = [] {
    if (openblas_set_num_threads) openblas_set_num_threads(1);
    return true;
  }();
  (void)done;
}

struct Triplet {
  int row, col;
  double value;
};

/// All nonzero entries of H (diagonal once, couplings in both triangles).
inline std::vector<Triplet> hamiltonian_triplets(const OscillatorPair& pair,
                                                 int n) {
  const double w = pair.omega(), W = pair.Omega(), gh = 0.5 * pair.g();
  std::vector<Triplet> t;
  t.reserve(static_cast<size_t>(n) * n * 5);
  auto idx = [n](int na, int nb) { return na * n + nb; };
  for (int na = 0; na < n; ++na) {
    for (int nb = 0; nb < n; ++nb) {
      const int i = idx(na, nb);
      t.push_back({i, i, w * na + W * nb});
      if (gh == 0.0) continue;
      if (na + 1 < n && nb + 1 < n) {  // a†b† and its transpose ab
        const double v = gh * std::sqrt(double(na + 1) * (nb + 1));
        t.push_back({idx(na + 1, nb + 1), i, v});
        t.push_back({i, idx(na + 1, nb + 1), v});
      }
      if (na + 1 < n && nb - 1 >= 0) {  // a†b and its transpose ab†
        const double v = gh * std::sqrt(double(na + 1) * nb);
        t.push_back({idx(na + 1, nb - 1), i, v});
        t.push_back({i, idx(na + 1, nb - 1), v});
      }
    }
  }
  return t;
}

inline void matvec(const std::vector<Triplet>& H, const Eigen::VectorXd& x,
                   Eigen::VectorXd& y) {
  y.setZero();
  for (const auto& e : H) y[e.row] += e.value * x[e.col];
}

/// Members of each parity sector of n_a + n_b and positions within them.
struct ParitySplit {
  int n = 0;
  std::vector<int> members[2];
  std::vector<int> pos;

  static ParitySplit build(int n) {
    ParitySplit ps;
    ps.n = n;
    ps.pos.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n * n; ++i) {
      const int p = ((i / n) + (i % n)) & 1;
      ps.pos[i] = static_cast<int>(ps.members[p].size());
      ps.members[p].push_back(i);
    }
    return ps;
  }
  int parity_of(int full) const { return ((full / n) + (full % n)) & 1; }
};

/// Dense matrix of one parity sector (H never couples the sectors).
inline Eigen::MatrixXd sector_matrix(const std::vector<Triplet>& H,
                                     const ParitySplit& ps, int parity) {
  const int m = static_cast<int>(ps.members[parity].size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : H) {
    if (ps.parity_of(e.row) != parity) continue;
    A(ps.pos[e.row], ps.pos[e.col]) = e.value;
  }
  return A;
}

/// dsyevd on a symmetric matrix; eigenvalues ascending, vectors optional
/// (overwrite A's columns).
inline Eigen::VectorXd sym_eig(Eigen::MatrixXd& A, bool want_vectors) {
  pin_blas_threads();
  const int m = static_cast<int>(A.rows());
  Eigen::VectorXd evals(m);
  if (m == 0) return evals;
  const int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', m,
                     A.data(), m, evals.data());
  if (info != 0) {
    throw convergence_error("dense symmetric eigensolver failed, info = " +
                            std::to_string(info));
  }
  return evals;
}

struct LanczosResult {
  double value = 0.0;
  Eigen::VectorXd vector;
};

/// Smallest eigenpair by Lanczos with full (two-pass) reorthogonalization.
/// Deterministic: fixed start vector e_start, fixed iteration schedule.
inline LanczosResult lanczos_lowest(const std::vector<Triplet>& H, int dim,
                                    int start) {
  const int max_iter = std::min(dim, 700);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(64);
  std::vector<double> alpha, beta;  // beta[k] couples steps k-1 and k
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v[start] = 1.0;
  basis.push_back(v);
  Eigen::VectorXd w(dim);
  double scale = 1.0;

  auto ritz = [&](bool vectors) {
    const int k = static_cast<int>(alpha.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd e(std::max(k - 1, 0));
    for (int i = 0; i + 1 < k; ++i) e[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(
        d, e, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    return es;
  };

  for (int k = 0; k < max_iter; ++k) {
    matvec(H, basis[k], w);
    const double a = basis[k].dot(w);
    alpha.push_back(a);
    w -= a * basis[k];
    if (k > 0) w -= beta[k - 1] * basis[k - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) w -= u.dot(w) * u;
    }
    const double b = w.norm();
    scale = std::max(scale, std::abs(a) + b);

    const bool breakdown = b < 1e-14 * scale;
    if (breakdown || (k + 1) % 10 == 0 || k + 1 == max_iter) {
      auto es = ritz(true);
      const int kk = static_cast<int>(alpha.size());
      const double resid = breakdown ? 0.0 : b * std::abs(es.eigenvectors()(kk - 1, 0));
      if (breakdown || resid < 1e-13 * scale) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
        for (int j = 0; j < kk; ++j) x += es.eigenvectors()(j, 0) * basis[j];
        x.normalize();
        return {es.eigenvalues()[0], x};
      }
    }
    if (breakdown) break;
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw convergence_error("Lanczos failed to converge to the ground state");
}

// ladder applications on flat vectors; components pushed past the truncation
// are dropped, matching the truncated operators used in H
inline Eigen::VectorXd apply_a(const Eigen::VectorXd& psi, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  for (int na = 0; na + 1 < n; ++na)
    for (int nb = 0; nb < n; ++nb)
      out[na * n + nb] = std::sqrt(double(na + 1)) * psi[(na + 1) * n + nb];
  return out;
}
inline Eigen::VectorXd apply_adag(const Eigen::VectorXd& psi, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  for (int na = 1; na < n; ++na)
    for (int nb = 0; nb < n; ++nb)
      out[na * n + nb] = std::sqrt(double(na)) * psi[(na - 1) * n + nb];
  return out;
}
inline Eigen::VectorXd apply_b(const Eigen::VectorXd& psi, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  for (int na = 0; na < n; ++na)
    for (int nb = 0; nb + 1 < n; ++nb)
      out[na * n + nb] = std::sqrt(double(nb + 1)) * psi[na * n + nb + 1];
  return out;
}
inline Eigen::VectorXd apply_bdag(const Eigen::VectorXd& psi, int n) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  for (int na = 0; na < n; ++na)
    for (int nb = 1; nb < n; ++nb)
      out[na * n + nb] = std::sqrt(double(nb)) * psi[na * n + nb - 1];
  return out;
}

/// First and second moments of the half-normalized quadratures, accumulated
/// over an ensemble of real vectors. p psi = -i q psi with q = (a - a†)/2,
/// so pp dots are real and the p means vanish identically.
struct Moments {
  double xx_a = 0, xx_b = 0, xx_ab = 0;
  double pp_a = 0, pp_b = 0, pp_ab = 0;
  double x_a = 0, x_b = 0;

  void accumulate(const Eigen::VectorXd& psi, int n, double weight) {
    const Eigen::VectorXd xa = 0.5 * (apply_a(psi, n) + apply_adag(psi, n));
    const Eigen::VectorXd xb = 0.5 * (apply_b(psi, n) + apply_bdag(psi, n));
    const Eigen::VectorXd qa = 0.5 * (apply_a(psi, n) - apply_adag(psi, n));
    const Eigen::VectorXd qb = 0.5 * (apply_b(psi, n) - apply_bdag(psi, n));
    xx_a += weight * xa.squaredNorm();
    xx_b += weight * xb.squaredNorm();
    xx_ab += weight * xa.dot(xb);
    pp_a += weight * qa.squaredNorm();
    pp_b += weight * qb.squaredNorm();
    pp_ab += weight * qa.dot(qb);
    x_a += weight * psi.dot(xa);
    x_b += weight * psi.dot(xb);
  }

  double duan() const {
    const double mean_u = x_a + x_b;
    const double du = xx_a + xx_b + 2.0 * xx_ab - mean_u * mean_u;
    const double dv = pp_a + pp_b - 2.0 * pp_ab;
    return du + dv;
  }
};

}  // namespace detail

/// Pure or thermal state on the truncated basis, together with its
/// convergence certificate. Thermal states are kept in factored form:
/// retained eigenvectors (columns) and Boltzmann weights.
class FockState {
 public:
  enum class Kind { pure, thermal };

  Kind kind;
  OscillatorPair pair;
  double beta;  ///< +inf for pure
  int n_max;
  double ground_energy = 0.0;
  Eigen::VectorXd psi;            ///< pure amplitudes (unit norm)
  Eigen::MatrixXd modes;          ///< thermal: dim x K retained eigenvectors
  Eigen::VectorXd weights;        ///< thermal: Boltzmann weights (trace ~ 1)
  std::vector<int> mode_parities; ///< thermal: sector of each eigenvector
  Certification cert;

  FockState(Kind k, const OscillatorPair& p, double b, int n)
      : kind(k), pair(p), beta(b), n_max(n) {}
};

/// Dense Hamiltonian in the documented basis ordering (index = n_a * n_max
/// + n_b); subject to the dimension cap.
inline Eigen::MatrixXd build_hamiltonian(const OscillatorPair& pair,
                                         const FockConfig& cfg) {
  detail::validate(cfg);
  const int n = cfg.n_max;
  const int dim = n * n;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& e : detail::hamiltonian_triplets(pair, n)) {
    H(e.row, e.col) = e.value;
  }
  return H;
}

/// Plain-text sparse dump, one `row col value` triplet per line (17
/// significant digits), sorted by row then column, preceded by a header
/// comment with the dimensions. For external cross-checks.
inline void dump_hamiltonian(const OscillatorPair& pair, const FockConfig& cfg,
                             std::ostream& os) {
  detail::validate(cfg);
  auto t = detail::hamiltonian_triplets(pair, cfg.n_max);
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  char buf[64];
  os << "# two-mode Fock Hamiltonian, n_max = " << cfg.n_max
     << ", dim = " << cfg.n_max * cfg.n_max
     << ", index = n_a * n_max + n_b\n";
  for (const auto& e : t) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << e.row << ' ' << e.col << ' ' << buf << '\n';
  }
}

/// Lowest `count` eigenvalues of the truncated Hamiltonian (raw, at the
/// requested n_max; used for spectrum-ladder checks).
inline std::vector<double> low_spectrum(const OscillatorPair& pair,
                                        const FockConfig& cfg, int count) {
  detail::validate(cfg);
  const int n = cfg.n_max;
  const auto trip = detail::hamiltonian_triplets(pair, n);
  const auto ps = detail::ParitySplit::build(n);
  std::vector<double> all;
  all.reserve(static_cast<size_t>(n) * n);
  for (int p = 0; p < 2; ++p) {
    Eigen::MatrixXd A = detail::sector_matrix(trip, ps, p);
    const Eigen::VectorXd ev = detail::sym_eig(A, false);
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min<size_t>(all.size(), static_cast<size_t>(count)));
  return all;
}

namespace detail {

/// log2 || rho^{T_b} ||_1 for a pure state by dense partial transpose and
/// per-parity eigendecomposition.
inline double pure_negativity_pt(const Eigen::VectorXd& psi, int n) {
  const auto ps = ParitySplit::build(n);
  double sum_abs = 0.0;
  for (int p = 0; p < 2; ++p) {
    const auto& mem = ps.members[p];
    const int m = static_cast<int>(mem.size());
    Eigen::MatrixXd B(m, m);
    for (int r = 0; r < m; ++r) {
      const int i = mem[r] / n, j = mem[r] % n;
      for (int c = 0; c < m; ++c) {
        const int k = mem[c] / n, l = mem[c] % n;
        B(r, c) = psi[i * n + l] * psi[k * n + j];
      }
    }
    const Eigen::VectorXd ev = sym_eig(B, false);
    sum_abs += ev.cwiseAbs().sum();
  }
  return std::log2(sum_abs);
}

/// Same trace norm through the Schmidt identity ||rho^{T_b}||_1 =
/// (sum of singular values of the reshaped amplitude matrix)^2.
inline double pure_negativity_schmidt(const Eigen::VectorXd& psi, int n) {
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = psi[i * n + j];
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const double s = svd.singularValues().sum();
  return 2.0 * std::log2(s);
}

/// Thermal eigendecomposition at truncation n: retained eigenpairs with
/// relative Boltzmann weight above 1e-18, deterministic ordering.
struct ThermalData {
  double ground_energy = 0.0;
  Eigen::MatrixXd modes;     // dim x K, full-index rows
  Eigen::VectorXd weights;   // K
  std::vector<int> parities; // K, sector of each retained eigenvector
};

inline ThermalData thermal_decomposition(const OscillatorPair& pair,
                                         double beta, int n) {
  const int dim = n * n;
  const auto trip = hamiltonian_triplets(pair, n);
  const auto ps = ParitySplit::build(n);

  struct Level {
    double energy;
    int parity;
    int col;
  };
  std::vector<Level> levels;
  levels.reserve(dim);
  Eigen::MatrixXd vec[2];
  Eigen::VectorXd val[2];
  for (int p = 0; p < 2; ++p) {
    vec[p] = sector_matrix(trip, ps, p);
    val[p] = sym_eig(vec[p], true);
    for (int c = 0; c < val[p].size(); ++c)
      levels.push_back({val[p][c], p, c});
  }
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.parity != b.parity) return a.parity < b.parity;
    return a.col < b.col;
  });

  const double e0 = levels.front().energy;
  double z = 0.0;
  std::vector<double> rel(levels.size());
  for (size_t i = 0; i < levels.size(); ++i) {
    rel[i] = std::isinf(beta)
                 ? (i == 0 ? 1.0 : 0.0)
                 : std::exp(-beta * (levels[i].energy - e0));
    z += rel[i];
  }
  int keep = 0;
  while (keep < static_cast<int>(levels.size()) && rel[keep] / z > 1e-18)
    ++keep;

  ThermalData out;
  out.ground_energy = e0;
  out.modes = Eigen::MatrixXd::Zero(dim, keep);
  out.weights.resize(keep);
  out.parities.resize(keep);
  for (int k = 0; k < keep; ++k) {
    const Level& lv = levels[k];
    out.weights[k] = rel[k] / z;
    out.parities[k] = lv.parity;
    const auto& mem = ps.members[lv.parity];
    for (int r = 0; r < static_cast<int>(mem.size()); ++r) {
      out.modes(mem[r], k) = vec[lv.parity](r, lv.col);
    }
  }
  return out;
}

/// log2 || rho^{T_b} ||_1 for a factored thermal state. rho is assembled in
/// per-parity dense blocks (eigenvectors have definite parity, so each block
/// draws only on its own columns); the partial transpose maps same-parity
/// index pairs onto same-parity pairs, so its spectrum splits the same way.
inline double thermal_negativity_pt(const ThermalData& td, int n) {
  const auto ps = ParitySplit::build(n);
  Eigen::MatrixXd rho[2];
  for (int p = 0; p < 2; ++p) {
    const auto& mem = ps.members[p];
    const int m = static_cast<int>(mem.size());
    int kp = 0;
    for (int par : td.parities) kp += (par == p);
    Eigen::MatrixXd sub(m, kp);
    Eigen::VectorXd wsub(kp);
    int c = 0;
    for (int k = 0; k < td.modes.cols(); ++k) {
      if (td.parities[k] != p) continue;
      for (int r = 0; r < m; ++r) sub(r, c) = td.modes(mem[r], k);
      wsub[c++] = td.weights[k];
    }
    rho[p] = sub * wsub.asDiagonal() * sub.transpose();
  }

  double sum_abs = 0.0;
  for (int p = 0; p < 2; ++p) {
    const auto& mem = ps.members[p];
    const int m = static_cast<int>(mem.size());
    Eigen::MatrixXd B(m, m);
    for (int r = 0; r < m; ++r) {
      const int i = mem[r] / n, j = mem[r] % n;
      for (int c = 0; c < m; ++c) {
        const int k = mem[c] / n, l = mem[c] % n;
        const int fa = i * n + l, fb = k * n + j;
        B(r, c) = rho[ps.parity_of(fa)](ps.pos[fa], ps.pos[fb]);
      }
    }
    const Eigen::VectorXd ev = sym_eig(B, false);
    sum_abs += ev.cwiseAbs().sum();
  }
  return std::log2(sum_abs);
}

struct Observables {
  double energy = 0.0;
  double duan = 0.0;
  double log_neg = 0.0;
  Moments moments;
};

}  // namespace detail

/// Second moments of the state translated into the dimensional-quadrature
/// covariance blocks (for cross-checks against the Gaussian layer).
inline CovarianceMatrix covariance(const FockState& state) {
  const int n = state.n_max;
  detail::Moments m;
  if (state.kind == FockState::Kind::pure) {
    m.accumulate(state.psi, n, 1.0);
  } else {
    for (int k = 0; k < state.modes.cols(); ++k) {
      m.accumulate(state.modes.col(k), n, state.weights[k]);
    }
  }
  const double w = state.pair.omega(), W = state.pair.Omega();
  CovarianceMatrix cov;
  cov.X = {2.0 * (m.xx_a - m.x_a * m.x_a) / w,
           2.0 * (m.xx_ab - m.x_a * m.x_b) / std::sqrt(w * W),
           2.0 * (m.xx_b - m.x_b * m.x_b) / W};
  cov.P = {2.0 * w * m.pp_a, 2.0 * std::sqrt(w * W) * m.pp_ab,
           2.0 * W * m.pp_b};
  cov.omega = w;
  cov.Omega = W;
  return cov;
}

/// Duan-Simon value from exact operator expectation values in the truncated
/// basis.
inline double duan(const FockState& state) {
  const int n = state.n_max;
  detail::Moments m;
  if (state.kind == FockState::Kind::pure) {
    m.accumulate(state.psi, n, 1.0);
  } else {
    for (int k = 0; k < state.modes.cols(); ++k) {
      m.accumulate(state.modes.col(k), n, state.weights[k]);
    }
  }
  return m.duan();
}

/// E_N = log2 || rho^{T_b} ||_1 by partial transposition in the Fock basis.
inline double log_negativity(const FockState& state) {
  if (state.kind == FockState::Kind::pure) {
    return detail::pure_negativity_pt(state.psi, state.n_max);
  }
  detail::ThermalData td;
  td.ground_energy = state.ground_energy;
  td.modes = state.modes;
  td.weights = state.weights;
  td.parities = state.mode_parities;
  return detail::thermal_negativity_pt(td, state.n_max);
}

/// Occupation <m†m> of a dressed mode (0 = c, 1 = d) built from the
/// Bogoliubov coefficients; ~0 on the ground state, the Bose occupation on
/// a Gibbs state.
inline double mode_occupation(const FockState& state,
                              const SymplecticTransform& t, int mode) {
  const int n = state.n_max;
  const auto& row = t.coeffs[mode == 0 ? 0 : 2];
  auto apply_mode = [&](const Eigen::VectorXd& psi) {
    return (row[0] * detail::apply_a(psi, n) +
            row[1] * detail::apply_adag(psi, n) +
            row[2] * detail::apply_b(psi, n) +
            row[3] * detail::apply_bdag(psi, n))
        .eval();
  };
  if (state.kind == FockState::Kind::pure) {
    return apply_mode(state.psi).squaredNorm();
  }
  double acc = 0.0;
  for (int k = 0; k < state.modes.cols(); ++k) {
    acc += state.weights[k] * apply_mode(state.modes.col(k)).squaredNorm();
  }
  return acc;
}

namespace detail {

inline Observables pure_observables(const Eigen::VectorXd& psi, double energy,
                                    int n, bool pt_route) {
  Observables o;
  o.energy = energy;
  o.moments.accumulate(psi, n, 1.0);
  o.duan = o.moments.duan();
  o.log_neg =
      pt_route ? pure_negativity_pt(psi, n) : pure_negativity_schmidt(psi, n);
  return o;
}

inline void check_shift(const char* what, double coarse, double fine,
                        double tol, Certification& cert) {
  const double shift = std::abs(coarse - fine);
  cert.max_shift = std::max(cert.max_shift, shift);
  if (shift > tol) {
    throw convergence_error(std::string("truncation not converged: ") + what,
                            coarse, fine);
  }
}

inline void certify(const Observables& coarse, const Observables& fine,
                    double tol, Certification& cert) {
  check_shift("energy", coarse.energy, fine.energy, tol, cert);
  check_shift("duan", coarse.duan, fine.duan, tol, cert);
  check_shift("log_negativity", coarse.log_neg, fine.log_neg, tol, cert);
  const auto& a = coarse.moments;
  const auto& b = fine.moments;
  check_shift("xx_a", a.xx_a, b.xx_a, tol, cert);
  check_shift("xx_b", a.xx_b, b.xx_b, tol, cert);
  check_shift("xx_ab", a.xx_ab, b.xx_ab, tol, cert);
  check_shift("pp_a", a.pp_a, b.pp_a, tol, cert);
  check_shift("pp_b", a.pp_b, b.pp_b, tol, cert);
  check_shift("pp_ab", a.pp_ab, b.pp_ab, tol, cert);
}

}  // namespace detail

/// Ground state: lowest eigenpair at n_max plus the doubled-truncation
/// certification described at the top of this header.
inline FockState ground_state(const OscillatorPair& pair,
                              const FockConfig& cfg) {
  detail::validate(cfg);
  if (refuses(pair)) {
    throw convergence_error(
        "oracle refuses g/g_c > 0.9 (analytic path only in that region)");
  }
  const int n = cfg.n_max;

  auto solve = [&pair](int nn) {
    const auto trip = detail::hamiltonian_triplets(pair, nn);
    return detail::lanczos_lowest(trip, nn * nn, 0);
  };
  const auto coarse = solve(n);
  const auto fine = solve(2 * n);

  const auto obs_c = detail::pure_observables(coarse.vector, coarse.value, n, true);
  const auto obs_schmidt_c =
      detail::pure_observables(coarse.vector, coarse.value, n, false);
  const auto obs_f =
      detail::pure_observables(fine.vector, fine.value, 2 * n, false);

  if (std::abs(obs_c.log_neg - obs_schmidt_c.log_neg) > 1e-10) {
    throw convergence_error(
        "partial-transpose and Schmidt negativity routes disagree",
        obs_c.log_neg, obs_schmidt_c.log_neg);
  }

  FockState st(FockState::Kind::pure, pair,
               std::numeric_limits<double>::infinity(), n);
  st.cert = {n, 2 * n, 0.0, cfg.convergence_tol};
  detail::certify(obs_c, obs_f, cfg.convergence_tol, st.cert);
  st.ground_energy = coarse.value;
  st.psi = coarse.vector;
  return st;
}

/// Gibbs state from the full dense eigendecomposition, certified by the same
/// truncation doubling (including the partial-transpose negativity, which has
/// no pure-state shortcut here).
inline FockState thermal_state(const OscillatorPair& pair,
                               const Temperature& temp,
                               const FockConfig& cfg) {
  detail::validate(cfg);
  if (refuses(pair)) {
    throw convergence_error(
        "oracle refuses g/g_c > 0.9 (analytic path only in that region)");
  }
  const int n = cfg.n_max;
  const double beta = temp.beta();

  auto observables = [&pair, beta](int nn, detail::ThermalData& td) {
    td = detail::thermal_decomposition(pair, beta, nn);
    detail::Observables o;
    o.energy = td.ground_energy;
    for (int k = 0; k < td.modes.cols(); ++k) {
      o.moments.accumulate(td.modes.col(k), nn, td.weights[k]);
    }
    o.duan = o.moments.duan();
    o.log_neg = detail::thermal_negativity_pt(td, nn);
    return o;
  };

  detail::ThermalData td_c, td_f;
  const auto obs_c = observables(n, td_c);
  const auto obs_f = observables(2 * n, td_f);

  FockState st(FockState::Kind::thermal, pair, beta, n);
  st.cert = {n, 2 * n, 0.0, cfg.convergence_tol};
  detail::certify(obs_c, obs_f, cfg.convergence_tol, st.cert);
  st.ground_energy = td_c.ground_energy;
  st.modes = std::move(td_c.modes);
  st.weights = std::move(td_c.weights);
  st.mode_parities = std::move(td_c.parities);
  return st;
}

}  // namespace oscpair::oracle
