#pragma once

#include <stdexcept>
#include <string>

namespace oscpair {

/// Invalid physical input: non-finite values, instability region, broken
/// orderings. CLI maps this family to exit code 1.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A set of frequencies that cannot originate from the bilinear Hamiltonian
/// (negative coupling radicand, dressed/bare ordering violated).
class spectrum_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Truncated-Fock computation could not be certified: either the truncation
/// doubling moved an observable by more than the configured tolerance, or the
/// requested parameters fall outside the oracle's validated envelope.
/// Carries both truncation estimates when they exist. CLI exit code 3.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what)
      : std::runtime_error(what) {}
  convergence_error(const std::string& what, double coarse, double fine)
      : std::runtime_error(what + " [estimate(n)=" + std::to_string(coarse) +
                           ", estimate(2n)=" + std::to_string(fine) + "]"),
        estimate_coarse(coarse),
        estimate_fine(fine),
        has_estimates(true) {}

  double estimate_coarse = 0.0;
  double estimate_fine = 0.0;
  bool has_estimates = false;
};

}  // namespace oscpair
