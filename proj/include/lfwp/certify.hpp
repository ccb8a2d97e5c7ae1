#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfwp/filter_bank.hpp"
#include "lfwp/transform.hpp"

namespace lfwp {

struct CertifyOptions {
  unsigned trials = 5;
  unsigned max_level = 4;
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

struct PropertyResult {
  std::string name;
  double deviation = 0.0;
  bool applicable = true;  // false: property does not apply to this bank
  bool passed = true;
  std::string note;
};

struct CertifyReport {
  std::vector<PropertyResult> properties;

  bool passed() const noexcept {
    for (const auto& p : properties) {
      if (p.applicable && !p.passed) return false;
    }
    return true;
  }
};

/// Runs, for one bank: the two-domain bank validator, the packet
/// biorthogonality matrix over n, m < q^2 and k < q, node-split round-trips,
/// perfect-reconstruction trials over every feasible (J, M, r) with J up to
/// max_level, the character-transform equivalence (canonical banks, q^J <= 256)
/// and weighted Parseval (dual == primal banks).
CertifyReport certify(const FilterBank& bank, const CertifyOptions& options);

/// Σ_j χ_n(n, x_j) f(x_j) for every n < q^J, f given in coset order
/// (f(x_j) = coeffs[reverse_digits_q(j, J)]). Direct O(q^{2J}) evaluation.
Block character_transform(const Signal& signal);

}  // namespace lfwp
