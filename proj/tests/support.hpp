#pragma once

#include <algorithm>
#include <random>

#include "lfwp/filter_bank.hpp"
#include "lfwp/transform.hpp"

namespace testing_support {

inline lfwp::Block random_block(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  lfwp::Block out(n);
  for (auto& v : out) {
    const double re = u(rng);
    v = {re, u(rng)};
  }
  return out;
}

inline double max_diff(const lfwp::Block& a, const lfwp::Block& b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

struct FieldCase {
  unsigned p;
  unsigned c;
};

inline const std::vector<FieldCase>& small_fields() {
  static const std::vector<FieldCase> fields{{2, 1}, {3, 1}, {2, 2}};
  return fields;
}

inline lfwp::FilterBank perturbed(const lfwp::FilterBank& bank, unsigned s, std::size_t k,
                                  lfwp::Complex delta) {
  auto rows = bank.analysis();
  rows[s][k] += delta;
  return lfwp::FilterBank(bank.table(), rows, bank.dual());
}

}  // namespace testing_support
