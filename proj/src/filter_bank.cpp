#include "lfwp/filter_bank.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lfwp/error.hpp"

namespace lfwp {

namespace {

constexpr int kMaxDraws = 1000;

using EigenMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

void check_rows(const std::vector<Taps>& rows, unsigned q, const char* which) {
  if (rows.size() != q) {
    throw Error(ErrorKind::RowCount, std::string(which) + " family has " +
                                         std::to_string(rows.size()) +
                                         " rows, expected q = " + std::to_string(q));
  }
  for (const Taps& row : rows) {
    if (row.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(which) + " family has an empty tap row");
    }
  }
}

}  // namespace

FilterBank::FilterBank(FieldTablePtr table, std::vector<Taps> analysis,
                       std::vector<Taps> dual)
    : table_(std::move(table)), analysis_(std::move(analysis)), dual_(std::move(dual)) {
  if (!table_) throw Error(ErrorKind::InvalidArgument, "null field table");
  check_rows(analysis_, table_->q(), "analysis");
  check_rows(dual_, table_->q(), "dual");
}

std::size_t FilterBank::support(Side side) const noexcept {
  std::size_t out = 0;
  for (const Taps& row : rows(side)) out = std::max(out, row.size());
  return out;
}

std::size_t FilterBank::support() const noexcept {
  return std::max(support(Side::Primal), support(Side::Dual));
}

FilterBank FilterBank::swapped() const { return FilterBank(table_, dual_, analysis_); }

Complex mask(const FilterBank& bank, unsigned s, const FieldElement& xi, Side side) {
  if (s >= bank.q()) {
    throw Error(ErrorKind::InvalidArgument, "band " + std::to_string(s) + " >= q");
  }
  const Taps& row = bank.rows(side)[s];
  Complex acc{};
  for (Index k = 0; k < row.size(); ++k) {
    if (row[k] == Complex{}) continue;
    acc += row[k] * std::conj(chi_n(k, xi));
  }
  return acc / std::sqrt(static_cast<double>(bank.q()));
}

namespace {

// 𝔭ξ + 𝔭u(ℓ) for ℓ = 0..q-1.
std::vector<FieldElement> modulated_points(const FilterBank& bank,
                                           const FieldElement& xi) {
  const auto& table = bank.table();
  const FieldElement prime = FieldElement::prime_power(table, 1);
  const FieldElement shifted = lf_mul(prime, xi);
  std::vector<FieldElement> out;
  out.reserve(bank.q());
  for (unsigned l = 0; l < bank.q(); ++l) {
    out.push_back(lf_add(shifted, lf_mul(prime, u_of(table, l))));
  }
  return out;
}

}  // namespace

CMatrix modulation_matrix(const FilterBank& bank, const FieldElement& xi, Side side) {
  const unsigned q = bank.q();
  const auto points = modulated_points(bank, xi);
  CMatrix m(q, q);
  for (unsigned s = 0; s < q; ++s) {
    for (unsigned l = 0; l < q; ++l) m(s, l) = mask(bank, s, points[l], side);
  }
  return m;
}

unsigned mask_resolution(const FilterBank& bank) {
  const std::size_t support = bank.support();
  unsigned resolution = 1;
  Index span = bank.q();
  while (span < support) {
    span *= bank.q();
    ++resolution;
  }
  return resolution;
}

ValidationReport validate(const FilterBank& bank, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be > 0");
  const auto& table = bank.table();
  const FieldParams& f = table->params();
  const unsigned q = bank.q();
  const unsigned resolution = mask_resolution(bank);
  const Index points = pow_q(f, resolution - 1);

  ValidationReport report;
  report.details.resize(static_cast<std::size_t>(q) * q);
  for (unsigned r = 0; r < q; ++r) {
    for (unsigned s = 0; s < q; ++s) {
      report.details[r * q + s].r = r;
      report.details[r * q + s].s = s;
    }
  }

  // Frequency domain.
  std::vector<Complex> primal(q * q), dual(q * q);
  for (Index j = 0; j < points; ++j) {
    const auto etas = modulated_points(bank, sample_point(table, j, resolution - 1));
    for (unsigned l = 0; l < q; ++l) {
      for (unsigned s = 0; s < q; ++s) {
        primal[l * q + s] = mask(bank, s, etas[l], Side::Primal);
        dual[l * q + s] = mask(bank, s, etas[l], Side::Dual);
      }
    }
    for (unsigned r = 0; r < q; ++r) {
      for (unsigned s = 0; s < q; ++s) {
        Complex acc{};
        for (unsigned l = 0; l < q; ++l) {
          acc += primal[l * q + r] * std::conj(dual[l * q + s]);
        }
        const double dev = std::abs(acc - Complex(r == s ? 1.0 : 0.0));
        auto& d = report.details[r * q + s];
        d.freq = std::max(d.freq, dev);
      }
    }
  }

  // Time domain.
  const std::size_t la = bank.support(Side::Primal);
  for (Index n = 0; n < points; ++n) {
    const Index shift = scale_q(f, n, 1);
    for (unsigned r = 0; r < q; ++r) {
      for (unsigned s = 0; s < q; ++s) {
        Complex acc{};
        for (Index k = 0; k < la; ++k) {
          acc += bank.tap(Side::Primal, r, k) *
                 std::conj(bank.tap(Side::Dual, s, gsub(f, k, shift)));
        }
        const double expected = (r == s && n == 0) ? 1.0 : 0.0;
        auto& d = report.details[r * q + s];
        d.time = std::max(d.time, std::abs(acc - Complex(expected)));
      }
    }
  }

  for (const auto& d : report.details) {
    report.max_freq_deviation = std::max(report.max_freq_deviation, d.freq);
    report.max_time_deviation = std::max(report.max_time_deviation, d.time);
  }
  report.passed = report.max_freq_deviation <= tol && report.max_time_deviation <= tol;

  const FieldElement zero(table);
  report.lowpass_normalized =
      std::abs(mask(bank, 0, zero, Side::Primal) - 1.0) <= tol &&
      std::abs(mask(bank, 0, zero, Side::Dual) - 1.0) <= tol;
  return report;
}

double modulation_unitarity_deviation(const FilterBank& bank, Side side) {
  const auto& table = bank.table();
  const unsigned q = bank.q();
  const unsigned resolution = mask_resolution(bank);
  const Index points = pow_q(table->params(), resolution - 1);
  double worst = 0.0;
  for (Index j = 0; j < points; ++j) {
    const CMatrix m = modulation_matrix(bank, sample_point(table, j, resolution - 1), side);
    for (unsigned r = 0; r < q; ++r) {
      for (unsigned s = 0; s < q; ++s) {
        Complex acc{};
        for (unsigned l = 0; l < q; ++l) acc += m(r, l) * std::conj(m(s, l));
        worst = std::max(worst, std::abs(acc - Complex(r == s ? 1.0 : 0.0)));
      }
    }
  }
  return worst;
}

FilterBank canonical_bank(const FieldTablePtr& table) {
  const unsigned q = table->q();
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  const FieldElement prime = FieldElement::prime_power(table, 1);
  std::vector<Taps> rows(q, Taps(q));
  for (unsigned s = 0; s < q; ++s) {
    const FieldElement us = u_of(table, s);
    for (unsigned k = 0; k < q; ++k) {
      rows[s][k] = scale * std::conj(chi(lf_mul(us, lf_mul(prime, u_of(table, k)))));
    }
  }
  return FilterBank(table, rows, rows);
}

bool is_canonical(const FilterBank& bank, double tol) {
  const FilterBank ref = canonical_bank(bank.table());
  for (Side side : {Side::Primal, Side::Dual}) {
    if (bank.support(side) != bank.q()) return false;
    for (unsigned s = 0; s < bank.q(); ++s) {
      for (unsigned k = 0; k < bank.q(); ++k) {
        if (std::abs(bank.tap(side, s, k) - ref.tap(side, s, k)) > tol) return false;
      }
    }
  }
  return true;
}

double default_max_condition(unsigned q) {
  // Typical cond(G) grows like 2.5q; deep cascades amplify roundoff by about
  // cond(G) per level, so stay as low as draws reasonably allow.
  return std::clamp(2.5 * q, 10.0, 100.0);
}

FilterBank random_biorthogonal(const FieldTablePtr& table, std::uint64_t seed,
                               std::optional<double> max_condition) {
  const unsigned q = table->q();
  const double bound = max_condition.value_or(default_max_condition(q));
  if (!(bound >= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "condition bound must be at least 1");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    EigenMatrix g(q, q);
    for (unsigned r = 0; r < q; ++r) {
      for (unsigned k = 0; k < q; ++k) {
        const double re = uniform(rng);
        const double im = uniform(rng);
        g(r, k) = Complex(re, im);
      }
    }
    Eigen::JacobiSVD<EigenMatrix> svd(g);
    const auto& sv = svd.singularValues();
    if (sv(q - 1) <= 0.0 || sv(0) / sv(q - 1) > bound) continue;

    const EigenMatrix dual = g.inverse().adjoint();
    std::vector<Taps> primal_rows(q, Taps(q)), dual_rows(q, Taps(q));
    for (unsigned r = 0; r < q; ++r) {
      for (unsigned k = 0; k < q; ++k) {
        primal_rows[r][k] = g(r, k);
        dual_rows[r][k] = dual(r, k);
      }
    }
    return FilterBank(table, std::move(primal_rows), std::move(dual_rows));
  }
  throw Error(ErrorKind::LimitExceeded,
              "no draw with condition number <= " + std::to_string(bound) + " after " +
                  std::to_string(kMaxDraws) + " tries");
}

}  // namespace lfwp
