#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <optional>
#include <vector>

#include "lfwp/local_field.hpp"

namespace lfwp {

enum class Side { Primal, Dual };

using Taps = std::vector<Complex>;

/// Dense row-major complex matrix, just enough for modulation matrices.
class CMatrix {
 public:
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

/// A biorthogonal pair of q-band filter families: analysis (primal) taps
/// a_k^s and dual taps ã_k^s, s = 0..q-1, each supported on [0, L).
class FilterBank {
 public:
  /// Throws Error(RowCount) unless both families have exactly q rows, and
  /// Error(InvalidArgument) for an empty row.
  FilterBank(FieldTablePtr table, std::vector<Taps> analysis, std::vector<Taps> dual);

  const FieldTablePtr& table() const noexcept { return table_; }
  const FieldTable& field() const noexcept { return *table_; }
  unsigned q() const noexcept { return table_->q(); }

  const std::vector<Taps>& rows(Side side) const noexcept {
    return side == Side::Primal ? analysis_ : dual_;
  }
  const std::vector<Taps>& analysis() const noexcept { return analysis_; }
  const std::vector<Taps>& dual() const noexcept { return dual_; }

  /// Tap k of band s; zero beyond the stored row.
  Complex tap(Side side, unsigned s, Index k) const noexcept {
    const Taps& row = rows(side)[s];
    return k < row.size() ? row[k] : Complex{};
  }

  /// Longest row on one side.
  std::size_t support(Side side) const noexcept;
  std::size_t support() const noexcept;

  /// Same bank with the primal and dual families exchanged.
  FilterBank swapped() const;

 private:
  FieldTablePtr table_;
  std::vector<Taps> analysis_;
  std::vector<Taps> dual_;
};

/// m_s(ξ) = q^{-1/2} Σ_k a_k^s conj(χ_k(ξ)), or the dual mask m̃_s.
Complex mask(const FilterBank& bank, unsigned s, const FieldElement& xi, Side side);

/// Entry (s, ℓ) is m_s(𝔭ξ + 𝔭u(ℓ)).
CMatrix modulation_matrix(const FilterBank& bank, const FieldElement& xi, Side side);

/// Smallest L' >= 1 with q^{L'} >= support: masks are constant on cosets of
/// 𝔭^{L'} 𝔇, so ξ = sample_point(j, L'-1) exhausts the frequency condition.
unsigned mask_resolution(const FilterBank& bank);

struct BandPairDeviation {
  unsigned r = 0;
  unsigned s = 0;
  double freq = 0.0;
  double time = 0.0;
};

struct ValidationReport {
  bool passed = false;
  double max_freq_deviation = 0.0;
  double max_time_deviation = 0.0;
  bool lowpass_normalized = false;  // m_0(0) = 1 and m̃_0(0) = 1
  std::vector<BandPairDeviation> details;  // worst case per (r, s)
};

/// Decides the biorthogonality of the bank twice:
///  - frequency: Σ_ℓ m_r(𝔭ξ + 𝔭u(ℓ)) conj(m̃_s(𝔭ξ + 𝔭u(ℓ))) = δ_{r,s} at every
///    coset representative ξ of 𝔭^{L'-1}𝔇 in 𝔇;
///  - time: Σ_k a_k^r conj(ã^s_{k ⊖ qn}) = δ_{r,s} δ_{0,n} for every shift n
///    that can overlap the support.
/// The frequency sums are a character series in the time sums, so the two
/// agree on pass/fail up to rounding.
ValidationReport validate(const FilterBank& bank, double tol);

/// max |M M^H - I| over all sample points, M = modulation_matrix(ξ, side).
double modulation_unitarity_deviation(const FilterBank& bank, Side side);

/// Haar/Vilenkin bank: a_k^s = q^{-1/2} conj(χ(u(s) 𝔭 u(k))), 0 <= s, k < q,
/// dual equal to primal.
FilterBank canonical_bank(const FieldTablePtr& table);

/// Whether both families match canonical_bank(table) within tol.
bool is_canonical(const FilterBank& bank, double tol = 1e-12);

/// clamp(2.5 q, 10, 100).
double default_max_condition(unsigned q);

/// Support-q biorthogonal bank from a seeded well-conditioned random matrix G
/// (cond(G) <= max_condition, default_max_condition(q) when unset): primal rows
/// are the rows of G, dual rows those of (G^{-1})^H. Throws
/// Error(LimitExceeded) after 1000 rejected draws.
FilterBank random_biorthogonal(const FieldTablePtr& table, std::uint64_t seed,
                               std::optional<double> max_condition = std::nullopt);

}  // namespace lfwp
