#pragma once

#include <complex>
#include <map>
#include <optional>

#include "lfwp/gfq.hpp"

namespace lfwp {

using Complex = std::complex<double>;

/// A point of K: the finite Laurent series Σ c_ℓ 𝔭^ℓ over GF(q).
///
/// Coefficients are stored as base-q digits (see FieldTable), keyed by the
/// exponent ℓ, zero coefficients never stored. All arithmetic is exact.
class FieldElement {
 public:
  explicit FieldElement(FieldTablePtr table);

  /// digit · 𝔭^exponent.
  static FieldElement monomial(FieldTablePtr table, unsigned digit, int exponent);
  /// 𝔭^k.
  static FieldElement prime_power(FieldTablePtr table, int k);
  static FieldElement one(FieldTablePtr table);

  const FieldTablePtr& table() const noexcept { return table_; }
  const std::map<int, unsigned>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }

  /// Lowest exponent in the support; nullopt for zero.
  std::optional<int> valuation() const noexcept;

  /// |x| = q^{-valuation}; 0 for the zero element.
  double norm() const;

  /// Coefficient digit of 𝔭^exponent (0 if absent).
  unsigned digit(int exponent) const noexcept;
  GFqElement coefficient(int exponent) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return *a.table_ == *b.table_ && a.terms_ == b.terms_;
  }

 private:
  friend FieldElement lf_add(const FieldElement&, const FieldElement&);
  friend FieldElement lf_neg(const FieldElement&);
  friend FieldElement lf_mul(const FieldElement&, const FieldElement&);

  FieldTablePtr table_;
  std::map<int, unsigned> terms_;
};

/// Throw Error(FieldMismatch) when the operands use different tables.
FieldElement lf_add(const FieldElement& x, const FieldElement& y);
FieldElement lf_neg(const FieldElement& x);
FieldElement lf_sub(const FieldElement& x, const FieldElement& y);
FieldElement lf_mul(const FieldElement& x, const FieldElement& y);

/// u(n): base-q digit d_i(n) becomes the coefficient of 𝔭^{-i-1}.
FieldElement u_of(const FieldTablePtr& table, Index n);

/// exp(2πi a / p) with the quarter turns returned exactly.
Complex unit_root(unsigned a, unsigned p);

/// χ(x) = exp(2πi a / p), a the ζ_0 coordinate of the 𝔭^{-1} coefficient.
Complex chi(const FieldElement& x);

/// χ_n(x) = χ(u(n) x). Evaluated without forming the product: only the
/// coefficients of x at exponents 0 .. level(n)-1 can reach 𝔭^{-1}.
Complex chi_n(Index n, const FieldElement& x);

/// Coset representative x_j = Σ_{ℓ<M} d_ℓ(j) 𝔭^ℓ of 𝔭^M 𝔇 in 𝔇.
/// Throws Error(InvalidArgument) unless j < q^M.
FieldElement sample_point(const FieldTablePtr& table, Index j, unsigned depth);

}  // namespace lfwp
