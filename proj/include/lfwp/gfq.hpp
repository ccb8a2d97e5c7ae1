#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lfwp/qadic_index.hpp"

namespace lfwp {

/// Element of GF(q) in the polynomial basis ζ_μ = X^μ mod modulus;
/// coeffs[μ] in [0, p) multiplies ζ_μ.
struct GFqElement {
  std::vector<unsigned> coeffs;

  friend bool operator==(const GFqElement&, const GFqElement&) = default;
};

/// GF(p^c) realised as Z_p[X] / (modulus). Immutable after construction.
///
/// Elements travel through the hot paths as base-q "digits": the digit
/// b = a_0 + a_1 p + ... + a_{c-1} p^{c-1} stands for Σ a_μ ζ_μ, which is the
/// positional map u(b) = (a_0 + a_1 ζ_1 + ...) 𝔭^{-1} uses.
class FieldTable {
 public:
  /// Uses default_modulus(p, c).
  explicit FieldTable(FieldParams params);

  /// `modulus` holds c+1 coefficients in [0, p), low to high, and must be
  /// monic and irreducible. For c == 1 it may be empty (no reduction needed).
  /// Throws Error(ReducibleModulus) or Error(InvalidArgument).
  FieldTable(FieldParams params, std::vector<unsigned> modulus);

  const FieldParams& params() const noexcept { return params_; }
  unsigned p() const noexcept { return params_.p(); }
  unsigned c() const noexcept { return params_.c(); }
  unsigned q() const noexcept { return params_.q(); }

  /// Empty when c == 1.
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  // Digit-level arithmetic, digits in [0, q).
  unsigned add_digits(unsigned a, unsigned b) const noexcept;
  unsigned neg_digit(unsigned a) const noexcept;
  unsigned mul_digits(unsigned a, unsigned b) const noexcept;

  friend bool operator==(const FieldTable& a, const FieldTable& b) noexcept {
    return a.params_ == b.params_ && a.modulus_ == b.modulus_;
  }

 private:
  unsigned mul_slow(unsigned a, unsigned b) const noexcept;

  FieldParams params_;
  std::vector<unsigned> modulus_;
  std::vector<unsigned> mul_table_;  // q*q entries when q is small
};

using FieldTablePtr = std::shared_ptr<const FieldTable>;

FieldTablePtr make_field_table(unsigned p, unsigned c,
                               std::optional<std::vector<unsigned>> modulus = {});

/// Smallest monic irreducible of degree c over Z_p, ordering candidates by
/// the integer Σ_{i<c} a_i p^i. Gives X^2+X+1 (q=4), X^3+X+1 (q=8), X^2+1 (q=9).
/// Empty for c == 1.
std::vector<unsigned> default_modulus(unsigned p, unsigned c);

/// Monic and without factors of degree 1..deg/2 over Z_p.
bool is_irreducible(unsigned p, std::span<const unsigned> poly);

GFqElement gf_zero(const FieldTable& t);
GFqElement gf_one(const FieldTable& t);
GFqElement gf_add(const FieldTable& t, const GFqElement& x, const GFqElement& y);
GFqElement gf_mul(const FieldTable& t, const GFqElement& x, const GFqElement& y);

/// Throws Error(InvalidArgument) unless 0 <= b < q.
GFqElement from_digit(const FieldTable& t, unsigned b);
unsigned to_digit(const FieldTable& t, const GFqElement& x);

/// Coordinate along ζ_0, the only one the canonical character reads.
unsigned zeta0_component(const GFqElement& x);

}  // namespace lfwp
