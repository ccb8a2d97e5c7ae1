#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lfwp {

using Index = std::uint64_t;

/// Characteristic p, degree c and q = p^c of the residue field GF(q).
class FieldParams {
 public:
  /// Throws Error(NotPrime) if p is not prime, Error(InvalidArgument) if
  /// c is outside [1, 4] or q does not fit comfortably in an Index.
  FieldParams(unsigned p, unsigned c);

  unsigned p() const noexcept { return p_; }
  unsigned c() const noexcept { return c_; }
  unsigned q() const noexcept { return q_; }

  friend bool operator==(const FieldParams&, const FieldParams&) = default;

 private:
  unsigned p_;
  unsigned c_;
  unsigned q_;
};

bool is_prime(std::uint64_t n) noexcept;

// Carry-free arithmetic on N_0. u(m) + u(n) = u(gadd(m, n)); the group is a
// direct sum of copies of Z_p acting on the base-p digits. Base-q digit
// blocks coincide with runs of c base-p digits, so one rule covers every c.

Index gadd(const FieldParams& f, Index m, Index n) noexcept;
Index gneg(const FieldParams& f, Index n) noexcept;
Index gsub(const FieldParams& f, Index m, Index n) noexcept;

/// n * q^k; throws Error(Overflow) if the result leaves the Index range.
Index scale_q(const FieldParams& f, Index n, unsigned k);

/// q^k with overflow checking.
Index pow_q(const FieldParams& f, unsigned k);

/// Base-q digits, least significant first; digits_q(0) is empty.
std::vector<unsigned> digits_q(const FieldParams& f, Index n);
Index from_digits_q(const FieldParams& f, std::span<const unsigned> digits);

/// Smallest j with n < q^j (level(0) == 0).
unsigned level(const FieldParams& f, Index n) noexcept;

/// Reverses the first `width` base-q digits of n (n < q^width). Maps the
/// coset index of 𝔭^J u(t) + 𝔭^J 𝔇 onto the sample_point ordering of 𝔇.
Index reverse_digits_q(const FieldParams& f, Index n, unsigned width);

/// Lowest base-q digit, i.e. n mod q.
inline unsigned low_digit(const FieldParams& f, Index n) noexcept {
  return static_cast<unsigned>(n % f.q());
}

}  // namespace lfwp
