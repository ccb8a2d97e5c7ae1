#pragma once

#include <vector>

#include "lfwp/filter_bank.hpp"

namespace lfwp {

/// ω_n (side Primal) or ω̃_n (side Dual) in V_J coordinates:
/// ω_n = Σ_t coeffs[t] ω_0(𝔭^{-J}x − u(t)).
struct PacketVector {
  Index n = 0;
  unsigned depth = 0;
  Side side = Side::Primal;
  std::vector<Complex> coeffs;
};

/// Two-scale cascade ω_{qr+s} = √q Σ_k a_k^s ω_r(𝔭^{-1}· − u(k)), run from
/// ω_0 = [1] at depth 0 through the J base-q digits of n, most significant
/// first. Throws Error(InvalidArgument) if J < level(n).
PacketVector packet_coeffs(const FilterBank& bank, Index n, unsigned depth, Side side);

/// ⟨ω_n, ω̃_m(· − u(k))⟩ = q^{-J} Σ_t h^{(n)}_t conj(h̃^{(m)}_{t ⊖ k q^J}),
/// exact at any depth J >= max(level(n), level(m)).
Complex packet_inner_product(const FilterBank& bank, Index n, Index m, Index k,
                             unsigned depth);

/// level(max(n, m)) + 1.
unsigned default_depth(const FieldParams& f, Index n, Index m);

struct BiorthogonalityCheck {
  double max_deviation = 0.0;
  Index worst_n = 0;
  Index worst_m = 0;
  Index worst_k = 0;
};

/// Worst |⟨ω_n, ω̃_m(· − u(k))⟩ − δ_{n,m} δ_{0,k}| over n, m < packet_count
/// and k < shift_count, evaluated at `depth`.
BiorthogonalityCheck packet_biorthogonality(const FilterBank& bank, Index packet_count,
                                            Index shift_count, unsigned depth);

/// Values of ω_n on the q^J cosets of 𝔭^J 𝔇 in 𝔇, entry j at sample_point(j, J).
/// Only the canonical bank has ω_0 = 1_𝔇, so any other bank is rejected with
/// Error(InvalidArgument). For that bank ω_n = conj(χ_n) on 𝔇.
std::vector<Complex> packet_samples(const FilterBank& bank, Index n, unsigned depth);

}  // namespace lfwp
