#pragma once

#include <compare>
#include <map>
#include <span>
#include <vector>

#include "lfwp/filter_bank.hpp"

namespace lfwp {

using Block = std::vector<Complex>;

/// c_k^J, the coordinates of f_J against ω_0(𝔭^{-J}x − u(k)), k < q^J.
struct Signal {
  FieldTablePtr table;
  unsigned level = 0;
  Block coeffs;
};

/// Throws Error(SizeViolation) unless coeffs.size() == q^level.
Signal make_signal(FieldTablePtr table, unsigned level, Block coeffs);

/// How often each detail block g_j is split into packet nodes. Uniform depth r
/// gives nodes ν ∈ [q^r, q^{r+1}) at every scale; `full` splits scale j all the
/// way down to length-1 blocks (depth j), i.e. the complete packet basis.
struct PacketDepth {
  bool full = false;
  unsigned uniform = 0;

  unsigned at_scale(unsigned scale) const noexcept { return full ? scale : uniform; }

  static PacketDepth uniform_depth(unsigned r) { return {false, r}; }
  static PacketDepth full_depth() { return {true, 0}; }

  friend bool operator==(const PacketDepth&, const PacketDepth&) = default;
};

struct NodeKey {
  unsigned scale = 0;  // j: the detail space W_j the node came from
  Index packet = 0;    // ν

  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

/// f_J = f_{J-M} + Σ_{j=J-M}^{J-1} g_j with every g_j expanded into packet
/// nodes. A node (j, ν) split r times holds the coordinates against
/// ω_ν(𝔭^{-(j-r)}x − u(k)), k < q^{j-r}.
///
/// With `normalized` set, every block stores raw · q^{-ℓ/2}, ℓ the block's
/// effective level (J for the signal, J-M for the lowpass, j-r for a node),
/// i.e. coordinates against unit-norm functions.
struct Decomposition {
  FieldTablePtr table;
  unsigned root_level = 0;
  unsigned mra_depth = 0;
  PacketDepth packet_depth;
  bool normalized = false;
  Block lowpass;
  std::map<NodeKey, Block> nodes;

  /// Effective level of the node (scale j, split at_scale(j) times).
  unsigned node_level(const NodeKey& key) const noexcept {
    return key.scale - packet_depth.at_scale(key.scale);
  }
};

/// One analysis step, c'_k = q^{-1/2} Σ_μ c_μ conj(ã^ν_{μ ⊖ qk}) for every band
/// ν. Input length q^j, j >= 1; returns q bands of length q^{j-1}.
/// Throws Error(SizeViolation) when the dual support exceeds q^j.
std::vector<Block> analyze_step(const FilterBank& bank, std::span<const Complex> c);

/// c_k = √q Σ_ν Σ_μ b^ν_μ a^ν_{k ⊖ qμ}; the left inverse of analyze_step for
/// biorthogonal banks.
Block synthesize_step(const FilterBank& bank, const std::vector<Block>& bands);

/// Splits node ν into children qν + s, s = 0..q-1 (same kernel as analyze_step).
std::vector<Block> packet_analyze_step(const FilterBank& bank, std::span<const Complex> parent);
Block packet_synthesize_step(const FilterBank& bank, const std::vector<Block>& children);

/// scale_q(ν, 1) + s.
Index child_packet(const FieldParams& f, Index parent, unsigned s);

/// Whether every analysis step of decompose(J, M, depth) sees a block at least
/// as long as the bank's support (no boundary folding).
bool support_fits(const FilterBank& bank, unsigned root_level, unsigned mra_depth,
                  PacketDepth depth);

/// Whether (M, depth) is admissible at root level J: M <= J, and a uniform
/// depth r must satisfy r <= J - M (r == 0 when M == 0).
bool decomposition_feasible(unsigned root_level, unsigned mra_depth, PacketDepth depth);

/// M MRA steps on the lowpass chain, then every detail block expanded by
/// packet steps. Throws Error(SizeViolation) naming the offending node.
Decomposition decompose(const FilterBank& bank, const Signal& signal, unsigned mra_depth,
                        PacketDepth depth, bool normalized = false);

/// Inverse of decompose. Throws Error(InvalidArgument) for a malformed grid.
Signal reconstruct(const FilterBank& bank, const Decomposition& dec);

/// Throws Error(InvalidArgument) describing the first grid defect.
void check_node_grid(const Decomposition& dec);

/// Total number of stored coefficients.
std::size_t coefficient_count(const Decomposition& dec);

struct IndexRange {
  Index first = 0;
  Index last = 0;  // exclusive

  Index size() const noexcept { return last - first; }
  bool contains(Index n) const noexcept { return n >= first && n < last; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// ϑ_ℓ = ϑ̃_ℓ \ ϑ̃_{ℓ-1} = [q^ℓ, q^{ℓ+1}), with ϑ̃_{-1} = {0}.
/// Throws Error(InvalidArgument) for q < 2, Error(Overflow) past the index range.
IndexRange theta_set(unsigned q, unsigned ell);

/// max |packet_synthesize(packet_analyze(node)) − node|.
double node_split_roundtrip(const FilterBank& bank, std::span<const Complex> node);

/// Σ_blocks q^{-ℓ} Σ_k |c_k|² over the lowpass and every node (plain Σ |c|²
/// for normalized decompositions).
double weighted_energy(const Decomposition& dec);

/// q^{-J} Σ_k |c_k|² (plain when normalized).
double weighted_energy(const Signal& signal, bool normalized = false);

/// Multiply a block by q^{-level/2} (to_normalized) or q^{level/2}.
Block rescale_block(const FieldParams& f, std::span<const Complex> block, unsigned block_level,
                    bool to_normalized);

/// Coefficients of a fully split decomposition (M = J, full packet depth) laid
/// out by packet index n < q^J: n = 0 is the lowpass, n ∈ ϑ_j the node (j, n).
Block packet_spectrum(const Decomposition& dec);

}  // namespace lfwp
