#include "lfwp/packets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfwp/error.hpp"

namespace lfwp {

PacketVector packet_coeffs(const FilterBank& bank, Index n, unsigned depth, Side side) {
  const FieldParams& f = bank.field().params();
  if (depth < level(f, n)) {
    throw Error(ErrorKind::InvalidArgument,
                "depth " + std::to_string(depth) + " below level(" + std::to_string(n) +
                    ") = " + std::to_string(level(f, n)));
  }
  const double root_q = std::sqrt(static_cast<double>(bank.q()));

  std::vector<unsigned> bands = digits_q(f, n);
  bands.resize(depth, 0);

  std::vector<Complex> h{Complex(1.0)};
  for (unsigned j = 0; j < depth; ++j) {
    const unsigned s = bands[depth - 1 - j];
    const Taps& taps = bank.rows(side)[s];
    const Index step = pow_q(f, j);
    // gadd(x, y) never has more base-q digits than max(x, y).
    const Index top = std::max<Index>(scale_q(f, taps.size() - 1, j), h.size() - 1);
    std::vector<Complex> next(pow_q(f, level(f, top)), Complex{});
    for (Index k = 0; k < taps.size(); ++k) {
      if (taps[k] == Complex{}) continue;
      const Index base = k * step;
      const Complex weight = root_q * taps[k];
      for (Index t = 0; t < h.size(); ++t) {
        next[gadd(f, base, t)] += weight * h[t];
      }
    }
    h = std::move(next);
  }
  return PacketVector{n, depth, side, std::move(h)};
}

Complex packet_inner_product(const FilterBank& bank, Index n, Index m, Index k,
                             unsigned depth) {
  const FieldParams& f = bank.field().params();
  if (depth < level(f, n) || depth < level(f, m)) {
    throw Error(ErrorKind::InvalidArgument, "depth too small for packet indices");
  }
  const auto h = packet_coeffs(bank, n, depth, Side::Primal).coeffs;
  const auto g = packet_coeffs(bank, m, depth, Side::Dual).coeffs;
  const Index shift = scale_q(f, k, depth);
  Complex acc{};
  for (Index t = 0; t < h.size(); ++t) {
    const Index u = gsub(f, t, shift);
    if (u < g.size()) acc += h[t] * std::conj(g[u]);
  }
  return acc / static_cast<double>(pow_q(f, depth));
}

unsigned default_depth(const FieldParams& f, Index n, Index m) {
  return level(f, std::max(n, m)) + 1;
}

BiorthogonalityCheck packet_biorthogonality(const FilterBank& bank, Index packet_count,
                                            Index shift_count, unsigned depth) {
  const FieldParams& f = bank.field().params();
  const Index pq = pow_q(f, depth);
  std::vector<std::vector<Complex>> primal, dual;
  for (Index n = 0; n < packet_count; ++n) {
    primal.push_back(packet_coeffs(bank, n, depth, Side::Primal).coeffs);
    dual.push_back(packet_coeffs(bank, n, depth, Side::Dual).coeffs);
  }
  BiorthogonalityCheck out;
  for (Index k = 0; k < shift_count; ++k) {
    const Index shift = scale_q(f, k, depth);
    for (Index n = 0; n < packet_count; ++n) {
      for (Index m = 0; m < packet_count; ++m) {
        const auto& h = primal[n];
        const auto& g = dual[m];
        Complex acc{};
        for (Index t = 0; t < h.size(); ++t) {
          const Index u = gsub(f, t, shift);
          if (u < g.size()) acc += h[t] * std::conj(g[u]);
        }
        acc /= static_cast<double>(pq);
        const double expected = (n == m && k == 0) ? 1.0 : 0.0;
        const double dev = std::abs(acc - Complex(expected));
        if (dev > out.max_deviation) out = {dev, n, m, k};
      }
    }
  }
  return out;
}

std::vector<Complex> packet_samples(const FilterBank& bank, Index n, unsigned depth) {
  if (!is_canonical(bank)) {
    throw Error(ErrorKind::InvalidArgument,
                "packet samples are defined only for the canonical bank");
  }
  const FieldParams& f = bank.field().params();
  const auto h = packet_coeffs(bank, n, depth, Side::Primal).coeffs;
  const Index count = pow_q(f, depth);
  std::vector<Complex> out(count);
  // Coset t of 𝔭^J u(t) + 𝔭^J 𝔇 carries digit d_i(t) at 𝔭^{J-1-i}.
  for (Index j = 0; j < count; ++j) out[j] = h[reverse_digits_q(f, j, depth)];
  return out;
}

}  // namespace lfwp
