#include "lfwp/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <limits>
#include <string>

#include "lfwp/error.hpp"

namespace lfwp {

namespace {

// j with length == q^j, or throws.
unsigned block_level(const FieldParams& f, std::size_t length, const char* what) {
  unsigned j = 0;
  Index n = 1;
  while (n < length) {
    n *= f.q();
    ++j;
  }
  if (n != length) {
    throw Error(ErrorKind::SizeViolation,
                std::string(what) + " length " + std::to_string(length) +
                    " is not a power of q = " + std::to_string(f.q()));
  }
  return j;
}

std::string describe(const NodeKey& key) {
  return "node (scale " + std::to_string(key.scale) + ", packet " +
         std::to_string(key.packet) + ")";
}

void require_same_field(const FilterBank& bank, const FieldTablePtr& table) {
  if (!table || !(*table == bank.field())) {
    throw Error(ErrorKind::FieldMismatch, "data and filter bank use different fields");
  }
}

}  // namespace

Signal make_signal(FieldTablePtr table, unsigned level, Block coeffs) {
  const Index expected = pow_q(table->params(), level);
  if (coeffs.size() != expected) {
    throw Error(ErrorKind::SizeViolation,
                "signal at level " + std::to_string(level) + " needs " +
                    std::to_string(expected) + " coefficients, got " +
                    std::to_string(coeffs.size()));
  }
  return Signal{std::move(table), level, std::move(coeffs)};
}

namespace {

// decompose/reconstruct run the whole cascade in extended precision and round
// once at the end; the stored coefficients are then the only double rounding.
using Wide = std::complex<long double>;
using WideBlock = std::vector<Wide>;

template <class C>
std::vector<std::vector<C>> analyze_kernel(const FilterBank& bank, std::span<const C> c) {
  using Real = typename C::value_type;
  const FieldParams& f = bank.field().params();
  const unsigned q = bank.q();
  const unsigned j = block_level(f, c.size(), "analysis input");
  if (j == 0) {
    throw Error(ErrorKind::SizeViolation, "cannot analyze a block of length 1");
  }
  if (bank.support(Side::Dual) > c.size()) {
    throw Error(ErrorKind::SizeViolation,
                "dual support " + std::to_string(bank.support(Side::Dual)) +
                    " exceeds block length " + std::to_string(c.size()));
  }
  const Real inv_root_q = Real(1) / std::sqrt(static_cast<Real>(q));
  const Index out_len = c.size() / q;
  std::vector<std::vector<C>> out(q, std::vector<C>(out_len));
  for (unsigned nu = 0; nu < q; ++nu) {
    const Taps& row = bank.dual()[nu];
    std::vector<C> taps(row.size());
    for (std::size_t t = 0; t < row.size(); ++t) taps[t] = C(row[t].real(), -row[t].imag());
    for (Index k = 0; k < out_len; ++k) {
      const Index base = k * q;
      C acc{};
      // base has a zero low digit, so the first q taps need no carry-free add.
      const Index head = std::min<Index>(q, taps.size());
      for (Index t = 0; t < head; ++t) acc += c[base + t] * taps[t];
      for (Index t = head; t < taps.size(); ++t) acc += c[gadd(f, base, t)] * taps[t];
      out[nu][k] = acc * inv_root_q;
    }
  }
  return out;
}

template <class C>
std::vector<C> synthesize_kernel(const FilterBank& bank, const std::vector<std::vector<C>>& bands) {
  using Real = typename C::value_type;
  const FieldParams& f = bank.field().params();
  const unsigned q = bank.q();
  if (bands.size() != q) {
    throw Error(ErrorKind::SizeViolation, "synthesis needs exactly q bands, got " +
                                              std::to_string(bands.size()));
  }
  const std::size_t in_len = bands.front().size();
  for (const auto& b : bands) {
    if (b.size() != in_len) {
      throw Error(ErrorKind::SizeViolation, "synthesis bands differ in length");
    }
  }
  block_level(f, in_len, "synthesis band");
  const std::size_t out_len = in_len * q;
  if (bank.support(Side::Primal) > out_len) {
    throw Error(ErrorKind::SizeViolation,
                "primal support " + std::to_string(bank.support(Side::Primal)) +
                    " exceeds block length " + std::to_string(out_len));
  }
  std::vector<std::vector<C>> taps(q);
  for (unsigned nu = 0; nu < q; ++nu) {
    for (const Complex& a : bank.analysis()[nu]) taps[nu].emplace_back(a.real(), a.imag());
  }
  const Real root_q = std::sqrt(static_cast<Real>(q));
  std::vector<C> out(out_len);
  for (Index k = 0; k < out_len; ++k) {
    const unsigned low = low_digit(f, k);
    C acc{};
    for (unsigned nu = 0; nu < q; ++nu) {
      // k ⊖ t is a multiple of q exactly when t shares k's low digit.
      if (low < taps[nu].size()) acc += bands[nu][k / q] * taps[nu][low];
      for (Index t = low + q; t < taps[nu].size(); t += q) {
        acc += bands[nu][gsub(f, k, t) / q] * taps[nu][t];
      }
    }
    out[k] = acc * root_q;
  }
  return out;
}

WideBlock widen(std::span<const Complex> block, long double factor = 1.0L) {
  WideBlock out(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    out[i] = Wide(block[i].real(), block[i].imag()) * factor;
  }
  return out;
}

Block narrow(const WideBlock& block, long double factor = 1.0L) {
  Block out(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    const Wide v = block[i] * factor;
    out[i] = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  return out;
}

// Factor that takes raw coefficients at `level` to the stored convention.
long double storage_factor(const FieldParams& f, unsigned level, bool normalized) {
  return normalized ? std::pow(static_cast<long double>(f.q()), -0.5L * level) : 1.0L;
}

}  // namespace

std::vector<Block> analyze_step(const FilterBank& bank, std::span<const Complex> c) {
  return analyze_kernel<Complex>(bank, c);
}

Block synthesize_step(const FilterBank& bank, const std::vector<Block>& bands) {
  return synthesize_kernel(bank, bands);
}

std::vector<Block> packet_analyze_step(const FilterBank& bank,
                                       std::span<const Complex> parent) {
  return analyze_step(bank, parent);
}

Block packet_synthesize_step(const FilterBank& bank, const std::vector<Block>& children) {
  return synthesize_step(bank, children);
}

Index child_packet(const FieldParams& f, Index parent, unsigned s) {
  return scale_q(f, parent, 1) + s;
}

bool support_fits(const FilterBank& bank, unsigned root_level, unsigned mra_depth,
                  PacketDepth depth) {
  if (mra_depth == 0 || mra_depth > root_level) return true;
  // Smallest level any analysis step works on.
  unsigned smallest = root_level - mra_depth + 1;
  for (unsigned scale = root_level - mra_depth; scale < root_level; ++scale) {
    const unsigned r = depth.at_scale(scale);
    if (r > 0 && r <= scale) smallest = std::min(smallest, scale - r + 1);
  }
  Index length = 1;
  for (unsigned i = 0; i < smallest && length < bank.support(); ++i) length *= bank.q();
  return bank.support() <= length;
}

bool decomposition_feasible(unsigned root_level, unsigned mra_depth, PacketDepth depth) {
  if (mra_depth > root_level) return false;
  if (depth.full) return true;
  if (mra_depth == 0) return depth.uniform == 0;
  return depth.uniform <= root_level - mra_depth;
}

Block rescale_block(const FieldParams& f, std::span<const Complex> block,
                    unsigned block_level, bool to_normalized) {
  const double exponent = (to_normalized ? -0.5 : 0.5) * block_level;
  const double factor = std::pow(static_cast<double>(f.q()), exponent);
  Block out(block.begin(), block.end());
  for (Complex& v : out) v *= factor;
  return out;
}

Decomposition decompose(const FilterBank& bank, const Signal& signal, unsigned mra_depth,
                        PacketDepth depth, bool normalized) {
  require_same_field(bank, signal.table);
  const FieldParams& f = bank.field().params();
  const unsigned root = signal.level;
  if (signal.coeffs.size() != pow_q(f, root)) {
    throw Error(ErrorKind::SizeViolation, "signal length does not match its level");
  }
  if (mra_depth > root) {
    throw Error(ErrorKind::SizeViolation,
                "MRA depth " + std::to_string(mra_depth) + " exceeds signal level " +
                    std::to_string(root));
  }
  if (!decomposition_feasible(root, mra_depth, depth)) {
    throw Error(ErrorKind::SizeViolation,
                "packet depth " + std::to_string(depth.uniform) +
                    " infeasible for level " + std::to_string(root) + " with MRA depth " +
                    std::to_string(mra_depth));
  }

  Decomposition dec;
  dec.table = bank.table();
  dec.root_level = root;
  dec.mra_depth = mra_depth;
  dec.packet_depth = depth;
  dec.normalized = normalized;

  WideBlock c = widen(signal.coeffs, 1.0L / storage_factor(f, root, normalized));
  std::map<NodeKey, WideBlock> nodes;
  for (unsigned step = 0; step < mra_depth; ++step) {
    const unsigned scale = root - step - 1;
    std::vector<WideBlock> bands;
    try {
      bands = analyze_kernel<Wide>(bank, c);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at lowpass level " +
                                std::to_string(scale + 1));
    }
    c = std::move(bands[0]);
    for (unsigned nu = 1; nu < bank.q(); ++nu) nodes[{scale, nu}] = std::move(bands[nu]);
  }

  // Expand every detail block into packet nodes.
  for (unsigned scale = root - mra_depth; scale < root; ++scale) {
    const unsigned splits = depth.at_scale(scale);
    for (unsigned i = 0; i < splits; ++i) {
      std::vector<NodeKey> parents;
      for (const auto& [key, block] : nodes) {
        if (key.scale == scale) parents.push_back(key);
      }
      for (const NodeKey& key : parents) {
        std::vector<WideBlock> children;
        try {
          children = analyze_kernel<Wide>(bank, nodes.at(key));
        } catch (const Error& e) {
          throw Error(e.kind(), std::string(e.what()) + " at " + describe(key));
        }
        nodes.erase(key);
        for (unsigned s = 0; s < bank.q(); ++s) {
          nodes[{scale, child_packet(f, key.packet, s)}] = std::move(children[s]);
        }
      }
    }
  }

  dec.lowpass = narrow(c, storage_factor(f, root - mra_depth, normalized));
  for (const auto& [key, block] : nodes) {
    dec.nodes[key] = narrow(block, storage_factor(f, dec.node_level(key), normalized));
  }
  return dec;
}

void check_node_grid(const Decomposition& dec) {
  if (!dec.table) throw Error(ErrorKind::InvalidArgument, "decomposition without field");
  const FieldParams& f = dec.table->params();
  const unsigned root = dec.root_level;
  const unsigned m = dec.mra_depth;
  if (!decomposition_feasible(root, m, dec.packet_depth)) {
    throw Error(ErrorKind::InvalidArgument, "malformed node grid: infeasible depths");
  }
  if (dec.lowpass.size() != pow_q(f, root - m)) {
    throw Error(ErrorKind::InvalidArgument,
                "malformed node grid: lowpass length " + std::to_string(dec.lowpass.size()) +
                    ", expected " + std::to_string(pow_q(f, root - m)));
  }
  std::size_t expected_nodes = 0;
  for (unsigned scale = root - m; scale < root; ++scale) {
    const unsigned r = dec.packet_depth.at_scale(scale);
    const Index first = pow_q(f, r);
    const Index last = pow_q(f, r + 1);
    const Index length = pow_q(f, scale - r);
    for (Index nu = first; nu < last; ++nu) {
      const NodeKey key{scale, nu};
      const auto it = dec.nodes.find(key);
      if (it == dec.nodes.end()) {
        throw Error(ErrorKind::InvalidArgument, "malformed node grid: missing " + describe(key));
      }
      if (it->second.size() != length) {
        throw Error(ErrorKind::InvalidArgument,
                    "malformed node grid: " + describe(key) + " has length " +
                        std::to_string(it->second.size()) + ", expected " +
                        std::to_string(length));
      }
      ++expected_nodes;
    }
  }
  if (dec.nodes.size() != expected_nodes) {
    throw Error(ErrorKind::InvalidArgument, "malformed node grid: unexpected extra nodes");
  }
}

Signal reconstruct(const FilterBank& bank, const Decomposition& dec) {
  require_same_field(bank, dec.table);
  check_node_grid(dec);
  const FieldParams& f = bank.field().params();
  const unsigned root = dec.root_level;
  const unsigned q = bank.q();

  auto raw = [&](const Block& block, unsigned lvl) {
    return widen(block, 1.0L / storage_factor(f, lvl, dec.normalized));
  };

  WideBlock c = raw(dec.lowpass, root - dec.mra_depth);
  for (unsigned scale = root - dec.mra_depth; scale < root; ++scale) {
    const unsigned r = dec.packet_depth.at_scale(scale);
    std::map<Index, WideBlock> level_nodes;
    for (Index nu = pow_q(f, r); nu < pow_q(f, r + 1); ++nu) {
      const NodeKey key{scale, nu};
      level_nodes[nu] = raw(dec.nodes.at(key), dec.node_level(key));
    }
    // Merge children back into their parents until only ν ∈ [1, q) remain.
    for (unsigned i = r; i > 0; --i) {
      std::map<Index, WideBlock> parents;
      for (Index nu = pow_q(f, i - 1); nu < pow_q(f, i); ++nu) {
        std::vector<WideBlock> children;
        children.reserve(q);
        for (unsigned s = 0; s < q; ++s) {
          children.push_back(std::move(level_nodes.at(child_packet(f, nu, s))));
        }
        parents[nu] = synthesize_kernel(bank, children);
      }
      level_nodes = std::move(parents);
    }
    std::vector<WideBlock> bands;
    bands.reserve(q);
    bands.push_back(std::move(c));
    for (unsigned nu = 1; nu < q; ++nu) bands.push_back(std::move(level_nodes.at(nu)));
    c = synthesize_kernel(bank, bands);
  }
  return Signal{dec.table, root, narrow(c, storage_factor(f, root, dec.normalized))};
}

std::size_t coefficient_count(const Decomposition& dec) {
  std::size_t n = dec.lowpass.size();
  for (const auto& [key, block] : dec.nodes) n += block.size();
  return n;
}

IndexRange theta_set(unsigned q, unsigned ell) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "theta sets need q >= 2");
  Index first = 1;
  for (unsigned i = 0; i < ell; ++i) {
    if (first > std::numeric_limits<Index>::max() / q / q) {
      throw Error(ErrorKind::Overflow, "theta set bound overflows the index range");
    }
    first *= q;
  }
  return {first, first * q};
}

double node_split_roundtrip(const FilterBank& bank, std::span<const Complex> node) {
  const auto children = packet_analyze_step(bank, node);
  const Block back = packet_synthesize_step(bank, children);
  double worst = 0.0;
  for (std::size_t i = 0; i < node.size(); ++i) {
    worst = std::max(worst, std::abs(back[i] - node[i]));
  }
  return worst;
}

namespace {

double block_energy(std::span<const Complex> block) {
  double acc = 0.0;
  for (const Complex& v : block) acc += std::norm(v);
  return acc;
}

}  // namespace

double weighted_energy(const Decomposition& dec) {
  const double q = dec.table->q();
  auto weight = [&](unsigned lvl) { return dec.normalized ? 1.0 : std::pow(q, -double(lvl)); };
  double acc = weight(dec.root_level - dec.mra_depth) * block_energy(dec.lowpass);
  for (const auto& [key, block] : dec.nodes) {
    acc += weight(dec.node_level(key)) * block_energy(block);
  }
  return acc;
}

double weighted_energy(const Signal& signal, bool normalized) {
  const double weight =
      normalized ? 1.0 : std::pow(static_cast<double>(signal.table->q()), -double(signal.level));
  return weight * block_energy(signal.coeffs);
}

Block packet_spectrum(const Decomposition& dec) {
  const FieldParams& f = dec.table->params();
  if (dec.mra_depth != dec.root_level || !dec.packet_depth.full) {
    throw Error(ErrorKind::InvalidArgument,
                "packet spectrum needs M = J and full packet depth");
  }
  check_node_grid(dec);
  Block out(pow_q(f, dec.root_level));
  out[0] = dec.lowpass.at(0);
  for (const auto& [key, block] : dec.nodes) out[key.packet] = block.at(0);
  return out;
}

}  // namespace lfwp
