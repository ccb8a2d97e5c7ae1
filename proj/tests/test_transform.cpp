#include "doctest.h"

#include <cmath>

#include "lfwp/error.hpp"
#include "lfwp/transform.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lfwp;
using testing_support::max_diff;
using testing_support::random_block;

namespace {

FilterBank haar() { return canonical_bank(make_field_table(2, 1)); }

}  // namespace

TEST_CASE("Haar analysis step") {
  const FilterBank bank = haar();
  const Block impulse{1.0, 0.0};
  const auto bands = analyze_step(bank, impulse);
  REQUIRE(bands.size() == 2);
  CHECK(std::abs(bands[0][0] - 0.5) < 1e-15);
  CHECK(std::abs(bands[1][0] - 0.5) < 1e-15);

  const auto ones = analyze_step(bank, Block{1.0, 1.0});
  CHECK(std::abs(ones[0][0] - 1.0) < 1e-15);
  CHECK(std::abs(ones[1][0]) < 1e-15);
}

TEST_CASE("Haar synthesis step carries the sqrt(q) factor") {
  const FilterBank bank = haar();
  const Block out = synthesize_step(bank, {{0.5}, {0.5}});
  CHECK(std::abs(out[0] - 1.0) <= 1e-15);
  CHECK(std::abs(out[1]) <= 1e-15);
  const Block ones = synthesize_step(bank, {{1.0}, {0.0}});
  CHECK(std::abs(ones[0] - 1.0) < 1e-15);
  CHECK(std::abs(ones[1] - 1.0) < 1e-15);
}

TEST_CASE("packet steps use the same kernel") {
  const FilterBank bank = haar();
  const auto children = packet_analyze_step(bank, Block{1.0, 0.0});
  CHECK(std::abs(children[0][0] - 0.5) < 1e-15);
  CHECK(std::abs(children[1][0] - 0.5) < 1e-15);
  const Block parent = packet_synthesize_step(bank, children);
  CHECK(max_diff(parent, Block{1.0, 0.0}) < 1e-15);
  CHECK(child_packet(bank.field().params(), 1, 0) == 2);
  CHECK(child_packet(bank.field().params(), 1, 1) == 3);
}

TEST_CASE("step size checks") {
  const FilterBank bank = canonical_bank(make_field_table(3, 1));
  CHECK_THROWS_AS(analyze_step(bank, Block(4)), Error);
  CHECK_THROWS_AS(analyze_step(bank, Block(1)), Error);  // support 3 > 1
  CHECK_THROWS_AS(synthesize_step(bank, {Block(1), Block(1)}), Error);
  CHECK_NOTHROW(analyze_step(bank, Block(9)));
}

TEST_CASE("node split round-trip is the identity") {
  std::mt19937_64 rng(3);
  for (auto [p, c] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    const auto t = make_field_table(p, c);
    for (const FilterBank& bank : {canonical_bank(t), random_biorthogonal(t, 17)}) {
      for (unsigned lvl = 1; lvl <= 3; ++lvl) {
        const Block node = random_block(rng, pow_q(t->params(), lvl));
        CHECK(node_split_roundtrip(bank, node) <= 1e-12);
      }
    }
  }
}

TEST_CASE("two-level Haar decomposition of an impulse") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 2, {1.0, 0.0, 0.0, 0.0});
  const Decomposition dec = decompose(bank, s, 2, PacketDepth::uniform_depth(0));
  CHECK(max_diff(dec.lowpass, Block{0.25}) < 1e-15);
  REQUIRE(dec.nodes.size() == 2);
  CHECK(max_diff(dec.nodes.at({1, 1}), Block{0.5, 0.0}) < 1e-15);
  CHECK(max_diff(dec.nodes.at({0, 1}), Block{0.25}) < 1e-15);
  CHECK(coefficient_count(dec) == 4);
  CHECK(max_diff(reconstruct(bank, dec).coeffs, s.coeffs) < 1e-15);
}

TEST_CASE("constants stay in the lowpass") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 1, {1.0, 1.0});
  const Decomposition dec = decompose(bank, s, 1, PacketDepth::uniform_depth(0));
  CHECK(max_diff(dec.lowpass, Block{1.0}) < 1e-15);
  CHECK(max_diff(dec.nodes.at({0, 1}), Block{0.0}) < 1e-15);
}

TEST_CASE("zero MRA levels keep the signal") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 2, {1.0, 2.0, 3.0, 4.0});
  const Decomposition dec = decompose(bank, s, 0, PacketDepth::uniform_depth(0));
  CHECK(dec.nodes.empty());
  CHECK(dec.lowpass == s.coeffs);
}

TEST_CASE("packet splitting produces the expected node grid") {
  const auto t = make_field_table(3, 1);
  const FilterBank bank = canonical_bank(t);
  std::mt19937_64 rng(1);
  const Signal s = make_signal(t, 3, random_block(rng, 27));
  const Decomposition dec = decompose(bank, s, 1, PacketDepth::uniform_depth(1));
  // One detail scale (j = 2), split once: ν ∈ [3, 9), each of length 3.
  CHECK(dec.nodes.size() == 6);
  for (Index nu = 3; nu < 9; ++nu) CHECK(dec.nodes.at({2, nu}).size() == 3);
  CHECK(dec.lowpass.size() == 9);
  CHECK(coefficient_count(dec) == 27);
  CHECK(max_diff(reconstruct(bank, dec).coeffs, s.coeffs) < 1e-12);
}

TEST_CASE("perfect reconstruction over feasible configurations") {
  std::mt19937_64 rng(77);
  for (auto [p, c, max_j] : {std::tuple{2u, 1u, 5u}, {3u, 1u, 3u}, {2u, 2u, 3u}}) {
    const auto t = make_field_table(p, c);
    for (const FilterBank& bank : {canonical_bank(t), random_biorthogonal(t, 99)}) {
      for (unsigned j = 0; j <= max_j; ++j) {
        for (unsigned m = 0; m <= j; ++m) {
          const unsigned max_r = m == 0 ? 0 : j - m;
          for (unsigned r = 0; r <= max_r; ++r) {
            const PacketDepth depth = PacketDepth::uniform_depth(r);
            if (!support_fits(bank, j, m, depth)) continue;
            for (bool normalized : {false, true}) {
              const Signal s = make_signal(t, j, random_block(rng, pow_q(t->params(), j)));
              const Decomposition dec = decompose(bank, s, m, depth, normalized);
              REQUIRE(coefficient_count(dec) == s.coeffs.size());
              REQUIRE(max_diff(reconstruct(bank, dec).coeffs, s.coeffs) <= 1e-10);
            }
          }
        }
        if (j >= 1 && support_fits(bank, j, j, PacketDepth::full_depth())) {
          const Signal s = make_signal(t, j, random_block(rng, pow_q(t->params(), j)));
          const Decomposition dec = decompose(bank, s, j, PacketDepth::full_depth());
          REQUIRE(max_diff(reconstruct(bank, dec).coeffs, s.coeffs) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("feasibility") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 2, Block(4));
  CHECK(decomposition_feasible(2, 1, PacketDepth::uniform_depth(1)));
  CHECK_FALSE(decomposition_feasible(2, 1, PacketDepth::uniform_depth(2)));
  CHECK_FALSE(decomposition_feasible(2, 0, PacketDepth::uniform_depth(1)));
  CHECK_FALSE(decomposition_feasible(2, 3, PacketDepth::uniform_depth(0)));
  CHECK(decomposition_feasible(2, 2, PacketDepth::full_depth()));
  try {
    decompose(bank, s, 3, PacketDepth::uniform_depth(0));
    FAIL("M > J accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeViolation);
  }
  CHECK_THROWS_AS(decompose(bank, s, 1, PacketDepth::uniform_depth(2)), Error);
  CHECK_THROWS_AS(make_signal(bank.table(), 2, Block(3)), Error);

  // A length-4 filter cannot act on a length-2 block.
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Taps> rows{{0, 0, r, r}, {0, 0, r, -r}};
  const FilterBank wide(bank.table(), rows, rows);
  CHECK(support_fits(wide, 2, 1, PacketDepth::uniform_depth(0)));
  CHECK_FALSE(support_fits(wide, 2, 2, PacketDepth::uniform_depth(0)));
  CHECK_THROWS_AS(decompose(wide, s, 2, PacketDepth::uniform_depth(0)), Error);
}

TEST_CASE("malformed node grids are rejected") {
  const FilterBank bank = haar();
  std::mt19937_64 rng(2);
  const Signal s = make_signal(bank.table(), 3, random_block(rng, 8));
  const Decomposition good = decompose(bank, s, 2, PacketDepth::uniform_depth(1));
  CHECK_NOTHROW(check_node_grid(good));

  Decomposition missing = good;
  missing.nodes.erase(missing.nodes.begin());
  CHECK_THROWS_AS(reconstruct(bank, missing), Error);

  Decomposition wrong_len = good;
  wrong_len.nodes.begin()->second.push_back(0.0);
  CHECK_THROWS_AS(reconstruct(bank, wrong_len), Error);

  Decomposition extra = good;
  extra.nodes[{0, 99}] = Block{1.0};
  CHECK_THROWS_AS(reconstruct(bank, extra), Error);

  Decomposition short_low = good;
  short_low.lowpass.clear();
  CHECK_THROWS_AS(reconstruct(bank, short_low), Error);
}

TEST_CASE("full-depth canonical transform equals the character transform") {
  std::mt19937_64 rng(4);
  for (auto [p, c, max_j] : {std::tuple{2u, 1u, 8u}, {3u, 1u, 5u}, {2u, 2u, 4u}, {5u, 1u, 3u}}) {
    const auto t = make_field_table(p, c);
    const FilterBank bank = canonical_bank(t);
    for (unsigned j = 1; j <= max_j; ++j) {
      const Index count = pow_q(t->params(), j);
      const Signal s = make_signal(t, j, random_block(rng, count));
      const Block spectrum = packet_spectrum(decompose(bank, s, j, PacketDepth::full_depth()));
      Block expected;
      if (p == 2 && c == 1) {
        expected.assign(count, 0.0);
        for (Index n = 0; n < count; ++n) {
          for (Index x = 0; x < count; ++x) {
            expected[n] += oracle::walsh(n, x) * s.coeffs[oracle::reverse_digits(2, x, j)];
          }
        }
      } else {
        expected = oracle::character_transform(p, c, j, s.coeffs);
      }
      for (auto& v : expected) v /= static_cast<double>(count);
      CAPTURE(count);
      REQUIRE(max_diff(spectrum, expected) <= 1e-12);
    }
  }
}

TEST_CASE("spectrum needs the full character decomposition") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 2, Block(4));
  CHECK_THROWS_AS(packet_spectrum(decompose(bank, s, 2, PacketDepth::uniform_depth(0))), Error);
}

TEST_CASE("theta sets") {
  CHECK(theta_set(2, 2) == IndexRange{4, 8});
  CHECK(theta_set(2, 0) == IndexRange{1, 2});
  CHECK(theta_set(3, 0) == IndexRange{1, 3});
  for (unsigned q : {2u, 3u, 4u}) {
    for (unsigned ell = 0; ell <= 5; ++ell) {
      const IndexRange r = theta_set(q, ell);
      CHECK(r.size() == (q - 1) * oracle::ipow(q, ell));
      const Index bound = oracle::ipow(q, ell + 2);
      const auto now = oracle::theta_tilde(q, static_cast<int>(ell), bound);
      const auto before = oracle::theta_tilde(q, static_cast<int>(ell) - 1, bound);
      for (Index n = 0; n < bound; ++n) REQUIRE(r.contains(n) == (now[n] && !before[n]));
    }
  }
}

TEST_CASE("weighted energy of the Haar impulse") {
  const FilterBank bank = haar();
  const Signal s = make_signal(bank.table(), 1, {1.0, 0.0});
  CHECK(weighted_energy(s) == doctest::Approx(0.5));
  const Decomposition dec = decompose(bank, s, 1, PacketDepth::uniform_depth(0));
  CHECK(weighted_energy(dec) == doctest::Approx(0.5));
}

TEST_CASE("orthonormal banks preserve weighted energy") {
  std::mt19937_64 rng(8);
  for (auto [p, c] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    const auto t = make_field_table(p, c);
    const FilterBank bank = canonical_bank(t);
    for (unsigned j = 1; j <= 3; ++j) {
      const Signal s = make_signal(t, j, random_block(rng, pow_q(t->params(), j)));
      for (unsigned m = 1; m <= j; ++m) {
        for (bool normalized : {false, true}) {
          const Decomposition dec =
              decompose(bank, s, m, PacketDepth::uniform_depth(j - m), normalized);
          const double before = weighted_energy(s, normalized);
          CHECK(std::abs(weighted_energy(dec) - before) / before <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("normalized coefficients are a per-level rescaling of raw ones") {
  const FilterBank bank = haar();
  const FieldParams& f = bank.field().params();
  std::mt19937_64 rng(6);
  // In the normalized convention the signal itself carries the q^{-J/2} factor.
  const Signal unit_signal = make_signal(bank.table(), 3, random_block(rng, 8));
  const Signal raw_signal =
      make_signal(bank.table(), 3, rescale_block(f, unit_signal.coeffs, 3, false));
  const Decomposition raw = decompose(bank, raw_signal, 2, PacketDepth::uniform_depth(1), false);
  const Decomposition unit = decompose(bank, unit_signal, 2, PacketDepth::uniform_depth(1), true);
  CHECK(max_diff(unit.lowpass, rescale_block(f, raw.lowpass, 1, true)) < 1e-14);
  for (const auto& [key, block] : raw.nodes) {
    CHECK(max_diff(unit.nodes.at(key), rescale_block(f, block, raw.node_level(key), true)) < 1e-14);
  }
  double plain = 0.0;
  for (auto v : unit_signal.coeffs) plain += std::norm(v);
  CHECK(weighted_energy(unit_signal, true) == doctest::Approx(plain));
  CHECK(weighted_energy(unit) == doctest::Approx(plain));
  CHECK(weighted_energy(raw) == doctest::Approx(plain));
  CHECK(max_diff(reconstruct(bank, unit).coeffs, unit_signal.coeffs) < 1e-14);
}
