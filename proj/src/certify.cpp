#include "lfwp/certify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lfwp/error.hpp"
#include "lfwp/packets.hpp"

namespace lfwp {

namespace {

constexpr Index kMaxCharacterSize = 256;

Block random_block(std::mt19937_64& rng, Index length) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Block out(length);
  for (Complex& v : out) {
    const double re = uniform(rng);
    const double im = uniform(rng);
    v = Complex(re, im);
  }
  return out;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

bool same_taps(const FilterBank& bank) {
  for (unsigned s = 0; s < bank.q(); ++s) {
    if (bank.analysis()[s] != bank.dual()[s]) return false;
  }
  return true;
}

PropertyResult named(std::string name, double deviation = 0.0) {
  PropertyResult r;
  r.name = std::move(name);
  r.deviation = deviation;
  return r;
}

PropertyResult finish(PropertyResult r, double tol) {
  r.passed = !r.applicable || r.deviation <= tol;
  return r;
}

}  // namespace

Block character_transform(const Signal& signal) {
  const FieldTablePtr& table = signal.table;
  const FieldParams& f = table->params();
  const Index count = pow_q(f, signal.level);
  std::vector<FieldElement> points;
  points.reserve(count);
  for (Index j = 0; j < count; ++j) points.push_back(sample_point(table, j, signal.level));
  Block out(count);
  for (Index n = 0; n < count; ++n) {
    Complex acc{};
    for (Index j = 0; j < count; ++j) {
      acc += chi_n(n, points[j]) * signal.coeffs[reverse_digits_q(f, j, signal.level)];
    }
    out[n] = acc;
  }
  return out;
}

CertifyReport certify(const FilterBank& bank, const CertifyOptions& options) {
  const FieldParams& f = bank.field().params();
  const unsigned q = bank.q();
  const double tol = options.tol;
  std::mt19937_64 rng(options.seed);
  CertifyReport report;

  {
    const ValidationReport v = validate(bank, tol);
    PropertyResult r = named("bank biorthogonality (frequency)", v.max_freq_deviation);
    report.properties.push_back(finish(r, tol));
    r = named("bank biorthogonality (time)", v.max_time_deviation);
    report.properties.push_back(finish(r, tol));
  }

  {
    const Index count = static_cast<Index>(q) * q;
    const unsigned depth = default_depth(f, count - 1, count - 1);
    const auto check = packet_biorthogonality(bank, count, q, depth);
    PropertyResult r = named("packet biorthogonality", check.max_deviation);
    r.note = "worst at n=" + std::to_string(check.worst_n) + " m=" +
             std::to_string(check.worst_m) + " k=" + std::to_string(check.worst_k);
    report.properties.push_back(finish(r, tol));
  }

  {
    PropertyResult r = named("node split round-trip");
    bool any = false;
    for (unsigned lvl = 1; lvl <= options.max_level; ++lvl) {
      const Index length = pow_q(f, lvl);
      if (bank.support() > length) continue;
      for (unsigned t = 0; t < options.trials; ++t) {
        const Block node = random_block(rng, length);
        r.deviation = std::max(r.deviation, node_split_roundtrip(bank, node));
        any = true;
      }
    }
    r.applicable = any;
    if (!any) r.note = "support exceeds every tested block";
    report.properties.push_back(finish(r, tol));
  }

  {
    PropertyResult r = named("perfect reconstruction");
    std::size_t configs = 0;
    for (unsigned lvl = 0; lvl <= options.max_level; ++lvl) {
      for (unsigned m = 0; m <= lvl; ++m) {
        const unsigned max_r = m == 0 ? 0 : lvl - m;
        for (unsigned depth = 0; depth <= max_r; ++depth) {
          const PacketDepth pd = PacketDepth::uniform_depth(depth);
          if (!support_fits(bank, lvl, m, pd)) continue;
          for (unsigned t = 0; t < options.trials; ++t) {
            const Signal s = make_signal(bank.table(), lvl, random_block(rng, pow_q(f, lvl)));
            const Decomposition dec = decompose(bank, s, m, pd);
            if (coefficient_count(dec) != s.coeffs.size()) {
              r.deviation = std::max(r.deviation, 1.0);
              r.note = "critical sampling violated";
            }
            r.deviation = std::max(r.deviation,
                                   max_abs_diff(reconstruct(bank, dec).coeffs, s.coeffs));
          }
          ++configs;
        }
      }
    }
    if (r.note.empty()) r.note = std::to_string(configs) + " (J, M, r) configurations";
    report.properties.push_back(finish(r, tol));
  }

  {
    PropertyResult r = named("character transform equivalence");
    r.applicable = is_canonical(bank);
    if (r.applicable) {
      for (unsigned lvl = 1; lvl <= options.max_level; ++lvl) {
        const Index count = pow_q(f, lvl);
        if (count > kMaxCharacterSize) break;
        const Signal s = make_signal(bank.table(), lvl, random_block(rng, count));
        const Block spectrum =
            packet_spectrum(decompose(bank, s, lvl, PacketDepth::full_depth()));
        Block expected = character_transform(s);
        const double scale = 1.0 / static_cast<double>(count);
        for (Complex& v : expected) v *= scale;
        r.deviation = std::max(r.deviation, max_abs_diff(spectrum, expected));
      }
    } else {
      r.note = "canonical bank only";
    }
    report.properties.push_back(finish(r, tol));
  }

  {
    PropertyResult r = named("weighted Parseval");
    r.applicable = same_taps(bank);
    if (r.applicable) {
      for (unsigned lvl = 1; lvl <= options.max_level; ++lvl) {
        if (!support_fits(bank, lvl, lvl, PacketDepth::uniform_depth(0))) continue;
        const Signal s = make_signal(bank.table(), lvl, random_block(rng, pow_q(f, lvl)));
        const double before = weighted_energy(s);
        const double after = weighted_energy(decompose(bank, s, lvl, PacketDepth::uniform_depth(0)));
        r.deviation = std::max(r.deviation, std::abs(after - before) / before);
      }
    } else {
      r.note = "dual differs from primal";
    }
    report.properties.push_back(finish(r, tol));
  }

  return report;
}

}  // namespace lfwp
