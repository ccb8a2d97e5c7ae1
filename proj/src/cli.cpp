#include "lfwp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "lfwp/certify.hpp"
#include "lfwp/error.hpp"
#include "lfwp/file_io.hpp"
#include "lfwp/packets.hpp"

namespace lfwp::cli {

namespace {

constexpr double kDefaultTol = 1e-10;

struct GenArgs {
  std::string type;
  unsigned p = 0;
  unsigned c = 1;
  std::vector<unsigned> modulus;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_condition;
  std::string out;
};

struct ValidateArgs {
  std::string filters;
  double tol = kDefaultTol;
};

struct DecomposeArgs {
  std::string filters;
  std::string signal;
  unsigned mra_levels = 0;
  std::string packet_depth = "0";
  bool normalized = false;
  std::string out;
};

struct ReconstructArgs {
  std::string filters;
  std::string coeffs;
  std::string out;
  std::string expect;
  double tol = kDefaultTol;
};

struct PacketArgs {
  std::string filters;
  Index n = 0;
  unsigned depth = 0;
  bool samples = false;
  std::string side = "primal";
  std::string out;
};

struct ThetaArgs {
  unsigned q = 2;
  unsigned ell = 0;
};

struct CertifyArgs {
  std::string filters;
  CertifyOptions options;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fmt(Complex v) {
  std::ostringstream s;
  s << std::setprecision(17) << v.real();
  if (v.imag() != 0.0) s << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i";
  return s.str();
}

FilterBank load_bank(const std::string& path) {
  return deserialize_filter_bank(read_text_file(path));
}

PacketDepth parse_depth(const std::string& text) {
  if (text == "full") return PacketDepth::full_depth();
  try {
    std::size_t used = 0;
    const long v = std::stol(text, &used);
    if (used == text.size() && v >= 0) return PacketDepth::uniform_depth(static_cast<unsigned>(v));
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidArgument,
              "--packet-depth must be a non-negative integer or 'full'");
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
  std::optional<std::vector<unsigned>> modulus;
  if (!a.modulus.empty()) modulus = a.modulus;
  const FieldTablePtr table = make_field_table(a.p, a.c, modulus);
  std::optional<FilterBank> bank;
  if (a.type == "canonical") {
    bank = canonical_bank(table);
  } else {
    if (!a.seed) throw Error(ErrorKind::InvalidArgument, "--seed is required for random banks");
    bank = random_biorthogonal(table, *a.seed, a.max_condition);
  }
  write_text_file(a.out, serialize(*bank));
  out << "wrote " << a.type << " bank (p=" << table->p() << ", c=" << table->c()
      << ", q=" << table->q() << ") to " << a.out << "\n";
  return kSuccess;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const FilterBank bank = load_bank(a.filters);
  const ValidationReport r = validate(bank, a.tol);
  out << "q                      " << bank.q() << "\n"
      << "support                " << bank.support() << "\n"
      << "max_freq_deviation     " << fmt(r.max_freq_deviation) << "\n"
      << "max_time_deviation     " << fmt(r.max_time_deviation) << "\n"
      << "lowpass_normalized     " << (r.lowpass_normalized ? "yes" : "no") << "\n"
      << "modulation_unitarity   " << fmt(modulation_unitarity_deviation(bank, Side::Primal))
      << "\n";
  if (!r.lowpass_normalized) out << "warning: m_0(0) != 1 or dual m_0(0) != 1\n";
  out << (r.passed ? "PASS" : "FAIL") << " (tol " << fmt(a.tol) << ")\n";
  return r.passed ? kSuccess : kCheckFailed;
}

int cmd_decompose(const DecomposeArgs& a, std::ostream& out) {
  const FilterBank bank = load_bank(a.filters);
  auto [signal, file_normalized] = deserialize_signal(read_text_file(a.signal));
  const bool normalized = a.normalized || file_normalized;
  const PacketDepth depth = parse_depth(a.packet_depth);
  const Decomposition dec = decompose(bank, signal, a.mra_levels, depth, normalized);
  write_text_file(a.out, serialize(dec));
  out << "nodes                  " << dec.nodes.size() << "\n"
      << "coefficients           " << coefficient_count(dec) << "\n"
      << "energy_before          " << fmt(weighted_energy(signal, normalized)) << "\n"
      << "energy_after           " << fmt(weighted_energy(dec)) << "\n";
  return kSuccess;
}

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  const FilterBank bank = load_bank(a.filters);
  const Decomposition dec = deserialize_decomposition(read_text_file(a.coeffs));
  const Signal signal = reconstruct(bank, dec);
  write_text_file(a.out, serialize(signal, dec.normalized));
  out << "level                  " << signal.level << "\n";
  if (a.expect.empty()) return kSuccess;

  const auto [expected, expected_normalized] = deserialize_signal(read_text_file(a.expect));
  if (expected.coeffs.size() != signal.coeffs.size()) {
    throw Error(ErrorKind::SizeViolation, "--expect signal has a different length");
  }
  Block reference = expected.coeffs;
  if (expected_normalized != dec.normalized) {
    reference = rescale_block(bank.field().params(), reference, expected.level,
                              dec.normalized);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    worst = std::max(worst, std::abs(reference[i] - signal.coeffs[i]));
  }
  out << "max_deviation          " << fmt(worst) << "\n";
  const bool ok = worst <= a.tol;
  out << (ok ? "PASS" : "FAIL") << " (tol " << fmt(a.tol) << ")\n";
  return ok ? kSuccess : kCheckFailed;
}

int cmd_packet(const PacketArgs& a, std::ostream& out) {
  const FilterBank bank = load_bank(a.filters);
  if (a.side != "primal" && a.side != "dual") {
    throw Error(ErrorKind::InvalidArgument, "--side must be primal or dual");
  }
  const Side side = a.side == "primal" ? Side::Primal : Side::Dual;
  const PacketVector packet = packet_coeffs(bank, a.n, a.depth, side);
  std::optional<std::vector<Complex>> samples;
  if (a.samples) {
    if (side != Side::Primal) {
      throw Error(ErrorKind::InvalidArgument, "samples are tabulated for the primal side");
    }
    samples = packet_samples(bank, a.n, a.depth);
  }
  if (!a.out.empty()) write_text_file(a.out, serialize(bank.field(), packet, samples));
  out << "packet " << a.n << " depth " << a.depth << " (" << a.side << ")\n";
  for (std::size_t t = 0; t < packet.coeffs.size(); ++t) {
    out << "  h[" << t << "] = " << fmt(packet.coeffs[t]) << "\n";
  }
  if (samples) {
    out << "samples\n";
    for (std::size_t j = 0; j < samples->size(); ++j) {
      out << "  x[" << j << "] = " << fmt((*samples)[j]) << "\n";
    }
  }
  return kSuccess;
}

int cmd_theta(const ThetaArgs& a, std::ostream& out) {
  const IndexRange r = theta_set(a.q, a.ell);
  out << r.first << ".." << (r.last - 1) << " (size " << r.size() << ")\n";
  return kSuccess;
}

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  const FilterBank bank = load_bank(a.filters);
  const CertifyReport report = certify(bank, a.options);
  for (const PropertyResult& p : report.properties) {
    out << std::left << std::setw(34) << p.name;
    if (!p.applicable) {
      out << "n/a";
    } else {
      out << std::setw(26) << fmt(p.deviation) << (p.passed ? "ok" : "FAIL");
    }
    if (!p.note.empty()) out << "  (" << p.note << ")";
    out << "\n";
  }
  const bool ok = report.passed();
  out << (ok ? "PASS" : "FAIL") << " (tol " << fmt(a.options.tol) << ")\n";
  return ok ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biorthogonal wavelet packets on local fields of positive characteristic"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a filter bank file");
  gen_cmd->add_option("--type", gen.type, "canonical or random")
      ->required()
      ->check(CLI::IsMember({"canonical", "random"}));
  gen_cmd->add_option("--p", gen.p, "Characteristic p (prime)")->required();
  gen_cmd->add_option("--c", gen.c, "Degree c, q = p^c")->capture_default_str();
  gen_cmd->add_option("--modulus", gen.modulus, "GF(q) modulus, c+1 coefficients low to high");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random banks");
  gen_cmd->add_option("--max-condition", gen.max_condition,
                      "Largest accepted cond(G) for random banks (default clamp(2.5q, 10, 100))");
  gen_cmd->add_option("--out", gen.out, "Output filter file")->required();

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Check the biorthogonality conditions");
  val_cmd->add_option("filters,--filters", val.filters, "Filter file")->required();
  val_cmd->add_option("--tol", val.tol)->capture_default_str();

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Decompose a signal file");
  dec_cmd->add_option("--filters", dec.filters)->required();
  dec_cmd->add_option("--signal", dec.signal)->required();
  dec_cmd->add_option("--mra-levels", dec.mra_levels, "MRA depth M")->required();
  dec_cmd->add_option("--packet-depth", dec.packet_depth, "Packet depth r, or 'full'")
      ->capture_default_str();
  dec_cmd->add_flag("--normalized", dec.normalized, "Unit-norm coefficient convention");
  dec_cmd->add_option("--out", dec.out)->required();

  ReconstructArgs rec;
  auto* rec_cmd = app.add_subcommand("reconstruct", "Reconstruct a signal from a decomposition");
  rec_cmd->add_option("--filters", rec.filters)->required();
  rec_cmd->add_option("--coeffs", rec.coeffs, "Decomposition file")->required();
  rec_cmd->add_option("--out", rec.out)->required();
  rec_cmd->add_option("--expect", rec.expect, "Original signal file to compare against");
  rec_cmd->add_option("--tol", rec.tol)->capture_default_str();

  PacketArgs pkt;
  auto* pkt_cmd = app.add_subcommand("packet", "Tabulate a packet function");
  pkt_cmd->add_option("--filters", pkt.filters)->required();
  pkt_cmd->add_option("--n", pkt.n, "Packet index")->required();
  pkt_cmd->add_option("--depth", pkt.depth, "Depth J >= level(n)")->required();
  pkt_cmd->add_flag("--samples", pkt.samples, "Also tabulate values on 𝔇 (canonical bank)");
  pkt_cmd->add_option("--side", pkt.side, "primal or dual")->capture_default_str();
  pkt_cmd->add_option("--out", pkt.out);

  ThetaArgs theta;
  auto* theta_cmd = app.add_subcommand("theta", "Print the packet index block ϑ_ℓ");
  theta_cmd->add_option("--q", theta.q)->required();
  theta_cmd->add_option("--ell", theta.ell)->required();

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "Run the property suite on a bank");
  cert_cmd->add_option("--filters", cert.filters)->required();
  cert_cmd->add_option("--trials", cert.options.trials)->capture_default_str();
  cert_cmd->add_option("--max-level", cert.options.max_level)->capture_default_str();
  cert_cmd->add_option("--seed", cert.options.seed)->capture_default_str();
  cert_cmd->add_option("--tol", cert.options.tol)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*val_cmd) return cmd_validate(val, out);
    if (*dec_cmd) return cmd_decompose(dec, out);
    if (*rec_cmd) return cmd_reconstruct(rec, out);
    if (*pkt_cmd) return cmd_packet(pkt, out);
    if (*theta_cmd) return cmd_theta(theta, out);
    if (*cert_cmd) return cmd_certify(cert, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::LimitExceeded:
      case ErrorKind::Overflow:
        return kInternalLimit;
      default:
        return kBadInput;
    }
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalLimit;
  }
  return kBadInput;
}

}  // namespace lfwp::cli
