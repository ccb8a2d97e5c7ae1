#include "lfwp/file_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lfwp/error.hpp"

namespace lfwp {

namespace {

using nlohmann::json;

constexpr const char* kFilterFormat = "lfwp-filter-bank";
constexpr const char* kSignalFormat = "lfwp-signal";
constexpr const char* kDecompositionFormat = "lfwp-decomposition";
constexpr const char* kPacketFormat = "lfwp-packet";

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedFile, what);
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    malformed(std::string("unparseable file: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) malformed("top level is not an object");
  const auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

unsigned get_unsigned(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_unsigned()) {
    malformed(std::string("field '") + key + "' is not a non-negative integer");
  }
  return v.get<unsigned>();
}

Index get_index(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_unsigned()) {
    malformed(std::string("field '") + key + "' is not a non-negative integer");
  }
  return v.get<Index>();
}

bool get_bool(const json& doc, const char* key, bool fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_boolean()) malformed(std::string("field '") + key + "' is not a boolean");
  return it->get<bool>();
}

void check_format(const json& doc, const char* expected) {
  if (!doc.is_object()) malformed("top level is not an object");
  const auto it = doc.find("format");
  if (it != doc.end() && (!it->is_string() || it->get<std::string>() != expected)) {
    malformed(std::string("expected format '") + expected + "'");
  }
}

json complex_array(std::span<const Complex> values) {
  json out = json::array();
  for (const Complex& v : values) out.push_back(json::array({v.real(), v.imag()}));
  return out;
}

Block read_complex_array(const json& v, const char* what) {
  if (!v.is_array()) malformed(std::string(what) + " is not an array");
  Block out;
  out.reserve(v.size());
  for (const json& pair : v) {
    if (pair.is_number()) {
      out.emplace_back(pair.get<double>(), 0.0);
      continue;
    }
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      malformed(std::string(what) + " entries must be numbers or [re, im] pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

void write_header(json& doc, const FieldTable& table) {
  doc["p"] = table.p();
  doc["c"] = table.c();
  doc["modulus"] = table.modulus();
}

FieldTablePtr read_header(const json& doc) {
  const unsigned p = get_unsigned(doc, "p");
  const unsigned c = get_unsigned(doc, "c");
  std::vector<unsigned> modulus;
  const auto it = doc.find("modulus");
  if (it != doc.end() && !it->is_null()) {
    if (!it->is_array()) malformed("modulus is not an array");
    for (const json& a : *it) {
      if (!a.is_number_unsigned()) malformed("modulus entries must be non-negative integers");
      modulus.push_back(a.get<unsigned>());
    }
  }
  if (c > 1 && modulus.empty()) malformed("modulus required when c > 1");
  // Throws NotPrime / ReducibleModulus / InvalidArgument as appropriate.
  return make_field_table(p, c, modulus);
}

std::vector<Taps> read_family(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_array()) malformed(std::string(key) + " is not an array of tap rows");
  std::vector<Taps> rows;
  for (const json& row : v) rows.push_back(read_complex_array(row, key));
  return rows;
}

}  // namespace

std::string serialize(const FilterBank& bank) {
  json doc;
  doc["format"] = kFilterFormat;
  write_header(doc, bank.field());
  for (const char* key : {"analysis", "dual"}) {
    const auto& rows = std::string(key) == "analysis" ? bank.analysis() : bank.dual();
    json family = json::array();
    for (const Taps& row : rows) family.push_back(complex_array(row));
    doc[key] = std::move(family);
  }
  return doc.dump(2) + "\n";
}

FilterBank deserialize_filter_bank(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kFilterFormat);
  FieldTablePtr table = read_header(doc);
  auto analysis = read_family(doc, "analysis");
  auto dual = read_family(doc, "dual");
  return FilterBank(std::move(table), std::move(analysis), std::move(dual));
}

std::string serialize(const Signal& signal, bool normalized) {
  json doc;
  doc["format"] = kSignalFormat;
  write_header(doc, *signal.table);
  doc["level"] = signal.level;
  doc["normalized"] = normalized;
  doc["coeffs"] = complex_array(signal.coeffs);
  return doc.dump(2) + "\n";
}

std::pair<Signal, bool> deserialize_signal(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kSignalFormat);
  FieldTablePtr table = read_header(doc);
  Block coeffs = read_complex_array(field(doc, "coeffs"), "coeffs");
  const bool normalized = get_bool(doc, "normalized", false);
  unsigned lvl = 0;
  if (doc.contains("level")) {
    lvl = get_unsigned(doc, "level");
  } else {
    // Infer from the length; make_signal rejects non-powers of q.
    Index n = 1;
    while (n < coeffs.size()) {
      n *= table->q();
      ++lvl;
    }
  }
  return {make_signal(std::move(table), lvl, std::move(coeffs)), normalized};
}

std::string serialize(const Decomposition& dec) {
  json doc;
  doc["format"] = kDecompositionFormat;
  write_header(doc, *dec.table);
  doc["root_level"] = dec.root_level;
  doc["mra_depth"] = dec.mra_depth;
  if (dec.packet_depth.full) {
    doc["packet_depth"] = "full";
  } else {
    doc["packet_depth"] = dec.packet_depth.uniform;
  }
  doc["normalized"] = dec.normalized;
  doc["lowpass"] = complex_array(dec.lowpass);
  json nodes = json::array();
  for (const auto& [key, block] : dec.nodes) {
    nodes.push_back({{"scale", key.scale}, {"packet", key.packet}, {"coeffs", complex_array(block)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

Decomposition deserialize_decomposition(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kDecompositionFormat);
  Decomposition dec;
  dec.table = read_header(doc);
  dec.root_level = get_unsigned(doc, "root_level");
  dec.mra_depth = get_unsigned(doc, "mra_depth");
  const json& depth = field(doc, "packet_depth");
  if (depth.is_string() && depth.get<std::string>() == "full") {
    dec.packet_depth = PacketDepth::full_depth();
  } else if (depth.is_number_unsigned()) {
    dec.packet_depth = PacketDepth::uniform_depth(depth.get<unsigned>());
  } else {
    malformed("packet_depth must be a non-negative integer or \"full\"");
  }
  dec.normalized = get_bool(doc, "normalized", false);
  dec.lowpass = read_complex_array(field(doc, "lowpass"), "lowpass");
  const json& nodes = field(doc, "nodes");
  if (!nodes.is_array()) malformed("nodes is not an array");
  for (const json& node : nodes) {
    const NodeKey key{get_unsigned(node, "scale"), get_index(node, "packet")};
    if (dec.nodes.contains(key)) malformed("duplicate node in node list");
    dec.nodes[key] = read_complex_array(field(node, "coeffs"), "node coeffs");
  }
  return dec;
}

std::string serialize(const FieldTable& table, const PacketVector& packet,
                      const std::optional<std::vector<Complex>>& samples) {
  json doc;
  doc["format"] = kPacketFormat;
  write_header(doc, table);
  doc["n"] = packet.n;
  doc["depth"] = packet.depth;
  doc["side"] = packet.side == Side::Primal ? "primal" : "dual";
  doc["coeffs"] = complex_array(packet.coeffs);
  if (samples) doc["samples"] = complex_array(*samples);
  return doc.dump(2) + "\n";
}

PacketVector deserialize_packet(std::string_view text) {
  const json doc = parse(text);
  check_format(doc, kPacketFormat);
  PacketVector out;
  out.n = get_index(doc, "n");
  out.depth = get_unsigned(doc, "depth");
  const json& side = field(doc, "side");
  if (side == "primal") {
    out.side = Side::Primal;
  } else if (side == "dual") {
    out.side = Side::Dual;
  } else {
    malformed("side must be \"primal\" or \"dual\"");
  }
  out.coeffs = read_complex_array(field(doc, "coeffs"), "coeffs");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedFile, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write to '" + path + "' failed");
}

}  // namespace lfwp
