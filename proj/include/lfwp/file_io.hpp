#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lfwp/packets.hpp"
#include "lfwp/transform.hpp"

namespace lfwp {

// Structured-text (JSON) artifacts. Every file carries the field header
// p, c, modulus (empty for c = 1); complex numbers are [re, im] pairs written
// with round-trip precision.
//
// Readers throw Error(MalformedFile) for syntax and schema problems,
// Error(NotPrime) for a composite p, Error(ReducibleModulus) for a bad
// modulus and Error(RowCount) for a tap family without exactly q rows.

std::string serialize(const FilterBank& bank);
FilterBank deserialize_filter_bank(std::string_view text);

std::string serialize(const Signal& signal, bool normalized = false);
/// Returns the signal and its normalization flag.
std::pair<Signal, bool> deserialize_signal(std::string_view text);

std::string serialize(const Decomposition& dec);
Decomposition deserialize_decomposition(std::string_view text);

/// Packet table; `samples` is included when given.
std::string serialize(const FieldTable& table, const PacketVector& packet,
                      const std::optional<std::vector<Complex>>& samples = std::nullopt);
PacketVector deserialize_packet(std::string_view text);

/// Throws Error(MalformedFile) when the file cannot be read.
std::string read_text_file(const std::string& path);
/// Throws Error(InvalidArgument) when the file cannot be written.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace lfwp
