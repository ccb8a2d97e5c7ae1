#pragma once

#include <stdexcept>
#include <string>

namespace lfwp {

// Categories of failure surfaced by the library. The CLI maps these onto
// exit codes; tests match on them to tell distinct rejections apart.
enum class ErrorKind {
  InvalidArgument,   // out-of-range band, digit, depth, ...
  NotPrime,          // p failed trial division
  ReducibleModulus,  // GF(q) modulus not monic/irreducible
  FieldMismatch,     // operands built over different tables
  MalformedFile,     // unreadable or schema-violating input file
  RowCount,          // filter file with tap-row count != q
  SizeViolation,     // signal length / depth / filter support does not fit
  Overflow,          // index arithmetic left the machine word
  LimitExceeded,     // internal bound hit (e.g. rejection sampling)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace lfwp
