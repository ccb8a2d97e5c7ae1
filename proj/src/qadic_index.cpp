#include "lfwp/qadic_index.hpp"

#include <limits>
#include <string>

#include "lfwp/error.hpp"

namespace lfwp {

namespace {

constexpr unsigned kMaxDegree = 4;
constexpr unsigned kMaxQ = 1u << 16;

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NotPrime: return "not prime";
    case ErrorKind::ReducibleModulus: return "reducible modulus";
    case ErrorKind::FieldMismatch: return "field mismatch";
    case ErrorKind::MalformedFile: return "malformed file";
    case ErrorKind::RowCount: return "row count";
    case ErrorKind::SizeViolation: return "size violation";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::LimitExceeded: return "limit exceeded";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldParams::FieldParams(unsigned p, unsigned c) : p_(p), c_(c), q_(1) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, "p = " + std::to_string(p) + " is not prime");
  }
  if (c < 1 || c > kMaxDegree) {
    throw Error(ErrorKind::InvalidArgument,
                "degree c = " + std::to_string(c) + " outside [1, 4]");
  }
  std::uint64_t q = 1;
  for (unsigned i = 0; i < c; ++i) {
    q *= p;
    if (q > kMaxQ) {
      throw Error(ErrorKind::InvalidArgument,
                  "q = p^c exceeds " + std::to_string(kMaxQ));
    }
  }
  q_ = static_cast<unsigned>(q);
}

Index gadd(const FieldParams& f, Index m, Index n) noexcept {
  const Index p = f.p();
  if (p == 2) return m ^ n;
  Index out = 0;
  Index place = 1;
  while (m != 0 || n != 0) {
    out += ((m % p + n % p) % p) * place;
    m /= p;
    n /= p;
    place *= p;
  }
  return out;
}

Index gneg(const FieldParams& f, Index n) noexcept {
  const Index p = f.p();
  if (p == 2) return n;
  Index out = 0;
  Index place = 1;
  while (n != 0) {
    out += ((p - n % p) % p) * place;
    n /= p;
    place *= p;
  }
  return out;
}

Index gsub(const FieldParams& f, Index m, Index n) noexcept {
  const Index p = f.p();
  if (p == 2) return m ^ n;
  Index out = 0;
  Index place = 1;
  while (m != 0 || n != 0) {
    out += ((m % p + p - n % p) % p) * place;
    m /= p;
    n /= p;
    place *= p;
  }
  return out;
}

Index pow_q(const FieldParams& f, unsigned k) {
  Index out = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (out > std::numeric_limits<Index>::max() / f.q()) {
      throw Error(ErrorKind::Overflow,
                  "q^" + std::to_string(k) + " overflows the index range");
    }
    out *= f.q();
  }
  return out;
}

Index scale_q(const FieldParams& f, Index n, unsigned k) {
  if (n == 0) return 0;
  const Index factor = pow_q(f, k);
  if (n > std::numeric_limits<Index>::max() / factor) {
    throw Error(ErrorKind::Overflow, "index scaling overflows the index range");
  }
  return n * factor;
}

std::vector<unsigned> digits_q(const FieldParams& f, Index n) {
  std::vector<unsigned> out;
  while (n != 0) {
    out.push_back(static_cast<unsigned>(n % f.q()));
    n /= f.q();
  }
  return out;
}

Index from_digits_q(const FieldParams& f, std::span<const unsigned> digits) {
  Index out = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (*it >= f.q()) {
      throw Error(ErrorKind::InvalidArgument, "digit out of range [0, q)");
    }
    if (out > (std::numeric_limits<Index>::max() - *it) / f.q()) {
      throw Error(ErrorKind::Overflow, "digit sequence overflows the index range");
    }
    out = out * f.q() + *it;
  }
  return out;
}

unsigned level(const FieldParams& f, Index n) noexcept {
  unsigned j = 0;
  while (n != 0) {
    n /= f.q();
    ++j;
  }
  return j;
}

Index reverse_digits_q(const FieldParams& f, Index n, unsigned width) {
  Index out = 0;
  for (unsigned i = 0; i < width; ++i) {
    out = out * f.q() + n % f.q();
    n /= f.q();
  }
  if (n != 0) {
    throw Error(ErrorKind::InvalidArgument, "index has more digits than the width");
  }
  return out;
}

}  // namespace lfwp
