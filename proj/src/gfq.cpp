#include "lfwp/gfq.hpp"

#include <string>

#include "lfwp/error.hpp"

namespace lfwp {

namespace {

constexpr unsigned kMulTableMaxQ = 256;

// Polynomial over Z_p, low to high, trailing zeros trimmed.
using Poly = std::vector<unsigned>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b.
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

std::vector<unsigned> digit_to_coeffs(unsigned b, unsigned p, unsigned c) {
  std::vector<unsigned> out(c);
  for (unsigned i = 0; i < c; ++i) {
    out[i] = b % p;
    b /= p;
  }
  return out;
}

}  // namespace

bool is_irreducible(unsigned p, std::span<const unsigned> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  // Try every monic divisor of degree d, 1 <= d <= deg/2.
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    unsigned long long count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (unsigned long long idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      unsigned long long v = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned c) {
  if (c <= 1) return {};
  unsigned long long count = 1;
  for (unsigned i = 0; i < c; ++i) count *= p;
  for (unsigned long long idx = 0; idx < count; ++idx) {
    Poly f(c + 1);
    unsigned long long v = idx;
    for (unsigned i = 0; i < c; ++i) {
      f[i] = static_cast<unsigned>(v % p);
      v /= p;
    }
    f[c] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw Error(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
}

FieldTable::FieldTable(FieldParams params)
    : FieldTable(params, default_modulus(params.p(), params.c())) {}

FieldTable::FieldTable(FieldParams params, std::vector<unsigned> modulus)
    : params_(params), modulus_(std::move(modulus)) {
  const unsigned p = params_.p();
  const unsigned c = params_.c();
  if (c == 1) {
    // Any monic linear polynomial gives the same one-element basis {1}.
    if (!modulus_.empty() &&
        !(modulus_.size() == 2 && modulus_[1] == 1 && modulus_[0] < p)) {
      throw Error(ErrorKind::InvalidArgument,
                  "modulus for c = 1 must be empty or monic linear");
    }
    modulus_.clear();
  } else {
    if (modulus_.size() != c + 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "modulus must have c + 1 = " + std::to_string(c + 1) +
                      " coefficients");
    }
    for (unsigned a : modulus_) {
      if (a >= p) {
        throw Error(ErrorKind::InvalidArgument, "modulus coefficient outside [0, p)");
      }
    }
    if (modulus_.back() != 1) {
      throw Error(ErrorKind::ReducibleModulus, "modulus is not monic");
    }
    if (!is_irreducible(p, modulus_)) {
      throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over Z_p");
    }
  }

  const unsigned q = params_.q();
  if (q <= kMulTableMaxQ) {
    mul_table_.resize(static_cast<std::size_t>(q) * q);
    for (unsigned a = 0; a < q; ++a) {
      for (unsigned b = 0; b < q; ++b) {
        mul_table_[static_cast<std::size_t>(a) * q + b] = mul_slow(a, b);
      }
    }
  }
}

unsigned FieldTable::add_digits(unsigned a, unsigned b) const noexcept {
  return static_cast<unsigned>(gadd(params_, a, b));
}

unsigned FieldTable::neg_digit(unsigned a) const noexcept {
  return static_cast<unsigned>(gneg(params_, a));
}

unsigned FieldTable::mul_digits(unsigned a, unsigned b) const noexcept {
  if (!mul_table_.empty()) {
    return mul_table_[static_cast<std::size_t>(a) * q() + b];
  }
  return mul_slow(a, b);
}

unsigned FieldTable::mul_slow(unsigned a, unsigned b) const noexcept {
  const unsigned p = params_.p();
  const unsigned c = params_.c();
  if (c == 1) {
    return static_cast<unsigned>((static_cast<unsigned long long>(a) * b) % p);
  }
  const auto x = digit_to_coeffs(a, p, c);
  const auto y = digit_to_coeffs(b, p, c);
  Poly prod(2 * c - 1, 0);
  for (unsigned i = 0; i < c; ++i) {
    for (unsigned j = 0; j < c; ++j) {
      prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    }
  }
  const Poly r = poly_mod(prod, modulus_, p);
  unsigned out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p + r[i];
  return out;
}

FieldTablePtr make_field_table(unsigned p, unsigned c,
                               std::optional<std::vector<unsigned>> modulus) {
  FieldParams params(p, c);
  if (modulus) {
    return std::make_shared<const FieldTable>(params, std::move(*modulus));
  }
  return std::make_shared<const FieldTable>(params);
}

GFqElement gf_zero(const FieldTable& t) { return {std::vector<unsigned>(t.c(), 0)}; }

GFqElement gf_one(const FieldTable& t) { return from_digit(t, 1); }

namespace {

void check_element(const FieldTable& t, const GFqElement& x) {
  if (x.coeffs.size() != t.c()) {
    throw Error(ErrorKind::InvalidArgument, "GF(q) element has wrong coordinate count");
  }
  for (unsigned a : x.coeffs) {
    if (a >= t.p()) {
      throw Error(ErrorKind::InvalidArgument, "GF(q) coordinate outside [0, p)");
    }
  }
}

}  // namespace

GFqElement gf_add(const FieldTable& t, const GFqElement& x, const GFqElement& y) {
  check_element(t, x);
  check_element(t, y);
  GFqElement out = x;
  for (unsigned i = 0; i < t.c(); ++i) {
    out.coeffs[i] = (x.coeffs[i] + y.coeffs[i]) % t.p();
  }
  return out;
}

GFqElement gf_mul(const FieldTable& t, const GFqElement& x, const GFqElement& y) {
  return from_digit(t, t.mul_digits(to_digit(t, x), to_digit(t, y)));
}

GFqElement from_digit(const FieldTable& t, unsigned b) {
  if (b >= t.q()) {
    throw Error(ErrorKind::InvalidArgument,
                "digit " + std::to_string(b) + " outside [0, q)");
  }
  return {digit_to_coeffs(b, t.p(), t.c())};
}

unsigned to_digit(const FieldTable& t, const GFqElement& x) {
  check_element(t, x);
  unsigned out = 0;
  for (std::size_t i = x.coeffs.size(); i-- > 0;) out = out * t.p() + x.coeffs[i];
  return out;
}

unsigned zeta0_component(const GFqElement& x) {
  return x.coeffs.empty() ? 0 : x.coeffs[0];
}

}  // namespace lfwp
