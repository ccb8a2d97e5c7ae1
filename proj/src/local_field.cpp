#include "lfwp/local_field.hpp"

#include <cmath>
#include <numbers>

#include "lfwp/error.hpp"

namespace lfwp {

namespace {

void require_same_table(const FieldElement& x, const FieldElement& y) {
  if (x.table() != y.table() && !(*x.table() == *y.table())) {
    throw Error(ErrorKind::FieldMismatch, "field elements over different tables");
  }
}

}  // namespace

FieldElement::FieldElement(FieldTablePtr table) : table_(std::move(table)) {
  if (!table_) throw Error(ErrorKind::InvalidArgument, "null field table");
}

FieldElement FieldElement::monomial(FieldTablePtr table, unsigned digit, int exponent) {
  if (digit >= table->q()) {
    throw Error(ErrorKind::InvalidArgument, "coefficient digit outside [0, q)");
  }
  FieldElement out(std::move(table));
  if (digit != 0) out.terms_.emplace(exponent, digit);
  return out;
}

FieldElement FieldElement::prime_power(FieldTablePtr table, int k) {
  return monomial(std::move(table), 1, k);
}

FieldElement FieldElement::one(FieldTablePtr table) {
  return monomial(std::move(table), 1, 0);
}

std::optional<int> FieldElement::valuation() const noexcept {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

double FieldElement::norm() const {
  const auto v = valuation();
  if (!v) return 0.0;
  return std::pow(static_cast<double>(table_->q()), -*v);
}

unsigned FieldElement::digit(int exponent) const noexcept {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

GFqElement FieldElement::coefficient(int exponent) const {
  return from_digit(*table_, digit(exponent));
}

FieldElement lf_add(const FieldElement& x, const FieldElement& y) {
  require_same_table(x, y);
  const FieldTable& t = *x.table_;
  FieldElement out = x;
  for (const auto& [e, d] : y.terms_) {
    const unsigned sum = t.add_digits(out.digit(e), d);
    if (sum == 0) {
      out.terms_.erase(e);
    } else {
      out.terms_[e] = sum;
    }
  }
  return out;
}

FieldElement lf_neg(const FieldElement& x) {
  FieldElement out = x;
  for (auto& [e, d] : out.terms_) d = x.table_->neg_digit(d);
  return out;
}

FieldElement lf_sub(const FieldElement& x, const FieldElement& y) {
  return lf_add(x, lf_neg(y));
}

FieldElement lf_mul(const FieldElement& x, const FieldElement& y) {
  require_same_table(x, y);
  const FieldTable& t = *x.table_;
  FieldElement out(x.table_);
  for (const auto& [ex, dx] : x.terms_) {
    for (const auto& [ey, dy] : y.terms_) {
      const int e = ex + ey;
      const unsigned sum = t.add_digits(out.digit(e), t.mul_digits(dx, dy));
      if (sum == 0) {
        out.terms_.erase(e);
      } else {
        out.terms_[e] = sum;
      }
    }
  }
  return out;
}

FieldElement u_of(const FieldTablePtr& table, Index n) {
  FieldElement out(table);
  int exponent = -1;
  const Index q = table->q();
  while (n != 0) {
    const auto d = static_cast<unsigned>(n % q);
    if (d != 0) out = lf_add(out, FieldElement::monomial(table, d, exponent));
    n /= q;
    --exponent;
  }
  return out;
}

Complex unit_root(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) return {1.0, 0.0};
  // Exact values where 4a/p is an integer.
  if ((4 * static_cast<unsigned long long>(a)) % p == 0) {
    switch ((4 * static_cast<unsigned long long>(a)) / p) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * a / p;
  return {std::cos(angle), std::sin(angle)};
}

Complex chi(const FieldElement& x) {
  const FieldTable& t = *x.table();
  return unit_root(x.digit(-1) % t.p(), t.p());
}

Complex chi_n(Index n, const FieldElement& x) {
  const FieldTable& t = *x.table();
  // u(n) carries d_i(n) at 𝔭^{-i-1}; it meets x's 𝔭^i coefficient at 𝔭^{-1}.
  unsigned acc = 0;
  int i = 0;
  while (n != 0) {
    const auto d = static_cast<unsigned>(n % t.q());
    if (d != 0) acc = t.add_digits(acc, t.mul_digits(d, x.digit(i)));
    n /= t.q();
    ++i;
  }
  return unit_root(acc % t.p(), t.p());
}

FieldElement sample_point(const FieldTablePtr& table, Index j, unsigned depth) {
  const Index bound = pow_q(table->params(), depth);
  if (j >= bound) {
    throw Error(ErrorKind::InvalidArgument, "sample index outside [0, q^M)");
  }
  FieldElement out(table);
  int exponent = 0;
  while (j != 0) {
    const auto d = static_cast<unsigned>(j % table->q());
    if (d != 0) out = lf_add(out, FieldElement::monomial(table, d, exponent));
    j /= table->q();
    ++exponent;
  }
  return out;
}

}  // namespace lfwp
