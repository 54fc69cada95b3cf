#include "gradalg/field.hpp"

#include <array>

#include "gradalg/error.hpp"

namespace gradalg {

bool is_prime(unsigned n)
{
  if (n < 2)
    return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace {

using InverseTable = std::array<std::uint8_t, Field::kMaxPrime + 1>;

const std::array<InverseTable, Field::kMaxPrime + 1> &inverse_tables()
{
  static const auto tables = [] {
    std::array<InverseTable, Field::kMaxPrime + 1> t{};
    for (unsigned p = 2; p <= Field::kMaxPrime; ++p) {
      if (!is_prime(p))
        continue;
      for (unsigned a = 1; a < p; ++a)
        for (unsigned b = 1; b < p; ++b)
          if (a * b % p == 1) {
            t[p][a] = static_cast<std::uint8_t>(b);
            break;
          }
    }
    return t;
  }();
  return tables;
}

} // namespace

Field::Field(unsigned p) : p_(p)
{
  if (p > kMaxPrime || !is_prime(p))
    throw Error(Error::Kind::InvalidArgument, "characteristic must be a prime <= 251, got " + std::to_string(p));
  inverse_ = inverse_tables()[p].data();
}

unsigned Field::inv(unsigned a) const
{
  if (a % p_ == 0)
    throw Error(Error::Kind::InvalidArgument, "division by zero in F_" + std::to_string(p_));
  return inverse_[a % p_];
}

Scalar::Scalar(unsigned p, long long v) : p_(p), value_(Field(p).reduce(v)) {}

void Scalar::same_field(const Scalar &o) const
{
  if (p_ != o.p_)
    throw Error(Error::Kind::InvalidArgument, "mixed characteristics");
}

Scalar Scalar::operator+(const Scalar &o) const
{
  same_field(o);
  return Scalar(p_, value_ + o.value_);
}

Scalar Scalar::operator-(const Scalar &o) const
{
  same_field(o);
  return Scalar(p_, static_cast<long long>(value_) - o.value_);
}

Scalar Scalar::operator*(const Scalar &o) const
{
  same_field(o);
  return Scalar(p_, static_cast<long long>(value_) * o.value_);
}

Scalar Scalar::operator/(const Scalar &o) const
{
  same_field(o);
  return *this * o.inverse();
}

Scalar Scalar::operator-() const { return Scalar(p_, -static_cast<long long>(value_)); }

Scalar Scalar::inverse() const { return Scalar(p_, Field(p_).inv(value_)); }

Scalar lucas_binomial(std::uint64_t n, std::uint64_t k, unsigned p)
{
  Field f(p);
  unsigned acc = 1;
  while (n > 0 || k > 0) {
    unsigned a = n % p, b = k % p;
    if (b > a)
      return Scalar(p, 0);
    // C(a, b) for single digits, computed in F_p
    unsigned num = 1, den = 1;
    for (unsigned i = 0; i < b; ++i) {
      num = f.mul(num, a - i);
      den = f.mul(den, i + 1);
    }
    acc = f.mul(acc, f.div(num, den));
    n /= p;
    k /= p;
  }
  return Scalar(p, acc);
}

bool is_power_of(std::uint64_t n, unsigned p, unsigned *e)
{
  if (n == 0 || p < 2)
    return false;
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1)
    return false;
  if (e)
    *e = k;
  return true;
}

} // namespace gradalg
