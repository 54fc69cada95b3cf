#ifndef GRADALG_FIELD_HPP
#define GRADALG_FIELD_HPP

#include <cstdint>

namespace gradalg {

bool is_prime(unsigned n);

/// Prime field F_p for 2 <= p <= 251.  Elements are plain residues.
class Field {
public:
  static constexpr unsigned kMaxPrime = 251;

  explicit Field(unsigned p);

  unsigned characteristic() const { return p_; }

  unsigned reduce(long long v) const
  {
    long long r = v % static_cast<long long>(p_);
    return static_cast<unsigned>(r < 0 ? r + p_ : r);
  }
  unsigned add(unsigned a, unsigned b) const { return (a + b) % p_; }
  unsigned sub(unsigned a, unsigned b) const { return (a + p_ - b) % p_; }
  unsigned neg(unsigned a) const { return a == 0 ? 0 : p_ - a; }
  unsigned mul(unsigned a, unsigned b) const { return (a * b) % p_; }
  unsigned inv(unsigned a) const;
  unsigned div(unsigned a, unsigned b) const { return mul(a, inv(b)); }

  bool operator==(const Field &o) const { return p_ == o.p_; }

private:
  unsigned p_;
  const std::uint8_t *inverse_;
};

/// An element of F_p carrying its characteristic.
class Scalar {
public:
  Scalar(unsigned p, long long v);

  unsigned value() const { return value_; }
  unsigned characteristic() const { return p_; }

  Scalar operator+(const Scalar &o) const;
  Scalar operator-(const Scalar &o) const;
  Scalar operator*(const Scalar &o) const;
  Scalar operator/(const Scalar &o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar &o) const = default;

private:
  void same_field(const Scalar &o) const;

  unsigned p_;
  unsigned value_;
};

/// C(n, k) mod p via Lucas' theorem.  Returns 0 when k > n.
Scalar lucas_binomial(std::uint64_t n, std::uint64_t k, unsigned p);

/// True iff n = p^e for some e >= 0; e is stored through the pointer.
bool is_power_of(std::uint64_t n, unsigned p, unsigned *e = nullptr);

} // namespace gradalg

#endif // GRADALG_FIELD_HPP
