// Small helpers shared by the test programs.  Everything here works from
// the raw structure constants so it can serve as an oracle for the library.
#ifndef GRADALG_TEST_SUPPORT_HPP
#define GRADALG_TEST_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "gradalg/algebra.hpp"
#include "gradalg/row_matrix.hpp"

namespace testsupport {

using namespace gradalg;

// Witt's necklace formula (1/n) sum_{d | n} mu(d) 2^{n/d}.
inline std::size_t witt(int n)
{
  auto mobius = [](int d) {
    int m = 1;
    for (int f = 2; f * f <= d; ++f)
      if (d % f == 0) {
        d /= f;
        if (d % f == 0)
          return 0;
        m = -m;
      }
    return d > 1 ? -m : m;
  };
  long long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0)
      s += mobius(d) * (1LL << (n / d));
  return static_cast<std::size_t>(s / n);
}

// [v, z] read straight off the stored ad rows.
inline HomogeneousElement adz(const GradedAlgebra &a, const HomogeneousElement &v, Letter z)
{
  const unsigned p = a.characteristic();
  Vector out(p, a.dim(v.degree + 1));
  for (std::size_t i = 0; i < v.coeffs.size(); ++i)
    out.add_scaled(a.ad(v.degree, i, z), v.coeffs.get(i));
  return {v.degree + 1, out};
}

// [v z1 z2 ...] by repeated ad.
inline HomogeneousElement ad_word(const GradedAlgebra &a, HomogeneousElement v, const std::vector<Letter> &w)
{
  for (Letter z : w)
    v = adz(a, v, z);
  return v;
}

// True iff each L_{s+1} is spanned by [L_s, x] and [L_s, y].
inline bool generated_in_degree_one(const GradedAlgebra &a)
{
  for (int s = 1; s < a.top(); ++s) {
    RowMatrix m(a.characteristic(), a.dim(s + 1));
    for (std::size_t i = 0; i < a.dim(s); ++i)
      for (Letter z : {Letter::X, Letter::Y})
        m.append(a.ad(s, i, z));
    if (rank(m) != a.dim(s + 1))
      return false;
  }
  return true;
}

inline bool dims_bounded(const GradedAlgebra &a)
{
  for (int s = 1; s < a.top(); ++s)
    if (a.dim(s + 1) > 2 * a.dim(s))
      return false;
  return true;
}

// C(n, k) mod p from Pascal's rule.
inline unsigned pascal_binomial(unsigned n, unsigned k, unsigned p)
{
  std::vector<unsigned> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<unsigned> next(i + 1, 1);
    for (unsigned j = 1; j < i; ++j)
      next[j] = (row[j - 1] + row[j]) % p;
    row = next;
  }
  return k <= n ? row[k] % p : 0;
}

} // namespace testsupport

#endif
