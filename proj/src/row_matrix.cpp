#include "gradalg/row_matrix.hpp"

#include <algorithm>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"

namespace gradalg {

namespace {

std::size_t word_count(unsigned p, std::size_t n) { return p == 2 ? (n + 63) / 64 : (n + 7) / 8; }

} // namespace

Vector::Vector(unsigned p, std::size_t n) : p_(p), n_(n), words_(word_count(p, n), 0) {}

Vector Vector::unit(unsigned p, std::size_t n, std::size_t i)
{
  Vector v(p, n);
  v.set(i, 1);
  return v;
}

void Vector::set(std::size_t i, unsigned v)
{
  v %= p_;
  if (p_ == 2) {
    std::uint64_t bit = std::uint64_t(1) << (i & 63);
    if (v)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
    return;
  }
  unsigned shift = (i & 7) * 8;
  words_[i >> 3] = (words_[i >> 3] & ~(std::uint64_t(0xff) << shift)) | (std::uint64_t(v) << shift);
}

void Vector::add_scaled(const Vector &o, unsigned c)
{
  if (o.n_ != n_ || o.p_ != p_)
    throw Error(Error::Kind::InvalidArgument, "vector shape mismatch");
  c %= p_;
  if (c == 0)
    return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] ^= o.words_[w];
    return;
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t ow = o.words_[w];
    if (ow == 0)
      continue;
    std::uint64_t mw = words_[w], out = 0;
    for (unsigned b = 0; b < 8; ++b) {
      unsigned x = (mw >> (8 * b)) & 0xff, y = (ow >> (8 * b)) & 0xff;
      out |= std::uint64_t((x + c * y) % p_) << (8 * b);
    }
    words_[w] = out;
  }
}

void Vector::scale(unsigned c)
{
  c %= p_;
  if (c == 1)
    return;
  if (c == 0) {
    std::fill(words_.begin(), words_.end(), 0);
    return;
  }
  for (std::size_t i = 0; i < n_; ++i)
    set(i, get(i) * c);
}

bool Vector::is_zero() const
{
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

long Vector::leading() const
{
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] == 0)
      continue;
    int bit = __builtin_ctzll(words_[w]);
    return p_ == 2 ? static_cast<long>(w * 64 + bit) : static_cast<long>(w * 8 + bit / 8);
  }
  return -1;
}

Vector Vector::concat(const Vector &o) const
{
  Vector r(p_, n_ + o.n_);
  for (std::size_t i = 0; i < n_; ++i)
    r.set(i, get(i));
  for (std::size_t i = 0; i < o.n_; ++i)
    r.set(n_ + i, o.get(i));
  return r;
}

Vector Vector::slice(std::size_t from, std::size_t len) const
{
  Vector r(p_, len);
  for (std::size_t i = 0; i < len; ++i)
    r.set(i, get(from + i));
  return r;
}

bool Vector::operator<(const Vector &o) const
{
  if (n_ != o.n_)
    return n_ < o.n_;
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i) != o.get(i))
      return get(i) < o.get(i);
  return false;
}

RowMatrix::RowMatrix(unsigned p, std::size_t nrows, std::size_t ncols)
    : p_(p), ncols_(ncols), rows_(nrows, Vector(p, ncols))
{
}

RowMatrix RowMatrix::identity(unsigned p, std::size_t n)
{
  RowMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

void RowMatrix::append(const Vector &v)
{
  if (v.size() != ncols_ || v.characteristic() != p_)
    throw Error(Error::Kind::InvalidArgument, "row shape mismatch");
  rows_.push_back(v);
}

Vector RowMatrix::left_apply(const Vector &v) const
{
  Vector r(p_, ncols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    r.add_scaled(rows_[i], v.get(i));
  return r;
}

Vector RowMatrix::right_apply(const Vector &v) const
{
  Field f(p_);
  Vector r(p_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    unsigned acc = 0;
    for (std::size_t j = 0; j < ncols_; ++j)
      acc = f.add(acc, f.mul(rows_[i].get(j), v.get(j)));
    r.set(i, acc);
  }
  return r;
}

RowMatrix RowMatrix::multiply(const RowMatrix &o) const
{
  RowMatrix r(p_, o.ncols());
  for (const Vector &row : rows_)
    r.append(o.left_apply(row));
  return r;
}

RowMatrix RowMatrix::transpose() const
{
  RowMatrix t(p_, ncols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < ncols_; ++j)
      t.set(j, i, at(i, j));
  return t;
}

Reduction row_reduce(const RowMatrix &m)
{
  Field f(m.characteristic());
  Reduction out;
  out.reduced = m;
  RowMatrix &a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.ncols() && r < a.nrows(); ++c) {
    std::size_t piv = r;
    while (piv < a.nrows() && a.at(piv, c) == 0)
      ++piv;
    if (piv == a.nrows())
      continue;
    std::swap(a.row(piv), a.row(r));
    a.row(r).scale(f.inv(a.at(r, c)));
    for (std::size_t i = 0; i < a.nrows(); ++i) {
      if (i == r)
        continue;
      unsigned v = a.at(i, c);
      if (v)
        a.row(i).add_scaled(a.row(r), f.neg(v));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t rank(const RowMatrix &m) { return row_reduce(m).rank; }

RowMatrix nullspace(const RowMatrix &m)
{
  Field f(m.characteristic());
  Reduction red = row_reduce(m);
  std::vector<char> is_pivot(m.ncols(), 0);
  for (std::size_t c : red.pivots)
    is_pivot[c] = 1;
  RowMatrix out(m.characteristic(), m.ncols());
  for (std::size_t free = 0; free < m.ncols(); ++free) {
    if (is_pivot[free])
      continue;
    Vector v = Vector::unit(m.characteristic(), m.ncols(), free);
    for (std::size_t r = 0; r < red.rank; ++r)
      v.set(red.pivots[r], f.neg(red.reduced.at(r, free)));
    out.append(v);
  }
  return out;
}

Vector EchelonSpace::reduce(Vector v) const
{
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    unsigned c = v.get(pivots_[i]);
    if (c)
      v.add_scaled(basis_[i], p_ - c);
  }
  return v;
}

bool EchelonSpace::insert(Vector v)
{
  v = reduce(std::move(v));
  long lead = v.leading();
  if (lead < 0)
    return false;
  Field f(p_);
  v.scale(f.inv(v.get(lead)));
  for (Vector &b : basis_) {
    unsigned c = b.get(lead);
    if (c)
      b.add_scaled(v, p_ - c);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), static_cast<std::size_t>(lead));
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, static_cast<std::size_t>(lead));
  basis_.insert(basis_.begin() + idx, std::move(v));
  return true;
}

RowMatrix EchelonSpace::matrix() const
{
  RowMatrix m(p_, n_);
  for (const Vector &b : basis_)
    m.append(b);
  return m;
}

} // namespace gradalg
