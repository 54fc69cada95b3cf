#ifndef GRADALG_ROW_MATRIX_HPP
#define GRADALG_ROW_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace gradalg {

/// Dense row vector over F_p.  For p = 2 coefficients are packed one bit
/// each into 64-bit words; otherwise one byte each.
class Vector {
public:
  Vector() = default;
  Vector(unsigned p, std::size_t n);

  static Vector unit(unsigned p, std::size_t n, std::size_t i);

  unsigned characteristic() const { return p_; }
  std::size_t size() const { return n_; }

  unsigned get(std::size_t i) const
  {
    if (p_ == 2)
      return (words_[i >> 6] >> (i & 63)) & 1u;
    return (words_[i >> 3] >> ((i & 7) * 8)) & 0xffu;
  }
  void set(std::size_t i, unsigned v);

  /// this += c * o
  void add_scaled(const Vector &o, unsigned c);
  void add(const Vector &o) { add_scaled(o, 1); }
  void sub(const Vector &o) { add_scaled(o, p_ - 1); }
  void scale(unsigned c);
  void negate() { scale(p_ - 1); }

  bool is_zero() const;
  /// Index of the first nonzero coefficient, or -1.
  long leading() const;

  /// Concatenation helper: coefficients of this followed by o.
  Vector concat(const Vector &o) const;
  Vector slice(std::size_t from, std::size_t len) const;

  bool operator==(const Vector &o) const
  {
    return p_ == o.p_ && n_ == o.n_ && words_ == o.words_;
  }
  bool operator<(const Vector &o) const;

  const boost::container::small_vector<std::uint64_t, 2> &words() const { return words_; }

private:
  unsigned p_ = 2;
  std::size_t n_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

class RowMatrix {
public:
  RowMatrix() = default;
  RowMatrix(unsigned p, std::size_t ncols) : p_(p), ncols_(ncols) {}
  RowMatrix(unsigned p, std::size_t nrows, std::size_t ncols);

  static RowMatrix identity(unsigned p, std::size_t n);

  unsigned characteristic() const { return p_; }
  std::size_t nrows() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }

  const Vector &row(std::size_t i) const { return rows_[i]; }
  Vector &row(std::size_t i) { return rows_[i]; }
  const std::vector<Vector> &rows() const { return rows_; }

  unsigned at(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, unsigned v) { rows_[i].set(j, v); }

  void append(const Vector &v);

  /// v * this, where v has nrows() entries.
  Vector left_apply(const Vector &v) const;
  /// this * v^T, where v has ncols() entries.
  Vector right_apply(const Vector &v) const;
  RowMatrix multiply(const RowMatrix &o) const;
  RowMatrix transpose() const;

  bool operator==(const RowMatrix &o) const = default;

private:
  unsigned p_ = 2;
  std::size_t ncols_ = 0;
  std::vector<Vector> rows_;
};

struct Reduction {
  RowMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with leftmost pivots.  Zero rows are kept at
/// the bottom, so the shape is unchanged.
Reduction row_reduce(const RowMatrix &m);

std::size_t rank(const RowMatrix &m);

/// Basis (as rows) of { v : m v^T = 0 }.
RowMatrix nullspace(const RowMatrix &m);

/// Incrementally maintained echelon basis of a subspace of F_p^n, kept in
/// fully reduced form.
class EchelonSpace {
public:
  EchelonSpace(unsigned p, std::size_t n) : p_(p), n_(n) {}

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return n_; }

  /// Returns true if v was independent of the current space.
  bool insert(Vector v);
  /// Reduces v modulo the space.
  Vector reduce(Vector v) const;
  bool contains(const Vector &v) const { return reduce(v).is_zero(); }

  /// Rows sorted by pivot.
  RowMatrix matrix() const;
  const std::vector<std::size_t> &pivots() const { return pivots_; }

private:
  unsigned p_;
  std::size_t n_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

} // namespace gradalg

#endif // GRADALG_ROW_MATRIX_HPP
