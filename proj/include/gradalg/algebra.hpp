#ifndef GRADALG_ALGEBRA_HPP
#define GRADALG_ALGEBRA_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gradalg/row_matrix.hpp"

namespace gradalg {

enum class Letter : unsigned char { X = 0, Y = 1 };

inline char letter_char(Letter z) { return z == Letter::X ? 'x' : 'y'; }

/// A basis element of degree s >= 2 is defined as [parent, letter] with
/// parent a basis element of degree s - 1 (local index).
struct Def {
  std::size_t parent;
  Letter letter;
  bool operator==(const Def &) const = default;
};

/// One homogeneous component together with every product landing in it.
struct Level {
  std::size_t dim = 0;
  std::vector<Def> defs;
  /// products[i-1][a * dim(L_{s-i}) + b] = [e_a, e_b] for e_a in L_i,
  /// e_b in L_{s-i}; vectors have length dim.
  std::vector<std::vector<Vector>> products;
  /// Set when the level was produced by the extension engine, whose
  /// output satisfies Jacobi by construction.
  bool checked = false;
};

struct HomogeneousElement {
  int degree = 0;
  Vector coeffs;

  bool is_zero() const { return coeffs.is_zero(); }
  bool operator==(const HomogeneousElement &) const = default;
};

/// Universal next component of a graded algebra: the formal symbols
/// (e, x), (e, y) for e in the top component, modulo the relations that
/// any Lie algebra extension must satisfy.
struct ExtensionSpace {
  int base_degree = 0;
  std::size_t universal_dim = 0;
  /// One row per symbol (e, z), indexed 2 * e + z, giving its coordinates in
  /// the universal component.
  RowMatrix symbol_map;
  /// Relations in reduced echelon form, columns indexed by symbols.
  RowMatrix relations;
};

/// A 2-generated graded Lie algebra over F_p, generated in degree 1, built
/// through some degree.  Immutable; extensions share lower levels.
class GradedAlgebra {
public:
  explicit GradedAlgebra(unsigned p);

  unsigned characteristic() const { return p_; }
  /// Built degree (the highest degree whose component is known, possibly 0).
  int top() const { return static_cast<int>(levels_.size()); }
  std::size_t dim(int s) const;
  std::vector<std::size_t> dims() const;
  std::size_t total_dim() const;
  /// True when the top component is zero, so every higher one is too.
  bool terminated() const { return dim(top()) == 0; }

  const Level &level(int s) const { return *levels_.at(static_cast<std::size_t>(s - 1)); }

  /// [e_a, e_b] for basis elements of degrees i and j, i + j <= top().
  const Vector &product(int i, std::size_t a, int j, std::size_t b) const;
  /// [e_a, z] for a basis element of degree s < top().
  const Vector &ad(int s, std::size_t a, Letter z) const { return product(s, a, 1, static_cast<std::size_t>(z)); }

  /// Global basis index: x = 0, y = 1, then degree 2, 3, ...
  std::size_t global_index(int s, std::size_t a) const;

  /// Rows are the current generators x, y in terms of the generators the
  /// algebra was first built with.
  const RowMatrix &orientation() const { return orientation_; }

  /// Appends a level from the ad rows of the top component:
  /// ad_rows[a][z] = [e_a, z].  Products are completed by collection.
  GradedAlgebra append_level(std::vector<Def> defs, const std::vector<std::vector<Vector>> &ad_rows,
                             bool checked) const;
  GradedAlgebra truncate(int degree) const;
  GradedAlgebra with_orientation(RowMatrix m) const;

private:
  unsigned p_;
  std::vector<std::shared_ptr<const Level>> levels_;
  RowMatrix orientation_;
};

GradedAlgebra free_start(unsigned p);

/// Products landing in degree top()+1 computed by collection, given the ad
/// rows of the top component into a space of dimension target_dim.
std::vector<std::vector<Vector>> collect_top(const GradedAlgebra &a, std::size_t target_dim,
                                             const std::vector<std::vector<Vector>> &ad_rows);

ExtensionSpace extend_degree(const GradedAlgebra &a);

/// keep: rows are linear functionals on the universal component, of full
/// row rank; the new component is its image.
GradedAlgebra impose_quotient(const GradedAlgebra &a, const ExtensionSpace &ext, const RowMatrix &keep);

/// Extends by the full universal component.
GradedAlgebra extend_full(const GradedAlgebra &a);

HomogeneousElement generator(const GradedAlgebra &a, Letter z);
HomogeneousElement basis_element(const GradedAlgebra &a, int s, std::size_t i);
HomogeneousElement bracket(const GradedAlgebra &a, const HomogeneousElement &u, const HomogeneousElement &v);

/// Left-normed word [z1 z2 ... zm].
HomogeneousElement eval_word(const GradedAlgebra &a, const std::vector<Letter> &word);

/// Rebuilds the algebra on new generators x' = m[0] . (x, y), y' = m[1] . (x, y).
GradedAlgebra change_generators(const GradedAlgebra &a, const RowMatrix &m);

enum class JacobiMode { AllTriples, GeneratorTriples };

struct JacobiResult {
  bool ok = true;
  /// Offending basis elements as (degree, local index); up to three.
  std::vector<std::pair<int, std::size_t>> triple;
  std::string identity;
};

JacobiResult check_jacobi(const GradedAlgebra &a, JacobiMode mode);

struct Bidegree {
  int x = 0;
  int y = 0;
  bool operator==(const Bidegree &) const = default;
};

struct BigradingResult {
  bool ok = true;
  /// weights[s-1][i] for basis element i of degree s.
  std::vector<std::vector<Bidegree>> weights;
  /// Offending ad entry: source degree, source index, letter, target index.
  int degree = 0;
  std::size_t source = 0;
  Letter letter = Letter::X;
  std::size_t target = 0;
};

/// Checks bidegrees through the given degree (default: whole algebra).
BigradingResult check_bigrading(const GradedAlgebra &a, std::optional<int> through = {});

/// True iff [L_i, L_j] = 0 whenever i, j >= 2 and i + j < j_bound.
bool is_metabelian_through(const GradedAlgebra &a, int j_bound);

/// True iff ad(y)^2 vanishes on every component through top() - 2.
bool sandwich_holds(const GradedAlgebra &a, Letter z = Letter::Y);

} // namespace gradalg

#endif // GRADALG_ALGEBRA_HPP
