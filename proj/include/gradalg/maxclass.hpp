#ifndef GRADALG_MAXCLASS_HPP
#define GRADALG_MAXCLASS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradalg/algebra.hpp"

namespace gradalg {

/// A two-step centralizer C_i, or a marker for components where it is not
/// a single point.  OTHER stands for F(x + beta y) with beta != 0.
struct CentralizerPoint {
  enum class Kind { Y, X, Other, All, None, Diamond };
  Kind kind = Kind::Y;
  unsigned beta = 0;

  static CentralizerPoint y() { return {Kind::Y, 0}; }
  static CentralizerPoint x() { return {Kind::X, 0}; }
  static CentralizerPoint other(unsigned beta) { return {Kind::Other, beta}; }
  static CentralizerPoint all() { return {Kind::All, 0}; }
  static CentralizerPoint none() { return {Kind::None, 0}; }
  static CentralizerPoint diamond() { return {Kind::Diamond, 0}; }

  bool is_point() const { return kind == Kind::Y || kind == Kind::X || kind == Kind::Other; }
  /// Coordinates (alpha, beta) of the point alpha x + beta y.
  Vector vector(unsigned p) const;
  static CentralizerPoint from_vector(const Vector &v);
  std::string token() const;

  bool operator==(const CentralizerPoint &) const = default;
};

using CentralizerSeq = std::vector<CentralizerPoint>;

/// Entries for C_2, C_3, ..., C_top.
CentralizerSeq centralizer_sequence(const GradedAlgebra &a);

/// Kernel of w -> [u, w] on L_1 for u homogeneous of degree s < top.
RowMatrix centralizer_of(const GradedAlgebra &a, const HomogeneousElement &u);

struct ConstituentAnalysis {
  std::optional<int> qbar;
  std::optional<int> q;
  std::optional<unsigned> e;
  std::vector<int> lengths;
  int trailing = 0;
  int distinct_centralizers = 0;
  bool metabelian = false;
  /// Degrees of the non-y centralizers closing a constituent, first is qbar.
  std::vector<int> closings;
  /// Number of degrees covered: the last analyzed degree plus one.
  int analyzed_dim = 0;

  int constituent_count() const { return qbar ? 1 + static_cast<int>(lengths.size()) : 0; }
};

ConstituentAnalysis constituent_lengths(const CentralizerSeq &seq, unsigned p);

/// One extension step prescribing C_n for the top element of a one
/// dimensional top component.  Returns nothing if the step is inadmissible.
std::optional<GradedAlgebra> extend_with_centralizer(const GradedAlgebra &a, const ExtensionSpace &ext,
                                                     const CentralizerPoint &c);

GradedAlgebra from_centralizers(const CentralizerSeq &seq, unsigned p);

/// Re-orients the generators: y spans C_2 and x spans the second distinct
/// centralizer at its first occurrence.  Failing that, and given a diamond
/// L_k after a one dimensional L_{k-1} = Fv, x is moved to x + beta y with
/// the least beta making [v x x] = 0.
GradedAlgebra canonicalize(const GradedAlgebra &a);

enum class Palette { Two, All };

struct EnumerateOptions {
  unsigned p = 2;
  int max_degree = 20;
  Palette palette = Palette::Two;
  unsigned workers = 1;
  bool all_nodes = false;
};

struct EnumerationReport {
  unsigned p = 2;
  int max_degree = 0;
  Palette palette = Palette::Two;
  /// Maximal admissible prefixes (or every node with all_nodes).
  std::vector<CentralizerSeq> prefixes;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  /// qbar -> number of nodes with at least two constituents.
  std::map<int, std::size_t> qbar_counts;
  /// qbar -> later constituent length -> occurrences over all nodes.
  std::map<int, std::map<int, std::size_t>> length_counts;
  /// distinct centralizer count -> number of nodes.
  std::map<int, std::size_t> distinct_counts;
  /// First constituent lengths not of the form 2 p^e, with the largest
  /// dimension at which each was seen.
  std::map<int, int> exceptional_qbar;
};

/// Largest degree accepted by the enumerator and the search (environment
/// override GRADALG_MAX_DEGREE).
int degree_cap();

EnumerationReport enumerate_maxclass(const EnumerateOptions &opt);

/// Palette for degree-by-degree centralizer choices, in canonical order.
std::vector<CentralizerPoint> palette_points(unsigned p, Palette palette);

} // namespace gradalg

#endif // GRADALG_MAXCLASS_HPP
