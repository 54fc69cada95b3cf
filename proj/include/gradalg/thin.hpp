#ifndef GRADALG_THIN_HPP
#define GRADALG_THIN_HPP

#include <optional>
#include <string>
#include <vector>

#include "gradalg/algebra.hpp"
#include "gradalg/maxclass.hpp"

namespace gradalg {

struct CoveringResult {
  bool ok = true;
  int degree = 0;
  /// Failing element of L_degree (coefficients), when !ok.
  Vector witness;
  std::string reason;
};

/// Covering property for every nonzero u of degree <= through.
CoveringResult check_covering(const GradedAlgebra &a, int through);

struct DiamondReport {
  enum class Type { Finite, Infinity, Fake0, Fake1, Untyped };
  int degree = 0;
  bool genuine = false;
  Type type = Type::Untyped;
  unsigned mu = 0;
  /// Several readings of the relations are possible.
  bool ambiguous = false;
  /// Spanning element of L_{degree-1}.
  Vector witness;
  std::string note;

  /// "0".."p-1", "inf", "fake-0", "fake-1" or "untyped".
  std::string mu_string() const;
};

std::vector<DiamondReport> diamond_scan(const GradedAlgebra &a);

/// Whether degree h satisfies the type-zero relations ([wxx] = [wxy] =
/// [wyy] = 0 with L_{h+1} nonzero) for w spanning L_{h-1}.
bool is_type_zero(const GradedAlgebra &a, int h);

/// Degree of the first two dimensional component after L_1, if any.
std::optional<int> second_diamond(const GradedAlgebra &a);

/// M = L / ([L_{k-1} x] + L^{k+1}).
GradedAlgebra build_M_quotient(const GradedAlgebra &l);

struct Clause {
  enum class Status { Pass, Fail, NotApplicable, Open };
  std::string id;
  Status status = Status::NotApplicable;
  std::string detail;
};

const char *status_name(Clause::Status s);

struct TheoremReport {
  unsigned p = 2;
  bool thin = false;
  std::optional<int> k;
  std::optional<int> qbar;
  std::optional<int> r;
  std::optional<int> n;
  std::size_t dim = 0;
  int built_degree = 0;
  std::string dim_bound;
  std::vector<int> m_lengths;
  std::string m_centralizers;
  std::vector<Clause> clauses;
  std::vector<std::string> notes;

  bool any_fail() const;
  const Clause &clause(const std::string &id) const;
};

TheoremReport verify_structure_theorem(const GradedAlgebra &l);

struct SearchOptions {
  unsigned p = 2;
  /// 0 leaves the first constituent free.
  int qbar = 0;
  int target_k = 0;
  int max_degree = 0;
  std::size_t branch_limit = 100000;
  unsigned workers = 1;
};

struct SearchResult {
  enum class Status { Found, Unsatisfiable, LimitReached };
  Status status = Status::Unsatisfiable;
  std::vector<GradedAlgebra> witnesses;
  std::size_t nodes = 0;
  int deepest_degree = 0;
  bool exhausted = true;
};

const char *status_name(SearchResult::Status s);

/// Depth-first search for thin algebras with the given first constituent
/// and second diamond, built through max_degree.  A seed algebra, if
/// given, replaces the free start.
SearchResult thin_search(const SearchOptions &opt, const std::optional<GradedAlgebra> &seed = {});

} // namespace gradalg

#endif // GRADALG_THIN_HPP
