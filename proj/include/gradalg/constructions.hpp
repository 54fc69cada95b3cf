#ifndef GRADALG_CONSTRUCTIONS_HPP
#define GRADALG_CONSTRUCTIONS_HPP

#include <vector>

#include "gradalg/algebra.hpp"
#include "gradalg/maxclass.hpp"

namespace gradalg {

/// The metabelian algebra of maximal class of dimension dim >= 3.
GradedAlgebra metabelian_maxclass(unsigned p, int dim);

struct BiZassenhausParams {
  int g = 2;
  int h = 1;

  int qbar() const { return 2 << h; }
  int period_dim() const { return (1 << g) * qbar(); }
};

/// Centralizers C_2 .. C_{dim-2} of the periodic pattern
/// qbar, (qbar-1, qbar^(2^g-2), qbar-1)^infinity.
CentralizerSeq bi_zassenhaus_pattern(const BiZassenhausParams &params, int dim);

GradedAlgebra bi_zassenhaus_quotient(const BiZassenhausParams &params, int dim);

/// One algebra per one dimensional quotient of the universal next
/// component, deduplicated by centralizer sequence.
std::vector<GradedAlgebra> one_dim_central_extensions(const GradedAlgebra &m);

} // namespace gradalg

#endif // GRADALG_CONSTRUCTIONS_HPP
