#include "gradalg/constructions.hpp"

#include <algorithm>

#include "gradalg/error.hpp"

namespace gradalg {

GradedAlgebra metabelian_maxclass(unsigned p, int dim)
{
  if (dim < 3)
    throw Error(Error::Kind::InvalidArgument, "dimension must be at least 3");
  return from_centralizers(CentralizerSeq(static_cast<std::size_t>(dim - 3), CentralizerPoint::y()), p);
}

CentralizerSeq bi_zassenhaus_pattern(const BiZassenhausParams &params, int dim)
{
  if (params.g < 2 || params.h < 1)
    throw Error(Error::Kind::InvalidArgument, "need g >= 2 and h >= 1");
  if (dim < 3)
    throw Error(Error::Kind::InvalidArgument, "dimension must be at least 3");
  const int qbar = params.qbar();
  const std::size_t want = static_cast<std::size_t>(dim - 3);
  CentralizerSeq seq;
  auto constituent = [&](int len) {
    for (int i = 0; i < len - 1; ++i)
      seq.push_back(CentralizerPoint::y());
    seq.push_back(CentralizerPoint::x());
  };
  constituent(qbar - 1);
  while (seq.size() < want) {
    constituent(qbar - 1);
    for (int i = 0; i < (1 << params.g) - 2; ++i)
      constituent(qbar);
    constituent(qbar - 1);
  }
  seq.resize(want);
  return seq;
}

GradedAlgebra bi_zassenhaus_quotient(const BiZassenhausParams &params, int dim)
{
  if (dim > degree_cap() + 1)
    throw Error(Error::Kind::CapExceeded, "dimension " + std::to_string(dim) + " exceeds the degree cap");
  return from_centralizers(bi_zassenhaus_pattern(params, dim), 2);
}

std::vector<GradedAlgebra> one_dim_central_extensions(const GradedAlgebra &m)
{
  const unsigned p = m.characteristic();
  ExtensionSpace ext = extend_degree(m);
  std::vector<GradedAlgebra> out;
  std::vector<CentralizerSeq> seen;
  const std::size_t u = ext.universal_dim;
  // functionals with leading coefficient 1, lex order
  for (std::size_t lead = 0; lead < u; ++lead) {
    std::size_t count = 1;
    for (std::size_t i = lead + 1; i < u; ++i)
      count *= p;
    for (std::size_t code = 0; code < count; ++code) {
      Vector f(p, u);
      f.set(lead, 1);
      std::size_t c = code;
      for (std::size_t i = u; i-- > lead + 1;) {
        f.set(i, static_cast<unsigned>(c % p));
        c /= p;
      }
      RowMatrix keep(p, u);
      keep.append(f);
      GradedAlgebra a = impose_quotient(m, ext, keep);
      CentralizerSeq seq = centralizer_sequence(a);
      if (std::find(seen.begin(), seen.end(), seq) == seen.end()) {
        seen.push_back(seq);
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

} // namespace gradalg
