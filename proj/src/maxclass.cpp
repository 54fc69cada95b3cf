#include "gradalg/maxclass.hpp"

#include <cstdlib>
#include <set>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"
#include "parallel.hpp"

namespace gradalg {

Vector CentralizerPoint::vector(unsigned p) const
{
  Vector v(p, 2);
  switch (kind) {
  case Kind::Y: v.set(1, 1); break;
  case Kind::X: v.set(0, 1); break;
  case Kind::Other:
    v.set(0, 1);
    v.set(1, beta);
    break;
  default: throw Error(Error::Kind::InvalidArgument, "centralizer marker " + token() + " is not a point");
  }
  return v;
}

CentralizerPoint CentralizerPoint::from_vector(const Vector &v)
{
  Field f(v.characteristic());
  unsigned a = v.get(0), b = v.get(1);
  if (a == 0 && b == 0)
    throw Error(Error::Kind::InvalidArgument, "zero vector is not a point");
  if (a == 0)
    return y();
  if (b == 0)
    return x();
  return other(f.div(b, a));
}

std::string CentralizerPoint::token() const
{
  switch (kind) {
  case Kind::Y: return "y";
  case Kind::X: return "x";
  case Kind::Other: return beta == 1 ? "x+y" : "x+" + std::to_string(beta) + "y";
  case Kind::All: return "all";
  case Kind::None: return "none";
  case Kind::Diamond: return "dia";
  }
  return "?";
}

RowMatrix centralizer_of(const GradedAlgebra &a, const HomogeneousElement &u)
{
  const unsigned p = a.characteristic();
  RowMatrix images(p, 2, a.dim(u.degree + 1));
  for (int z = 0; z < 2; ++z)
    images.row(static_cast<std::size_t>(z)) = bracket(a, u, generator(a, static_cast<Letter>(z))).coeffs;
  return nullspace(images.transpose());
}

CentralizerSeq centralizer_sequence(const GradedAlgebra &a)
{
  if (a.dim(2) == 0)
    throw Error(Error::Kind::NotTwoGenerated, "[x,y] = 0: the algebra is abelian", 2);
  CentralizerSeq seq;
  for (int s = 2; s <= a.top(); ++s) {
    std::size_t d = a.dim(s);
    if (d == 0)
      break;
    if (d >= 2) {
      seq.push_back(CentralizerPoint::diamond());
      continue;
    }
    if (s == a.top() || a.dim(s + 1) == 0) {
      seq.push_back(CentralizerPoint::all());
      continue;
    }
    RowMatrix k = centralizer_of(a, basis_element(a, s, 0));
    if (k.nrows() == 0)
      seq.push_back(CentralizerPoint::none());
    else if (k.nrows() == 2)
      seq.push_back(CentralizerPoint::all());
    else
      seq.push_back(CentralizerPoint::from_vector(k.row(0)));
  }
  return seq;
}

ConstituentAnalysis constituent_lengths(const CentralizerSeq &seq, unsigned p)
{
  ConstituentAnalysis r;
  std::set<std::pair<int, unsigned>> distinct;
  int last = 1;
  bool ended = false;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const CentralizerPoint &c = seq[i];
    const int deg = static_cast<int>(i) + 2;
    if (c.kind == CentralizerPoint::Kind::All) {
      last = deg;
      ended = true;
      break;
    }
    if (!c.is_point())
      throw Error(Error::Kind::InvalidArgument, "constituents need a maximal class sequence, found " + c.token(),
                  deg);
    distinct.insert({static_cast<int>(c.kind), c.beta});
    last = deg;
    if (c.kind != CentralizerPoint::Kind::Y)
      r.closings.push_back(deg);
  }
  const int top = ended ? last : last + 1;
  r.analyzed_dim = top + 1;
  r.distinct_centralizers = static_cast<int>(distinct.size());
  if (r.closings.empty()) {
    r.metabelian = true;
    r.trailing = top - 2;
    return r;
  }
  r.qbar = r.closings[0];
  for (std::size_t i = 1; i < r.closings.size(); ++i)
    r.lengths.push_back(r.closings[i] - r.closings[i - 1]);
  r.trailing = top - 1 - r.closings.back();
  if (*r.qbar % 2 == 0) {
    r.q = *r.qbar / 2;
    unsigned e = 0;
    if (is_power_of(static_cast<std::uint64_t>(*r.q), p, &e))
      r.e = e;
  }
  return r;
}

std::optional<GradedAlgebra> extend_with_centralizer(const GradedAlgebra &a, const ExtensionSpace &ext,
                                                     const CentralizerPoint &c)
{
  const unsigned p = a.characteristic();
  const int n = a.top();
  if (a.dim(n) != 1)
    throw Error(Error::Kind::InvalidArgument, "centralizer prescription needs a one dimensional top", n);
  if (c.kind == CentralizerPoint::Kind::All)
    return impose_quotient(a, ext, RowMatrix(p, ext.universal_dim));
  Vector cv = c.vector(p);
  Vector img(p, ext.universal_dim);
  for (std::size_t z = 0; z < 2; ++z)
    img.add_scaled(ext.symbol_map.row(z), cv.get(z));
  RowMatrix keep(p, ext.universal_dim);
  if (img.is_zero()) {
    keep = RowMatrix::identity(p, ext.universal_dim);
  } else {
    RowMatrix one(p, ext.universal_dim);
    one.append(img);
    keep = nullspace(one);
  }
  if (keep.nrows() != 1)
    return std::nullopt;
  return impose_quotient(a, ext, keep);
}

GradedAlgebra from_centralizers(const CentralizerSeq &seq, unsigned p)
{
  GradedAlgebra a = free_start(p);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int deg = static_cast<int>(i) + 2;
    const CentralizerPoint &c = seq[i];
    if (c.kind == CentralizerPoint::Kind::All) {
      if (i + 1 != seq.size())
        throw Error(Error::Kind::InvalidArgument, "'all' may only end a centralizer sequence", deg);
      ExtensionSpace ext = extend_degree(a);
      return impose_quotient(a, ext, RowMatrix(p, ext.universal_dim));
    }
    if (!c.is_point())
      throw Error(Error::Kind::InvalidArgument, "cannot prescribe " + c.token(), deg);
    if (c.kind == CentralizerPoint::Kind::Other && (c.beta == 0 || c.beta >= p))
      throw Error(Error::Kind::InvalidArgument, "bad coefficient in " + c.token(), deg);
    auto next = extend_with_centralizer(a, extend_degree(a), c);
    if (!next)
      throw Error(Error::Kind::Inadmissible, "C_" + std::to_string(deg) + " = " + c.token() + " cannot be realized",
                  deg);
    a = std::move(*next);
  }
  return a;
}

namespace {

GradedAlgebra reorient(const GradedAlgebra &a, const Vector &new_x, const Vector &new_y)
{
  const unsigned p = a.characteristic();
  RowMatrix m(p, 2);
  m.append(new_x);
  m.append(new_y);
  if (m == RowMatrix::identity(p, 2))
    return a;
  return change_generators(a, m);
}

} // namespace

GradedAlgebra canonicalize(const GradedAlgebra &a)
{
  const unsigned p = a.characteristic();
  if (a.top() < 3 || a.dim(2) == 0)
    return a;
  CentralizerSeq seq = centralizer_sequence(a);
  GradedAlgebra b = a;
  if (seq[0].is_point() && seq[0].kind != CentralizerPoint::Kind::Y) {
    Vector ny = seq[0].vector(p);
    Vector nx = seq[0].kind == CentralizerPoint::Kind::X ? Vector::unit(p, 2, 1) : Vector::unit(p, 2, 0);
    b = reorient(b, nx, ny);
    seq = centralizer_sequence(b);
  }
  if (seq[0].kind != CentralizerPoint::Kind::Y)
    return b;
  for (const CentralizerPoint &c : seq) {
    if (!c.is_point())
      break;
    if (c.kind == CentralizerPoint::Kind::Y)
      continue;
    return reorient(b, c.vector(p), Vector::unit(p, 2, 1));
  }
  // No second centralizer before the first diamond.
  for (int k = 3; k < b.top(); ++k) {
    if (b.dim(k) != 2)
      continue;
    if (b.dim(k - 1) != 1)
      break;
    HomogeneousElement v = basis_element(b, k - 1, 0);
    for (unsigned beta = 0; beta < p; ++beta) {
      Vector xv = Vector::unit(p, 2, 0);
      xv.set(1, beta);
      HomogeneousElement xe{1, xv};
      if (bracket(b, bracket(b, v, xe), xe).is_zero())
        return reorient(b, xv, Vector::unit(p, 2, 1));
    }
    break;
  }
  return b;
}

int degree_cap()
{
  if (const char *env = std::getenv("GRADALG_MAX_DEGREE")) {
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      return static_cast<int>(v);
  }
  return 64;
}

std::vector<CentralizerPoint> palette_points(unsigned p, Palette palette)
{
  std::vector<CentralizerPoint> pts{CentralizerPoint::y(), CentralizerPoint::x()};
  if (palette == Palette::All) {
    if (p > 5)
      throw Error(Error::Kind::InvalidArgument, "the full palette is limited to p <= 5");
    for (unsigned b = 1; b < p; ++b)
      pts.push_back(CentralizerPoint::other(b));
  }
  return pts;
}

namespace {

struct EnumNode {
  GradedAlgebra a;
  CentralizerSeq seq;
  bool has_second = false;
};

struct EnumPartial {
  std::vector<CentralizerSeq> prefixes;
  std::size_t nodes = 0, leaves = 0;
  std::map<int, std::size_t> qbar_counts;
  std::map<int, std::map<int, std::size_t>> length_counts;
  std::map<int, std::size_t> distinct_counts;
  std::map<int, int> exceptional_qbar;

  void merge(EnumPartial &&o)
  {
    for (auto &s : o.prefixes)
      prefixes.push_back(std::move(s));
    nodes += o.nodes;
    leaves += o.leaves;
    for (auto &[k, v] : o.qbar_counts)
      qbar_counts[k] += v;
    for (auto &[k, m] : o.length_counts)
      for (auto &[l, c] : m)
        length_counts[k][l] += c;
    for (auto &[k, v] : o.distinct_counts)
      distinct_counts[k] += v;
    for (auto &[k, v] : o.exceptional_qbar)
      exceptional_qbar[k] = std::max(exceptional_qbar[k], v);
  }
};

class Enumerator {
public:
  Enumerator(const EnumerateOptions &opt) : opt_(opt), palette_(palette_points(opt.p, opt.palette)) {}

  std::vector<EnumNode> children(const EnumNode &n) const
  {
    std::vector<EnumNode> out;
    if (n.a.top() >= opt_.max_degree)
      return out;
    ExtensionSpace ext = extend_degree(n.a);
    for (const CentralizerPoint &c : palette_) {
      if (!n.has_second && c.kind == CentralizerPoint::Kind::Other)
        continue;
      if (n.seq.empty() && c.kind != CentralizerPoint::Kind::Y)
        continue;
      auto next = extend_with_centralizer(n.a, ext, c);
      if (!next)
        continue;
      EnumNode child{std::move(*next), n.seq, n.has_second || c.kind != CentralizerPoint::Kind::Y};
      child.seq.push_back(c);
      out.push_back(std::move(child));
    }
    return out;
  }

  void record(const EnumNode &n, bool leaf, EnumPartial &out) const
  {
    ++out.nodes;
    ConstituentAnalysis ca = constituent_lengths(n.seq, opt_.p);
    out.distinct_counts[ca.distinct_centralizers]++;
    if (ca.qbar) {
      if (!ca.e)
        out.exceptional_qbar[*ca.qbar] = std::max(out.exceptional_qbar[*ca.qbar], ca.analyzed_dim);
      if (!ca.lengths.empty()) {
        out.qbar_counts[*ca.qbar]++;
        for (int l : ca.lengths)
          out.length_counts[*ca.qbar][l]++;
      }
    }
    if (leaf)
      ++out.leaves;
    if (leaf || opt_.all_nodes)
      out.prefixes.push_back(n.seq);
  }

  void dfs(const EnumNode &n, EnumPartial &out) const
  {
    auto kids = children(n);
    record(n, kids.empty(), out);
    for (const EnumNode &k : kids)
      dfs(k, out);
  }

  const EnumerateOptions &opt_;
  std::vector<CentralizerPoint> palette_;
};

} // namespace

EnumerationReport enumerate_maxclass(const EnumerateOptions &opt)
{
  if (opt.max_degree > degree_cap())
    throw Error(Error::Kind::CapExceeded,
                "max degree " + std::to_string(opt.max_degree) + " exceeds cap " + std::to_string(degree_cap()));
  if (opt.max_degree < 2)
    throw Error(Error::Kind::InvalidArgument, "max degree must be at least 2");
  Enumerator en(opt);

  // Pre-pass: expand the tree down to a fixed split degree; nodes at that
  // degree become independent tasks.  The split does not depend on the
  // worker count, so the merge order is always the same.
  const int split = std::min(opt.max_degree, 10);
  struct Item {
    bool is_task;
    std::size_t task;
    EnumPartial rec;
  };
  std::vector<Item> items;
  std::vector<EnumNode> tasks;
  std::vector<EnumNode> stack{EnumNode{free_start(opt.p), {}, false}};
  while (!stack.empty()) {
    EnumNode n = std::move(stack.back());
    stack.pop_back();
    if (n.a.top() >= split) {
      items.push_back({true, tasks.size(), {}});
      tasks.push_back(std::move(n));
      continue;
    }
    auto kids = en.children(n);
    Item it{false, 0, {}};
    en.record(n, kids.empty(), it.rec);
    items.push_back(std::move(it));
    for (auto k = kids.rbegin(); k != kids.rend(); ++k)
      stack.push_back(std::move(*k));
  }
  std::vector<EnumPartial> results(tasks.size());
  detail::run_indexed(tasks.size(), opt.workers, [&](std::size_t i) { en.dfs(tasks[i], results[i]); });

  EnumPartial all;
  for (Item &it : items)
    all.merge(it.is_task ? std::move(results[it.task]) : std::move(it.rec));
  EnumerationReport r;
  r.p = opt.p;
  r.max_degree = opt.max_degree;
  r.palette = opt.palette;
  r.prefixes = std::move(all.prefixes);
  r.nodes = all.nodes;
  r.leaves = all.leaves;
  r.qbar_counts = std::move(all.qbar_counts);
  r.length_counts = std::move(all.length_counts);
  r.distinct_counts = std::move(all.distinct_counts);
  r.exceptional_qbar = std::move(all.exceptional_qbar);
  return r;
}

} // namespace gradalg
