#include "gradalg/algebra.hpp"

#include <algorithm>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"

namespace gradalg {

GradedAlgebra::GradedAlgebra(unsigned p) : p_(p), orientation_(RowMatrix::identity(p, 2))
{
  Field check(p);
  (void)check;
  auto l1 = std::make_shared<Level>();
  l1->dim = 2;
  l1->checked = true;
  levels_.push_back(std::move(l1));
}

std::size_t GradedAlgebra::dim(int s) const
{
  if (s < 1 || s > top())
    return 0;
  return levels_[static_cast<std::size_t>(s - 1)]->dim;
}

std::vector<std::size_t> GradedAlgebra::dims() const
{
  std::vector<std::size_t> d;
  for (const auto &l : levels_)
    d.push_back(l->dim);
  return d;
}

std::size_t GradedAlgebra::total_dim() const
{
  std::size_t t = 0;
  for (const auto &l : levels_)
    t += l->dim;
  return t;
}

const Vector &GradedAlgebra::product(int i, std::size_t a, int j, std::size_t b) const
{
  if (i < 1 || j < 1 || i + j > top())
    throw Error(Error::Kind::DegreeOutOfRange, "product of degrees " + std::to_string(i) + " and " +
                                                   std::to_string(j) + " exceeds built degree " +
                                                   std::to_string(top()),
                i + j);
  const Level &l = level(i + j);
  return l.products[static_cast<std::size_t>(i - 1)][a * dim(j) + b];
}

std::size_t GradedAlgebra::global_index(int s, std::size_t a) const
{
  std::size_t g = a;
  for (int t = 1; t < s; ++t)
    g += dim(t);
  return g;
}

GradedAlgebra GradedAlgebra::append_level(std::vector<Def> defs, const std::vector<std::vector<Vector>> &ad_rows,
                                          bool checked) const
{
  auto l = std::make_shared<Level>();
  l->dim = defs.size();
  l->defs = std::move(defs);
  l->products = collect_top(*this, l->dim, ad_rows);
  l->checked = checked;
  GradedAlgebra out = *this;
  out.levels_.push_back(std::move(l));
  return out;
}

GradedAlgebra GradedAlgebra::truncate(int degree) const
{
  GradedAlgebra out = *this;
  if (degree < 1)
    degree = 1;
  if (degree < top())
    out.levels_.resize(static_cast<std::size_t>(degree));
  return out;
}

GradedAlgebra GradedAlgebra::with_orientation(RowMatrix m) const
{
  GradedAlgebra out = *this;
  out.orientation_ = std::move(m);
  return out;
}

std::vector<std::vector<Vector>> collect_top(const GradedAlgebra &a, std::size_t target_dim,
                                             const std::vector<std::vector<Vector>> &ad_rows)
{
  const unsigned p = a.characteristic();
  const int n = a.top();
  std::vector<std::vector<Vector>> prods(static_cast<std::size_t>(n));
  if (ad_rows.size() != a.dim(n))
    throw Error(Error::Kind::InvalidArgument, "ad rows do not match the top component", n);

  // Sum of c_k * ad_rows[k][z] over the top component.
  auto apply_ad = [&](const Vector &c, Letter z, Vector &acc) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      unsigned v = c.get(k);
      if (v)
        acc.add_scaled(ad_rows[k][static_cast<std::size_t>(z)], v);
    }
  };

  auto &last = prods[static_cast<std::size_t>(n - 1)];
  for (std::size_t e = 0; e < a.dim(n); ++e)
    for (int z = 0; z < 2; ++z)
      last.push_back(ad_rows[e][static_cast<std::size_t>(z)]);

  // [u, [f', z]] = [[u, f'], z] - [[u, z], f'], with j = deg f ascending.
  for (int j = 2; j <= n; ++j) {
    const int i = n + 1 - j;
    const Level &lj = a.level(j);
    const std::size_t dj1 = a.dim(j - 1);
    const auto &next = prods[static_cast<std::size_t>(i)]; // degree i + 1 row
    auto &out = prods[static_cast<std::size_t>(i - 1)];
    out.reserve(a.dim(i) * lj.dim);
    for (std::size_t u = 0; u < a.dim(i); ++u) {
      for (std::size_t f = 0; f < lj.dim; ++f) {
        const Def &d = lj.defs[f];
        Vector r(p, target_dim);
        apply_ad(a.product(i, u, j - 1, d.parent), d.letter, r);
        const Vector &uz = a.ad(i, u, d.letter);
        for (std::size_t c = 0; c < uz.size(); ++c) {
          unsigned v = uz.get(c);
          if (v)
            r.add_scaled(next[c * dj1 + d.parent], p - v);
        }
        out.push_back(std::move(r));
      }
    }
  }
  return prods;
}

namespace {

// Relations on a candidate degree n+1 product table T (into a space of
// dimension target) whose top ad rows are ad_rows.  Emits each relation.
template <class Emit>
void jacobi_relations(const GradedAlgebra &a, const std::vector<std::vector<Vector>> &T,
                      const std::vector<std::vector<Vector>> &ad_rows, std::size_t target, Emit emit)
{
  const unsigned p = a.characteristic();
  const int n = a.top();
  auto T_at = [&](int i, std::size_t u, int j, std::size_t v) -> const Vector & {
    return T[static_cast<std::size_t>(i - 1)][u * a.dim(j) + v];
  };

  // [w, [u, z]] - [[w, u], z] + [[w, z], u] = 0
  for (int i = 1; i <= n - 1; ++i) {
    const int j = n - i;
    for (std::size_t w = 0; w < a.dim(i); ++w)
      for (std::size_t u = 0; u < a.dim(j); ++u)
        for (int zi = 0; zi < 2; ++zi) {
          Letter z = static_cast<Letter>(zi);
          Vector r(p, target);
          const Vector &uz = a.ad(j, u, z);
          for (std::size_t c = 0; c < uz.size(); ++c)
            if (unsigned v = uz.get(c))
              r.add_scaled(T_at(i, w, j + 1, c), v);
          const Vector &wu = a.product(i, w, j, u);
          for (std::size_t c = 0; c < wu.size(); ++c)
            if (unsigned v = wu.get(c))
              r.add_scaled(ad_rows[c][static_cast<std::size_t>(zi)], p - v);
          const Vector &wz = a.ad(i, w, z);
          for (std::size_t c = 0; c < wz.size(); ++c)
            if (unsigned v = wz.get(c))
              r.add_scaled(T_at(i + 1, c, j, u), v);
          emit(std::move(r), std::vector<std::pair<int, std::size_t>>{{i, w}, {j, u}, {1, std::size_t(zi)}},
               "[w,[u,z]] = [[w,u],z] - [[w,z],u]");
        }
  }
  // alternating law
  for (int i = 1; 2 * i <= n + 1; ++i) {
    const int j = n + 1 - i;
    for (std::size_t u = 0; u < a.dim(i); ++u)
      for (std::size_t v = (i == j ? u : 0); v < a.dim(j); ++v) {
        Vector r = T_at(i, u, j, v);
        if (!(i == j && u == v))
          r.add(T_at(j, v, i, u));
        emit(std::move(r), std::vector<std::pair<int, std::size_t>>{{i, u}, {j, v}},
             i == j && u == v ? "[u,u] = 0" : "[u,v] + [v,u] = 0");
      }
  }
}

std::vector<std::vector<Vector>> unit_symbols(unsigned p, std::size_t d)
{
  std::vector<std::vector<Vector>> rows(d);
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t z = 0; z < 2; ++z)
      rows[e].push_back(Vector::unit(p, 2 * d, 2 * e + z));
  return rows;
}

struct ChosenLevel {
  std::vector<Def> defs;
  std::vector<std::vector<Vector>> ad_rows;
  std::vector<std::size_t> pivots;
};

// image: rows span the coordinate space; column s is the image of symbol s.
// Picks the leftmost independent symbols as the new basis.
ChosenLevel choose_basis(const RowMatrix &image, std::size_t top_dim)
{
  const unsigned p = image.characteristic();
  Reduction red = row_reduce(image);
  ChosenLevel out;
  out.pivots = red.pivots;
  for (std::size_t s : red.pivots)
    out.defs.push_back(Def{s / 2, static_cast<Letter>(s % 2)});
  out.ad_rows.assign(top_dim, {});
  for (std::size_t e = 0; e < top_dim; ++e)
    for (std::size_t z = 0; z < 2; ++z) {
      Vector col(p, red.rank);
      for (std::size_t r = 0; r < red.rank; ++r)
        col.set(r, red.reduced.at(r, 2 * e + z));
      out.ad_rows[e].push_back(std::move(col));
    }
  return out;
}

} // namespace

static JacobiResult check_level_relations(const GradedAlgebra &below, const Level &l)
{
  JacobiResult res;
  const int n = below.top();
  std::vector<std::vector<Vector>> ad_rows(below.dim(n));
  const auto &last = l.products[static_cast<std::size_t>(n - 1)];
  for (std::size_t e = 0; e < below.dim(n); ++e)
    for (std::size_t z = 0; z < 2; ++z)
      ad_rows[e].push_back(last[2 * e + z]);
  jacobi_relations(below, l.products, ad_rows, l.dim,
                   [&](Vector r, std::vector<std::pair<int, std::size_t>> t, const char *id) {
                     if (res.ok && !r.is_zero()) {
                       res.ok = false;
                       res.triple = std::move(t);
                       res.identity = id;
                     }
                   });
  return res;
}

ExtensionSpace extend_degree(const GradedAlgebra &a)
{
  for (int s = 2; s <= a.top(); ++s) {
    if (a.level(s).checked)
      continue;
    JacobiResult r = check_level_relations(a.truncate(s - 1), a.level(s));
    if (!r.ok)
      throw Error(Error::Kind::InconsistentBase, "relation " + r.identity + " fails", s);
  }
  const unsigned p = a.characteristic();
  const int n = a.top();
  const std::size_t d = a.dim(n);
  const std::size_t S = 2 * d;
  ExtensionSpace ext;
  ext.base_degree = n;
  EchelonSpace rel(p, S);
  if (d > 0) {
    auto units = unit_symbols(p, d);
    auto T = collect_top(a, S, units);
    jacobi_relations(a, T, units, S,
                     [&](Vector r, const std::vector<std::pair<int, std::size_t>> &, const char *) {
                       if (rel.dim() < S)
                         rel.insert(std::move(r));
                     });
  }
  ext.relations = rel.matrix();
  ext.universal_dim = S - rel.dim();
  std::vector<char> is_pivot(S, 0);
  for (std::size_t c : rel.pivots())
    is_pivot[c] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < S; ++c)
    if (!is_pivot[c])
      free_cols.push_back(c);
  ext.symbol_map = RowMatrix(p, S, ext.universal_dim);
  Field f(p);
  for (std::size_t k = 0; k < free_cols.size(); ++k)
    ext.symbol_map.set(free_cols[k], k, 1);
  for (std::size_t r = 0; r < rel.dim(); ++r) {
    const Vector &row = ext.relations.row(r);
    std::size_t pc = rel.pivots()[r];
    for (std::size_t k = 0; k < free_cols.size(); ++k)
      ext.symbol_map.set(pc, k, f.neg(row.get(free_cols[k])));
  }
  return ext;
}

GradedAlgebra impose_quotient(const GradedAlgebra &a, const ExtensionSpace &ext, const RowMatrix &keep)
{
  const int n = a.top();
  if (ext.base_degree != n)
    throw Error(Error::Kind::InvalidArgument, "extension space belongs to another degree", n + 1);
  if (keep.nrows() > ext.universal_dim)
    throw Error(Error::Kind::DimensionTooLarge,
                "requested " + std::to_string(keep.nrows()) + " > universal dimension " +
                    std::to_string(ext.universal_dim),
                n + 1);
  if (keep.ncols() != ext.universal_dim)
    throw Error(Error::Kind::InvalidArgument, "quotient functionals have the wrong length", n + 1);
  RowMatrix image = keep.multiply(ext.symbol_map.transpose());
  if (rank(keep) != keep.nrows())
    throw Error(Error::Kind::InvalidArgument, "quotient functionals are dependent", n + 1);
  ChosenLevel c = choose_basis(image, a.dim(n));
  return a.append_level(std::move(c.defs), c.ad_rows, true);
}

GradedAlgebra extend_full(const GradedAlgebra &a)
{
  ExtensionSpace ext = extend_degree(a);
  return impose_quotient(a, ext, RowMatrix::identity(a.characteristic(), ext.universal_dim));
}

GradedAlgebra free_start(unsigned p) { return extend_full(GradedAlgebra(p)); }

HomogeneousElement generator(const GradedAlgebra &a, Letter z)
{
  return HomogeneousElement{1, Vector::unit(a.characteristic(), 2, static_cast<std::size_t>(z))};
}

HomogeneousElement basis_element(const GradedAlgebra &a, int s, std::size_t i)
{
  if (s < 1 || s > a.top() || i >= a.dim(s))
    throw Error(Error::Kind::DegreeOutOfRange, "no such basis element", s);
  return HomogeneousElement{s, Vector::unit(a.characteristic(), a.dim(s), i)};
}

HomogeneousElement bracket(const GradedAlgebra &a, const HomogeneousElement &u, const HomogeneousElement &v)
{
  const int s = u.degree + v.degree;
  if (s > a.top())
    throw Error(Error::Kind::DegreeOutOfRange,
                "bracket needs degree " + std::to_string(s) + ", built through " + std::to_string(a.top()), s);
  const unsigned p = a.characteristic();
  Field f(p);
  Vector r(p, a.dim(s));
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    unsigned cu = u.coeffs.get(i);
    if (!cu)
      continue;
    for (std::size_t j = 0; j < v.coeffs.size(); ++j) {
      unsigned cv = v.coeffs.get(j);
      if (cv)
        r.add_scaled(a.product(u.degree, i, v.degree, j), f.mul(cu, cv));
    }
  }
  return HomogeneousElement{s, std::move(r)};
}

HomogeneousElement eval_word(const GradedAlgebra &a, const std::vector<Letter> &word)
{
  if (word.empty())
    throw Error(Error::Kind::InvalidArgument, "empty word");
  const int m = static_cast<int>(word.size());
  if (m > a.top())
    throw Error(Error::Kind::DegreeOutOfRange,
                "word of length " + std::to_string(m) + " exceeds built degree " + std::to_string(a.top()), m);
  HomogeneousElement cur = generator(a, word[0]);
  for (std::size_t k = 1; k < word.size(); ++k)
    cur = bracket(a, cur, generator(a, word[k]));
  return cur;
}

GradedAlgebra change_generators(const GradedAlgebra &a, const RowMatrix &m)
{
  const unsigned p = a.characteristic();
  if (m.nrows() != 2 || m.ncols() != 2 || rank(m) != 2)
    throw Error(Error::Kind::InvalidArgument, "generator change must be an invertible 2x2 matrix");
  GradedAlgebra b(p);
  // phi[s]: rows are the new basis of degree s in old coordinates
  std::vector<RowMatrix> phi{m};
  for (int s = 1; s < a.top(); ++s) {
    const RowMatrix &cur = phi.back();
    const std::size_t d = cur.nrows();
    RowMatrix image(p, a.dim(s + 1), 2 * d);
    std::vector<Vector> cols;
    for (std::size_t e = 0; e < d; ++e)
      for (std::size_t z = 0; z < 2; ++z) {
        HomogeneousElement u{s, cur.row(e)}, g{1, m.row(z)};
        Vector col = bracket(a, u, g).coeffs;
        for (std::size_t r = 0; r < col.size(); ++r)
          image.set(r, 2 * e + z, col.get(r));
        cols.push_back(std::move(col));
      }
    ChosenLevel c = choose_basis(image, d);
    if (c.defs.size() != a.dim(s + 1))
      throw Error(Error::Kind::NotTwoGenerated, "component not generated by the new generators", s + 1);
    RowMatrix next(p, a.dim(s + 1));
    for (std::size_t piv : c.pivots)
      next.append(cols[piv]);
    b = b.append_level(std::move(c.defs), c.ad_rows, true);
    phi.push_back(std::move(next));
  }
  return b.with_orientation(m.multiply(a.orientation()));
}

JacobiResult check_jacobi(const GradedAlgebra &a, JacobiMode mode)
{
  JacobiResult res;
  if (mode == JacobiMode::GeneratorTriples) {
    for (int s = 2; s <= a.top() && res.ok; ++s)
      res = check_level_relations(a.truncate(s - 1), a.level(s));
    return res;
  }
  const unsigned p = a.characteristic();
  const int n = a.top();
  auto fail = [&](std::vector<std::pair<int, std::size_t>> t, const char *id) {
    res.ok = false;
    res.triple = std::move(t);
    res.identity = id;
  };
  // antisymmetry and alternating law
  for (int i = 1; 2 * i <= n; ++i)
    for (int j = i; i + j <= n; ++j)
      for (std::size_t u = 0; u < a.dim(i); ++u)
        for (std::size_t v = 0; v < a.dim(j); ++v) {
          if (i == j && v < u)
            continue;
          Vector r = a.product(i, u, j, v);
          if (i == j && u == v) {
            if (!r.is_zero()) {
              fail({{i, u}, {j, v}}, "[u,u] = 0");
              return res;
            }
            continue;
          }
          r.add(a.product(j, v, i, u));
          if (!r.is_zero()) {
            fail({{i, u}, {j, v}}, "[u,v] + [v,u] = 0");
            return res;
          }
        }
  // cyclic Jacobi on basis triples, i <= j <= k
  for (int i = 1; 3 * i <= n; ++i)
    for (int j = i; i + 2 * j <= n; ++j)
      for (int k = j; i + j + k <= n; ++k)
        for (std::size_t u = 0; u < a.dim(i); ++u)
          for (std::size_t v = (i == j ? u : 0); v < a.dim(j); ++v)
            for (std::size_t w = (j == k ? v : 0); w < a.dim(k); ++w) {
              HomogeneousElement U = basis_element(a, i, u), V = basis_element(a, j, v),
                                 W = basis_element(a, k, w);
              Vector r = bracket(a, bracket(a, U, V), W).coeffs;
              r.add(bracket(a, bracket(a, V, W), U).coeffs);
              r.add(bracket(a, bracket(a, W, U), V).coeffs);
              if (!r.is_zero()) {
                fail({{i, u}, {j, v}, {k, w}}, "[[u,v],w] + [[v,w],u] + [[w,u],v] = 0");
                return res;
              }
            }
  (void)p;
  return res;
}

BigradingResult check_bigrading(const GradedAlgebra &a, std::optional<int> through)
{
  BigradingResult res;
  const int n = std::min(a.top(), through.value_or(a.top()));
  res.weights.push_back({Bidegree{1, 0}, Bidegree{0, 1}});
  for (int s = 2; s <= n; ++s) {
    std::vector<Bidegree> w;
    for (const Def &d : a.level(s).defs) {
      Bidegree b = res.weights[static_cast<std::size_t>(s - 2)][d.parent];
      (d.letter == Letter::X ? b.x : b.y) += 1;
      w.push_back(b);
    }
    res.weights.push_back(std::move(w));
  }
  for (int s = 1; s < n; ++s)
    for (std::size_t e = 0; e < a.dim(s); ++e)
      for (int zi = 0; zi < 2; ++zi) {
        Letter z = static_cast<Letter>(zi);
        Bidegree want = res.weights[static_cast<std::size_t>(s - 1)][e];
        (z == Letter::X ? want.x : want.y) += 1;
        const Vector &r = a.ad(s, e, z);
        for (std::size_t t = 0; t < r.size(); ++t)
          if (r.get(t) && !(res.weights[static_cast<std::size_t>(s)][t] == want)) {
            res.ok = false;
            res.degree = s;
            res.source = e;
            res.letter = z;
            res.target = t;
            return res;
          }
      }
  return res;
}

bool is_metabelian_through(const GradedAlgebra &a, int j_bound)
{
  if (j_bound > a.top() + 1 || j_bound < 1)
    throw Error(Error::Kind::DegreeOutOfRange,
                "metabelian test up to " + std::to_string(j_bound) + " needs more degrees", j_bound);
  for (int i = 2; i + 2 < j_bound; ++i)
    for (int j = 2; i + j < j_bound; ++j)
      for (std::size_t u = 0; u < a.dim(i); ++u)
        for (std::size_t v = 0; v < a.dim(j); ++v)
          if (!a.product(i, u, j, v).is_zero())
            return false;
  return true;
}

bool sandwich_holds(const GradedAlgebra &a, Letter z)
{
  for (int s = 1; s + 2 <= a.top(); ++s)
    for (std::size_t e = 0; e < a.dim(s); ++e) {
      HomogeneousElement u = basis_element(a, s, e);
      HomogeneousElement g = generator(a, z);
      if (!bracket(a, bracket(a, u, g), g).is_zero())
        return false;
    }
  return true;
}

} // namespace gradalg
