#include "gradalg/thin.hpp"

#include <algorithm>
#include <sstream>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"
#include "gradalg/io.hpp"
#include "parallel.hpp"

namespace gradalg {

namespace {

// Nonzero vectors of F_p^d with leading coefficient 1, in lex order.
std::vector<Vector> projective_points(unsigned p, std::size_t d)
{
  std::vector<Vector> out;
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::size_t rest = d - lead - 1;
    std::size_t count = 1;
    for (std::size_t i = 0; i < rest; ++i)
      count *= p;
    for (std::size_t code = 0; code < count; ++code) {
      Vector v(p, d);
      v.set(lead, 1);
      std::size_t c = code;
      for (std::size_t i = d; i-- > lead + 1;) {
        v.set(i, static_cast<unsigned>(c % p));
        c /= p;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

HomogeneousElement adz(const GradedAlgebra &a, const HomogeneousElement &u, Letter z)
{
  return bracket(a, u, generator(a, z));
}

std::string join(const std::vector<int> &v)
{
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  return os.str();
}

} // namespace

CoveringResult check_covering(const GradedAlgebra &a, int through)
{
  if (through > a.top() - 1)
    throw Error(Error::Kind::DegreeOutOfRange,
                "covering through " + std::to_string(through) + " needs degree " + std::to_string(through + 1),
                through + 1);
  CoveringResult res;
  const unsigned p = a.characteristic();
  for (int i = 1; i <= through; ++i) {
    const std::size_t d = a.dim(i), dn = a.dim(i + 1);
    if (d > 2) {
      res.ok = false;
      res.degree = i;
      res.witness = Vector::unit(p, d, 0);
      res.reason = "component of dimension " + std::to_string(d);
      return res;
    }
    for (const Vector &u : projective_points(p, d)) {
      HomogeneousElement e{i, u};
      RowMatrix m(p, dn);
      m.append(adz(a, e, Letter::X).coeffs);
      m.append(adz(a, e, Letter::Y).coeffs);
      if (rank(m) != dn) {
        res.ok = false;
        res.degree = i;
        res.witness = u;
        res.reason = "[u, L_1] is a proper subspace of L_" + std::to_string(i + 1);
        return res;
      }
    }
  }
  return res;
}

std::string DiamondReport::mu_string() const
{
  switch (type) {
  case Type::Finite: return std::to_string(mu);
  case Type::Infinity: return "inf";
  case Type::Fake0: return "fake-0";
  case Type::Fake1: return "fake-1";
  case Type::Untyped: return "untyped";
  }
  return "untyped";
}

bool is_type_zero(const GradedAlgebra &a, int h)
{
  if (h < 3 || h + 1 > a.top() || a.dim(h - 1) != 1 || a.dim(h) != 1 || a.dim(h + 1) == 0)
    return false;
  HomogeneousElement w = basis_element(a, h - 1, 0);
  HomogeneousElement wx = adz(a, w, Letter::X), wy = adz(a, w, Letter::Y);
  return adz(a, wx, Letter::X).is_zero() && adz(a, wx, Letter::Y).is_zero() && adz(a, wy, Letter::Y).is_zero();
}

std::vector<DiamondReport> diamond_scan(const GradedAlgebra &a)
{
  const unsigned p = a.characteristic();
  Field f(p);
  std::vector<DiamondReport> out;
  int last_fake1 = -10;
  for (int h = 3; h <= a.top(); ++h) {
    const std::size_t d = a.dim(h);
    if (d == 0)
      break;
    if (d == 1 && (h + 1 > a.top() || a.dim(h + 1) == 0 || a.dim(h - 1) != 1))
      continue;
    DiamondReport r;
    r.degree = h;
    r.genuine = d >= 2;
    if (a.dim(h - 1) != 1) {
      if (r.genuine) {
        r.note = "preceding component is not one dimensional";
        out.push_back(r);
      }
      continue;
    }
    HomogeneousElement w = basis_element(a, h - 1, 0);
    r.witness = w.coeffs;
    if (h + 1 > a.top()) {
      r.note = "next component not built";
      out.push_back(r);
      continue;
    }
    HomogeneousElement wx = adz(a, w, Letter::X), wy = adz(a, w, Letter::Y);
    HomogeneousElement wxx = adz(a, wx, Letter::X), wxy = adz(a, wx, Letter::Y);
    HomogeneousElement wyx = adz(a, wy, Letter::X), wyy = adz(a, wy, Letter::Y);
    if (!r.genuine) {
      if (wy.is_zero() && wxx.is_zero()) {
        r.type = DiamondReport::Type::Fake1;
        last_fake1 = h;
        out.push_back(r);
      } else if (wxx.is_zero() && wxy.is_zero() && wyy.is_zero() && last_fake1 != h - 1) {
        r.type = DiamondReport::Type::Fake0;
        out.push_back(r);
      }
      continue;
    }
    if (!wxx.is_zero() || !wyy.is_zero()) {
      r.note = "[wxx] or [wyy] is nonzero";
      out.push_back(r);
      continue;
    }
    // (1 - mu)[wxy] = mu [wyx]  <=>  [wxy] = mu ([wxy] + [wyx])
    Vector s = wxy.coeffs;
    s.add(wyx.coeffs);
    if (s.is_zero()) {
      if (wxy.is_zero()) {
        r.type = DiamondReport::Type::Finite;
        r.mu = 0;
        r.ambiguous = true;
        r.note = "[wxy] = [wyx] = 0: every type fits";
      } else {
        r.type = DiamondReport::Type::Infinity;
      }
      out.push_back(r);
      continue;
    }
    long lead = s.leading();
    unsigned mu = f.div(wxy.coeffs.get(static_cast<std::size_t>(lead)), s.get(static_cast<std::size_t>(lead)));
    Vector check = s;
    check.scale(mu);
    if (check == wxy.coeffs) {
      r.type = DiamondReport::Type::Finite;
      r.mu = mu;
    } else {
      r.note = "[wxy] and [wyx] are independent";
    }
    out.push_back(r);
  }
  return out;
}

std::optional<int> second_diamond(const GradedAlgebra &a)
{
  for (int s = 2; s <= a.top(); ++s)
    if (a.dim(s) >= 2)
      return s;
  return std::nullopt;
}

GradedAlgebra build_M_quotient(const GradedAlgebra &l)
{
  auto k = second_diamond(l);
  if (!k)
    throw Error(Error::Kind::NoSecondDiamond, "no two dimensional component after L_1");
  if (l.dim(*k) != 2 || l.dim(*k - 1) != 1)
    throw Error(Error::Kind::NoSecondDiamond, "second diamond is not preceded by a one dimensional component", *k);
  const unsigned p = l.characteristic();
  GradedAlgebra base = l.truncate(*k - 1);
  HomogeneousElement v = basis_element(l, *k - 1, 0);
  RowMatrix vx(p, 2);
  vx.append(adz(l, v, Letter::X).coeffs);
  RowMatrix f = nullspace(vx); // functional on L_k killing [v x]
  Vector img_x(p, 1), img_y(p, 1);
  img_x.set(0, f.row(0).get(0) * l.ad(*k - 1, 0, Letter::X).get(0) + f.row(0).get(1) * l.ad(*k - 1, 0, Letter::X).get(1));
  img_y.set(0, f.row(0).get(0) * l.ad(*k - 1, 0, Letter::Y).get(0) + f.row(0).get(1) * l.ad(*k - 1, 0, Letter::Y).get(1));
  if (img_y.is_zero())
    throw Error(Error::Kind::InconsistentBase, "[v y] lies in [v x]", *k);
  // new basis element is the image of [v y]; rescale to 1
  Field fl(p);
  unsigned c = fl.inv(img_y.get(0));
  img_x.scale(c);
  img_y.scale(c);
  return base.append_level({Def{0, Letter::Y}}, {{img_x, img_y}}, l.level(*k).checked);
}

const char *status_name(Clause::Status s)
{
  switch (s) {
  case Clause::Status::Pass: return "pass";
  case Clause::Status::Fail: return "fail";
  case Clause::Status::NotApplicable: return "not-applicable";
  case Clause::Status::Open: return "open";
  }
  return "?";
}

bool TheoremReport::any_fail() const
{
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause &c) { return c.status == Clause::Status::Fail; });
}

const Clause &TheoremReport::clause(const std::string &id) const
{
  for (const Clause &c : clauses)
    if (c.id == id)
      return c;
  throw Error(Error::Kind::InvalidArgument, "unknown clause " + id);
}

namespace {

const char *const kClauseIds[] = {"main.1", "main.2", "main.3", "thin.4",
                                  "thin.5", "thin.6", "odd.metabelian", "cor.degree-form"};

bool power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

Clause make(const std::string &id, Clause::Status s, std::string detail)
{
  return Clause{id, s, std::move(detail)};
}

Clause pass_fail(const std::string &id, bool ok, std::string detail)
{
  return make(id, ok ? Clause::Status::Pass : Clause::Status::Fail, std::move(detail));
}

} // namespace

TheoremReport verify_structure_theorem(const GradedAlgebra &input)
{
  TheoremReport rep;
  rep.p = input.characteristic();
  const unsigned p = rep.p;
  std::vector<Clause> clauses;
  auto set_all = [&](Clause::Status s, const std::string &why) {
    clauses.clear();
    for (const char *id : kClauseIds)
      clauses.push_back(make(id, s, why));
  };
  auto finish = [&]() {
    rep.clauses = clauses;
    return rep;
  };
  set_all(Clause::Status::NotApplicable, "");

  GradedAlgebra L = canonicalize(input);
  const int d = L.top();
  rep.built_degree = d;
  rep.dim = L.total_dim();
  if (L.dim(2) == 0) {
    set_all(Clause::Status::NotApplicable, "[x,y] = 0");
    return finish();
  }
  CoveringResult cov = check_covering(L, d - 1);
  rep.thin = cov.ok;
  if (!cov.ok) {
    set_all(Clause::Status::NotApplicable, "covering fails in degree " + std::to_string(cov.degree));
    return finish();
  }
  auto k = second_diamond(L);
  if (!k) {
    set_all(Clause::Status::NotApplicable, "no genuine second diamond: maximal class");
    return finish();
  }
  rep.k = *k;
  const int K = *k;
  const long D = static_cast<long>(rep.dim);
  const bool six = d >= 5 && is_metabelian_through(L, 6);
  const bool meta_k = is_metabelian_through(L, K);

  GradedAlgebra M = build_M_quotient(L);
  CentralizerSeq mseq = centralizer_sequence(M);
  ConstituentAnalysis ca = constituent_lengths(mseq, p);
  rep.m_centralizers = format_centralizers(mseq);
  if (ca.qbar) {
    rep.qbar = ca.qbar;
    rep.m_lengths.push_back(*ca.qbar);
    for (int l : ca.lengths)
      rep.m_lengths.push_back(l);
  }

  // Corollary: degree form of k
  {
    const bool big = p == 2 ? 3 * D > 4L * K + 1 : 3 * D > 4L * K - 3;
    if (!six)
      clauses[7] = make("cor.degree-form", Clause::Status::NotApplicable, "L/L^6 is not metabelian");
    else if (!big)
      clauses[7] = make("cor.degree-form", Clause::Status::NotApplicable,
                        "dim L = " + std::to_string(D) + " too small for k = " + std::to_string(K));
    else {
      bool form = false;
      for (long q = p; q <= 2L * K + 2; q *= p)
        if (K == q || K == 2 * q - 1)
          form = true;
      clauses[7] = pass_fail("cor.degree-form", K % 2 == 1 && form, "k = " + std::to_string(K));
    }
  }

  if (p != 2) {
    rep.dim_bound = "4k/3-1 = " + std::to_string(4.0 * K / 3 - 1);
    for (int i = 0; i < 6; ++i)
      clauses[static_cast<std::size_t>(i)] =
          make(kClauseIds[i], Clause::Status::NotApplicable, "characteristic two only");
    if (3 * D > 4L * K - 3)
      clauses[6] = pass_fail("odd.metabelian", meta_k,
                             meta_k ? "L/L^k metabelian" : "L/L^k is not metabelian");
    else
      clauses[6] = make("odd.metabelian", Clause::Status::NotApplicable,
                        "dim L = " + std::to_string(D) + " <= 4k/3-1");
    return finish();
  }

  clauses[6] = make("odd.metabelian", Clause::Status::NotApplicable, "odd characteristic only");
  rep.dim_bound = "(4k+1)/3 = " + std::to_string((4.0 * K + 1) / 3);
  auto main_na = [&](const std::string &why, Clause::Status s = Clause::Status::NotApplicable) {
    for (int i = 0; i < 6; ++i)
      clauses[static_cast<std::size_t>(i)] = make(kClauseIds[i], s, why);
  };
  if (meta_k) {
    main_na("L/L^k is metabelian");
    return finish();
  }
  if (!(3 * D > 4L * K + 1)) {
    main_na("dim L = " + std::to_string(D) + " <= (4k+1)/3");
    return finish();
  }
  if (!ca.qbar || ca.lengths.empty()) {
    main_na("M has a single constituent");
    return finish();
  }
  const int qbar = *ca.qbar;
  if (qbar < 4) {
    main_na("first constituent of length " + std::to_string(qbar));
    return finish();
  }
  if (qbar == 4) {
    rep.notes.push_back("qbar = 4: only the subcase with constituents beginning 4,3 is covered by the theorem");
    if (ca.lengths[0] == 2) {
      main_na("qbar = 4 with constituents beginning 4,2 is an open case", Clause::Status::Open);
      return finish();
    }
    if (ca.lengths[0] != 3) {
      main_na("qbar = 4 with second constituent " + std::to_string(ca.lengths[0]));
      return finish();
    }
  } else if (!six) {
    main_na("L/L^6 is not metabelian");
    return finish();
  }

  // (1)
  clauses[0] = pass_fail("main.1", ca.distinct_centralizers == 2,
                         std::to_string(ca.distinct_centralizers) + " distinct centralizers in M");
  // (2)
  std::optional<int> r;
  const auto &ls = ca.lengths;
  if (ls.size() == 1 && ls[0] == qbar - 2)
    r = 1;
  else if (ls.size() >= 2 && ls.size() % 2 == 1 && ls.front() == qbar - 1 && ls.back() == qbar - 1 &&
           std::all_of(ls.begin() + 1, ls.end() - 1, [&](int l) { return l == qbar; })) {
    int rr = static_cast<int>(ls.size() + 1) / 2;
    if (2 * rr - 3 == static_cast<int>(ls.size()) - 2)
      r = rr;
  }
  const bool form_ok = r && power_of_two(*r) && power_of_two(qbar);
  clauses[1] = pass_fail("main.2", form_ok, "M constituents " + join(rep.m_lengths));
  if (form_ok) {
    rep.r = r;
    rep.n = 2 * *r;
  }
  // (3)
  clauses[2] = pass_fail("main.3", power_of_two(K + 1), "k + 1 = " + std::to_string(K + 1));

  // (4)
  {
    const int first = K + 1, last = (3 * (K - 1) - 1) / 2;
    std::vector<int> bad;
    for (int i = first; i <= std::min(last, d - 1); ++i) {
      HomogeneousElement u = basis_element(L, i, 0);
      bool ok = L.dim(i) == 1 && (adz(L, u, Letter::X).is_zero() || adz(L, u, Letter::Y).is_zero());
      if (!ok)
        bad.push_back(i);
    }
    std::string detail = bad.empty() ? "" : "not centralized by x or y in degrees " + join(bad);
    if (last > d - 1 && last >= first)
      detail += std::string(detail.empty() ? "" : "; ") + "degrees " + std::to_string(std::max(first, d)) + ".." +
                std::to_string(last) + " not built";
    if (last < first)
      clauses[3] = make("thin.4", Clause::Status::NotApplicable, "empty range");
    else if (d - 1 < first)
      clauses[3] = make("thin.4", Clause::Status::NotApplicable, detail);
    else
      clauses[3] = pass_fail("thin.4", bad.empty(), detail);
  }

  // (5) and (6) need r
  if (!form_ok) {
    clauses[4] = make("thin.5", Clause::Status::NotApplicable, "r undetermined");
    clauses[5] = make("thin.6", Clause::Status::NotApplicable, "r undetermined");
    return finish();
  }
  const int R = *r;
  std::vector<DiamondReport> scan = diamond_scan(L);
  {
    std::vector<int> expected, observed;
    // same window as clause (4): degrees below 3(k-1)/2
    const int lo = qbar, hi = (3 * (K - 1) + 1) / 2, avail = std::min(hi - 1, d - 1);
    for (int m = 2; m < 2 * R; ++m)
      if (m * qbar - 1 <= avail)
        expected.push_back(m * qbar - 1);
    for (int m = 2 * R + 1; m < 3 * R; ++m)
      if (m * qbar - 2 <= avail)
        expected.push_back(m * qbar - 2);
    for (const DiamondReport &dr : scan)
      if (dr.type == DiamondReport::Type::Fake1 && dr.degree > lo && dr.degree < hi && dr.degree != K &&
          dr.degree <= avail)
        observed.push_back(dr.degree);
    std::sort(expected.begin(), expected.end());
    std::string detail = "expected {" + join(expected) + "}, found {" + join(observed) + "}";
    if (avail < hi - 1)
      detail += "; degrees " + std::to_string(avail + 1) + ".." + std::to_string(hi - 1) + " not checked";
    clauses[4] = pass_fail("thin.5", expected == observed, detail);
  }
  if (R > 1) {
    auto it = std::find_if(scan.begin(), scan.end(), [&](const DiamondReport &dr) { return dr.degree == K; });
    if (it == scan.end() || (it->type == DiamondReport::Type::Untyped && it->note == "next component not built"))
      clauses[5] = make("thin.6", Clause::Status::NotApplicable, "degree k + 1 not built");
    else
      clauses[5] = pass_fail("thin.6", it->type == DiamondReport::Type::Infinity, "type " + it->mu_string());
  } else {
    clauses[5] = make("thin.6", Clause::Status::NotApplicable, "r = 1");
  }
  return finish();
}

const char *status_name(SearchResult::Status s)
{
  switch (s) {
  case SearchResult::Status::Found: return "found";
  case SearchResult::Status::Unsatisfiable: return "unsatisfiable";
  case SearchResult::Status::LimitReached: return "limit-reached";
  }
  return "?";
}

namespace {

// All k x u reduced echelon matrices of rank k, in canonical order.
std::vector<RowMatrix> echelon_forms(unsigned p, std::size_t k, std::size_t u)
{
  std::vector<RowMatrix> out;
  if (k > u)
    return out;
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i)
    piv[i] = i;
  for (;;) {
    // free slots: (row, col) with col > pivot[row] and col not a pivot
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < u; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end())
          slots.push_back({r, c});
    std::vector<unsigned> digits(slots.size(), 0);
    for (;;) {
      RowMatrix m(p, k, u);
      for (std::size_t r = 0; r < k; ++r)
        m.set(r, piv[r], 1);
      for (std::size_t s = 0; s < slots.size(); ++s)
        m.set(slots[s].first, slots[s].second, digits[s]);
      out.push_back(std::move(m));
      std::size_t s = slots.size();
      while (s > 0) {
        --s;
        if (++digits[s] < p)
          break;
        digits[s] = 0;
        if (s == 0) {
          s = slots.size() + 1;
          break;
        }
      }
      if (slots.empty() || s == slots.size() + 1)
        break;
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == u - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j)
      piv[j] = piv[j - 1] + 1;
  }
  return out;
}

struct SNode {
  GradedAlgebra a;
  bool has_second = false;
};

struct TaskOut {
  std::vector<std::pair<std::size_t, GradedAlgebra>> witnesses;
  std::vector<std::pair<std::size_t, int>> depth_events;
  std::size_t nodes = 0;
  bool complete = true;
};

class Searcher {
public:
  explicit Searcher(const SearchOptions &o) : opt_(o), p_(o.p)
  {
    palette_ = palette_points(p_, p_ <= 5 ? Palette::All : Palette::Two);
    for (std::size_t k = 1; k <= 2; ++k)
      for (std::size_t u = k; u <= 4; ++u)
        forms_[k][u] = echelon_forms(p_, k, u);
  }

  std::vector<SNode> children(const SNode &n) const
  {
    std::vector<SNode> out;
    const GradedAlgebra &a = n.a;
    const int top = a.top();
    if (top >= opt_.max_degree || a.terminated())
      return out;
    const int K = opt_.target_k;
    ExtensionSpace ext = extend_degree(a);
    if (top + 1 < K) {
      // one dimensional, C_top prescribed from the palette
      for (const CentralizerPoint &c : palette_) {
        const bool is_y = c.kind == CentralizerPoint::Kind::Y;
        if (top == 2 && !is_y)
          continue;
        if (opt_.qbar > 0) {
          if (top < opt_.qbar && !is_y)
            continue;
          if (top == opt_.qbar && c.kind != CentralizerPoint::Kind::X)
            continue;
        } else if (!n.has_second && !is_y && c.kind != CentralizerPoint::Kind::X) {
          continue;
        }
        auto next = extend_with_centralizer(a, ext, c);
        if (next)
          out.push_back(SNode{std::move(*next), n.has_second || !is_y});
      }
      return out;
    }
    if (top + 1 == K) {
      if (ext.universal_dim == 2)
        out.push_back(SNode{impose_quotient(a, ext, RowMatrix::identity(p_, 2)), n.has_second});
      return out;
    }
    // past the second diamond: any quotient of dimension 1 or 2 keeping the
    // covering property in degree top
    const std::size_t u = ext.universal_dim;
    if (u > 4)
      throw Error(Error::Kind::InconsistentBase, "universal component too large for a thin algebra", top + 1);
    std::vector<Vector> pts;
    for (std::size_t k = 1; k <= 2 && k <= u; ++k) {
      for (const RowMatrix &keep : forms_[k][u]) {
        RowMatrix image = keep.multiply(ext.symbol_map.transpose());
        if (!covers(a, image, k))
          continue;
        out.push_back(SNode{impose_quotient(a, ext, keep), n.has_second});
      }
    }
    return out;
  }

  // Covering in degree top for the candidate top + 1 given by image
  // (column 2e + z is the image of [e, z]).
  bool covers(const GradedAlgebra &a, const RowMatrix &image, std::size_t k) const
  {
    const std::size_t d = a.dim(a.top());
    if (d > 2)
      return false;
    for (const Vector &u : pts_for(d)) {
      RowMatrix m(p_, 2, k);
      for (std::size_t z = 0; z < 2; ++z)
        for (std::size_t r = 0; r < k; ++r) {
          unsigned acc = 0;
          for (std::size_t e = 0; e < d; ++e)
            acc += u.get(e) * image.at(r, 2 * e + z);
          m.set(z, r, acc % p_);
        }
      if (rank(m) != k)
        return false;
    }
    return true;
  }

  const std::vector<Vector> &pts_for(std::size_t d) const { return d == 1 ? pts1_ : pts2_; }

  void init_points()
  {
    pts1_ = projective_points(p_, 1);
    pts2_ = projective_points(p_, 2);
  }

  void dfs(const SNode &n, std::size_t cap, TaskOut &out, int &deepest) const
  {
    if (out.nodes >= cap) {
      out.complete = false;
      return;
    }
    const std::size_t idx = out.nodes++;
    if (n.a.top() > deepest) {
      deepest = n.a.top();
      out.depth_events.push_back({idx, deepest});
    }
    if (n.a.top() == opt_.max_degree && !n.a.terminated()) {
      out.witnesses.push_back({idx, canonicalize(n.a)});
      return;
    }
    for (const SNode &c : children(n)) {
      dfs(c, cap, out, deepest);
      if (!out.complete)
        return;
    }
  }

  const SearchOptions &opt_;
  unsigned p_;
  std::vector<CentralizerPoint> palette_;
  std::vector<RowMatrix> forms_[3][5];
  std::vector<Vector> pts1_, pts2_;
};

} // namespace

SearchResult thin_search(const SearchOptions &opt, const std::optional<GradedAlgebra> &seed)
{
  if (opt.max_degree > degree_cap())
    throw Error(Error::Kind::CapExceeded,
                "max degree " + std::to_string(opt.max_degree) + " exceeds cap " + std::to_string(degree_cap()));
  if (opt.target_k < 3 || opt.max_degree < opt.target_k)
    throw Error(Error::Kind::InvalidArgument, "need 3 <= target_k <= max_degree");
  if (opt.qbar != 0 && opt.qbar < 3)
    throw Error(Error::Kind::InvalidArgument, "qbar must be 0 or at least 3");
  Field check(opt.p);
  Searcher s(opt);
  s.init_points();

  SNode root{seed ? *seed : free_start(opt.p), false};
  if (root.a.characteristic() != opt.p)
    throw Error(Error::Kind::InvalidArgument, "seed has a different characteristic");
  if (seed) {
    for (const CentralizerPoint &c : centralizer_sequence(*seed))
      if (c.is_point() && c.kind != CentralizerPoint::Kind::Y)
        root.has_second = true;
  }

  // Fixed split: nodes reaching the split degree become tasks.
  const int split = std::min(opt.max_degree, std::max(root.a.top(), opt.target_k + 2));
  std::size_t pre_nodes = 0;
  int pre_deepest = 0;
  std::vector<SNode> tasks;
  std::vector<SNode> stack{root};
  while (!stack.empty()) {
    SNode n = std::move(stack.back());
    stack.pop_back();
    if (n.a.top() >= split) {
      tasks.push_back(std::move(n));
      continue;
    }
    ++pre_nodes;
    pre_deepest = std::max(pre_deepest, n.a.top());
    auto kids = s.children(n);
    for (auto k = kids.rbegin(); k != kids.rend(); ++k)
      stack.push_back(std::move(*k));
  }

  const std::size_t budget = opt.branch_limit;
  std::vector<TaskOut> outs(tasks.size());
  if (opt.workers <= 1) {
    std::size_t used = pre_nodes;
    for (std::size_t i = 0; i < tasks.size() && used < budget; ++i) {
      int deepest = 0;
      s.dfs(tasks[i], budget - used, outs[i], deepest);
      used += outs[i].nodes;
    }
  } else {
    detail::run_indexed(tasks.size(), opt.workers, [&](std::size_t i) {
      int deepest = 0;
      s.dfs(tasks[i], budget, outs[i], deepest);
    });
  }

  SearchResult res;
  res.deepest_degree = pre_deepest;
  std::size_t used = std::min(pre_nodes, budget);
  res.exhausted = pre_nodes <= budget;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (used >= budget) {
      res.exhausted = false;
      break;
    }
    const std::size_t remaining = budget - used;
    TaskOut &o = outs[i];
    for (auto &[idx, w] : o.witnesses)
      if (idx < remaining)
        res.witnesses.push_back(std::move(w));
    for (auto &[idx, dpt] : o.depth_events)
      if (idx < remaining)
        res.deepest_degree = std::max(res.deepest_degree, dpt);
    if (!o.complete || o.nodes > remaining) {
      res.exhausted = false;
      used = budget;
    } else {
      used += o.nodes;
    }
  }
  res.nodes = used;
  if (!res.witnesses.empty())
    res.status = SearchResult::Status::Found;
  else if (res.exhausted)
    res.status = SearchResult::Status::Unsatisfiable;
  else
    res.status = SearchResult::Status::LimitReached;
  return res;
}

} // namespace gradalg
