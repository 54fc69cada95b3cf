#include "gradalg/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"

namespace gradalg {

namespace {

[[noreturn]] void parse_fail(const std::string &what, std::optional<int> degree = {})
{
  throw Error(Error::Kind::ParseError, what, degree);
}

std::string trim(const std::string &s)
{
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return s.substr(b, e - b);
}

// Splits "tok^k" into tok and k.
std::pair<std::string, int> split_power(const std::string &tok)
{
  std::size_t caret = tok.find('^');
  if (caret == std::string::npos)
    return {tok, 1};
  std::string base = tok.substr(0, caret);
  std::string rep = tok.substr(caret + 1);
  if (base.empty() || rep.empty() || rep.size() > 6)
    parse_fail("bad repetition '" + tok + "'");
  for (char c : rep)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      parse_fail("bad repetition '" + tok + "'");
  int k = std::stoi(rep);
  if (k < 1)
    parse_fail("repetition must be positive in '" + tok + "'");
  return {base, k};
}

std::vector<std::string> words_of(const std::string &text)
{
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

CentralizerPoint parse_point(const std::string &tok, unsigned p, int degree)
{
  if (tok == "y")
    return CentralizerPoint::y();
  if (tok == "x")
    return CentralizerPoint::x();
  if (tok == "all")
    return CentralizerPoint::all();
  if (tok == "none")
    return CentralizerPoint::none();
  if (tok == "dia")
    return CentralizerPoint::diamond();
  // x+y, x+2y, ...
  if (tok.size() >= 3 && tok.compare(0, 2, "x+") == 0 && tok.back() == 'y') {
    std::string num = tok.substr(2, tok.size() - 3);
    unsigned beta = 1;
    if (!num.empty()) {
      for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          parse_fail("unknown centralizer '" + tok + "'", degree);
      beta = static_cast<unsigned>(std::stoul(num));
    }
    if (beta == 0 || beta >= p)
      parse_fail("coefficient out of range in '" + tok + "'", degree);
    return CentralizerPoint::other(beta);
  }
  parse_fail("unknown centralizer '" + tok + "'", degree);
}

std::string compress(const std::vector<std::string> &items, const char *sep)
{
  std::string out;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t j = i;
    while (j < items.size() && items[j] == items[i])
      ++j;
    if (!out.empty())
      out += sep;
    out += items[i];
    if (j - i > 1)
      out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

int to_int(const Json &j, const char *what)
{
  if (!j.is_number_integer())
    parse_fail(std::string("expected an integer for ") + what);
  return j.get<int>();
}

template <class Map> Json counts_json(const Map &m)
{
  Json o = Json::object();
  for (const auto &[k, v] : m)
    o[std::to_string(k)] = v;
  return o;
}

const char *diamond_type_name(DiamondReport::Type t)
{
  switch (t) {
  case DiamondReport::Type::Finite: return "finite";
  case DiamondReport::Type::Infinity: return "infinity";
  case DiamondReport::Type::Fake0: return "fake-0";
  case DiamondReport::Type::Fake1: return "fake-1";
  case DiamondReport::Type::Untyped: return "untyped";
  }
  return "untyped";
}

Json constituents_json(const ConstituentAnalysis &c)
{
  Json o;
  o["metabelian"] = c.metabelian;
  o["qbar"] = c.qbar ? Json(*c.qbar) : Json(nullptr);
  o["q"] = c.q ? Json(*c.q) : Json(nullptr);
  o["e"] = c.e ? Json(*c.e) : Json(nullptr);
  o["lengths"] = c.lengths;
  o["trailing"] = c.trailing;
  o["distinct_centralizers"] = c.distinct_centralizers;
  o["closings"] = c.closings;
  return o;
}

std::string pattern_string(const ConstituentAnalysis &c)
{
  if (!c.qbar)
    return "";
  std::vector<std::string> items{std::to_string(*c.qbar)};
  for (int l : c.lengths)
    items.push_back(std::to_string(l));
  return "Q=" + std::to_string(*c.qbar) + ": " + compress(items, ",");
}

} // namespace

CentralizerSeq parse_centralizers(const std::string &text, unsigned p)
{
  CentralizerSeq seq;
  for (const std::string &w : words_of(text)) {
    auto [base, k] = split_power(w);
    CentralizerPoint c = parse_point(base, p, static_cast<int>(seq.size()) + 2);
    for (int i = 0; i < k; ++i)
      seq.push_back(c);
  }
  if (seq.empty())
    parse_fail("empty centralizer string");
  return seq;
}

std::string format_centralizers(const CentralizerSeq &seq)
{
  std::vector<std::string> items;
  for (const auto &c : seq)
    items.push_back(c.token());
  return compress(items, " ");
}

CentralizerSeq parse_pattern(const std::string &text, std::optional<int> dim)
{
  std::string t = trim(text);
  std::size_t colon = t.find(':');
  if (t.size() < 3 || t[0] != 'Q' || t[1] != '=' || colon == std::string::npos)
    parse_fail("pattern must look like 'Q=8: 8,7,8^2,7'");
  std::string qs = trim(t.substr(2, colon - 2));
  if (qs.empty() || qs.size() > 6 || qs.find_first_not_of("0123456789") != std::string::npos)
    parse_fail("bad Q in pattern");
  const int q = std::stoi(qs);
  if (q < 2)
    parse_fail("Q must be at least 2");
  std::vector<int> lengths;
  std::stringstream list(t.substr(colon + 1));
  std::string item;
  while (std::getline(list, item, ',')) {
    item = trim(item);
    auto [base, k] = split_power(item);
    if (base.empty() || base.size() > 6 || base.find_first_not_of("0123456789") != std::string::npos)
      parse_fail("bad length '" + item + "' in pattern");
    int len = std::stoi(base);
    if (len < 1)
      parse_fail("constituent lengths must be positive");
    for (int i = 0; i < k; ++i)
      lengths.push_back(len);
  }
  if (lengths.empty())
    parse_fail("pattern has no constituents");
  if (lengths[0] != q)
    parse_fail("first constituent " + std::to_string(lengths[0]) + " differs from Q=" + std::to_string(q));
  CentralizerSeq seq;
  for (int i = 0; i < q - 2; ++i)
    seq.push_back(CentralizerPoint::y());
  seq.push_back(CentralizerPoint::x());
  for (std::size_t c = 1; c < lengths.size(); ++c) {
    for (int i = 0; i < lengths[c] - 1; ++i)
      seq.push_back(CentralizerPoint::y());
    seq.push_back(CentralizerPoint::x());
  }
  if (dim) {
    if (*dim < 3)
      parse_fail("dimension must be at least 3");
    seq.resize(static_cast<std::size_t>(*dim - 3), CentralizerPoint::y());
  }
  return seq;
}

std::vector<Letter> parse_word(const std::string &text)
{
  std::vector<Letter> word;
  for (const std::string &w : words_of(text)) {
    auto [base, k] = split_power(w);
    Letter z;
    if (base == "x")
      z = Letter::X;
    else if (base == "y")
      z = Letter::Y;
    else
      parse_fail("unknown letter '" + base + "' in word");
    for (int i = 0; i < k; ++i)
      word.push_back(z);
  }
  if (word.empty())
    parse_fail("empty word");
  return word;
}

std::string encode_row(const Vector &v)
{
  static const char digits[] = "0123456789abcdef";
  std::string out;
  const std::size_t n = v.size();
  if (v.characteristic() == 2) {
    for (std::size_t i = 0; i < n; i += 4) {
      unsigned d = 0;
      for (std::size_t b = 0; b < 4; ++b)
        d = (d << 1) | (i + b < n ? v.get(i + b) : 0u);
      out += digits[d];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      unsigned c = v.get(i);
      out += digits[c >> 4];
      out += digits[c & 15];
    }
  }
  return out;
}

Vector decode_row(const std::string &hex, unsigned p, std::size_t n)
{
  auto nibble = [&](char c) -> unsigned {
    if (c >= '0' && c <= '9')
      return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f')
      return static_cast<unsigned>(c - 'a' + 10);
    parse_fail(std::string("bad hex digit '") + c + "'");
  };
  Vector v(p, n);
  if (p == 2) {
    if (hex.size() != (n + 3) / 4)
      parse_fail("row '" + hex + "' has the wrong length for " + std::to_string(n) + " coordinates");
    for (std::size_t i = 0; i < hex.size(); ++i) {
      unsigned d = nibble(hex[i]);
      for (std::size_t b = 0; b < 4; ++b) {
        unsigned bit = (d >> (3 - b)) & 1u;
        if (4 * i + b < n)
          v.set(4 * i + b, bit);
        else if (bit)
          parse_fail("nonzero padding in row '" + hex + "'");
      }
    }
  } else {
    if (hex.size() != 2 * n)
      parse_fail("row '" + hex + "' has the wrong length for " + std::to_string(n) + " coordinates");
    for (std::size_t i = 0; i < n; ++i) {
      unsigned c = nibble(hex[2 * i]) * 16 + nibble(hex[2 * i + 1]);
      if (c >= p)
        parse_fail("coefficient " + std::to_string(c) + " out of range");
      v.set(i, c);
    }
  }
  return v;
}

Json algebra_to_json(const GradedAlgebra &a)
{
  Json j;
  j["char"] = a.characteristic();
  j["dims"] = a.dims();
  Json defs = Json::array();
  for (int s = 2; s <= a.top(); ++s)
    for (const Def &d : a.level(s).defs)
      defs.push_back(Json::array({a.global_index(s - 1, d.parent), std::string(1, letter_char(d.letter))}));
  j["defs"] = defs;
  for (Letter z : {Letter::X, Letter::Y}) {
    Json per = Json::array();
    for (int s = 1; s < a.top(); ++s) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < a.dim(s); ++i)
        rows.push_back(encode_row(a.ad(s, i, z)));
      per.push_back(rows);
    }
    j[z == Letter::X ? "ad_x" : "ad_y"] = per;
  }
  return j;
}

GradedAlgebra algebra_from_json(const Json &j)
{
  if (!j.is_object())
    parse_fail("algebra JSON must be an object");
  for (const char *key : {"char", "dims", "defs", "ad_x", "ad_y"})
    if (!j.contains(key))
      parse_fail(std::string("missing key '") + key + "'");
  const int pc = to_int(j["char"], "char");
  if (pc < 2 || pc > static_cast<int>(Field::kMaxPrime) || !is_prime(static_cast<unsigned>(pc)))
    parse_fail("char must be a prime at most 251");
  const unsigned p = static_cast<unsigned>(pc);
  const Json &jd = j["dims"];
  if (!jd.is_array() || jd.empty())
    parse_fail("dims must be a nonempty array");
  std::vector<std::size_t> dims;
  for (const Json &d : jd) {
    int v = to_int(d, "dims entry");
    if (v < 0)
      parse_fail("negative dimension");
    dims.push_back(static_cast<std::size_t>(v));
  }
  if (dims[0] != 2)
    parse_fail("dims[0] must be 2", 1);
  const int top = static_cast<int>(dims.size());
  std::size_t ndefs = 0;
  for (int s = 2; s <= top; ++s) {
    if (dims[s - 1] > 2 * dims[s - 2])
      parse_fail("component larger than twice the previous one", s);
    ndefs += dims[s - 1];
  }
  const Json &jdefs = j["defs"];
  if (!jdefs.is_array() || jdefs.size() != ndefs)
    parse_fail("defs must list one entry per basis element of degree >= 2");
  const Json &jx = j["ad_x"];
  const Json &jy = j["ad_y"];
  const std::size_t nad = top > 1 ? static_cast<std::size_t>(top - 1) : 0;
  if (!jx.is_array() || !jy.is_array() || jx.size() != nad || jy.size() != nad)
    parse_fail("ad_x and ad_y need one entry per degree 1.." + std::to_string(top - 1));

  GradedAlgebra a(p);
  std::size_t base = 0; // global index of the first element of degree s-1
  std::size_t di = 0;
  for (int s = 2; s <= top; ++s) {
    const std::size_t prev = dims[s - 2];
    const std::size_t cur = dims[s - 1];
    const Json &rx = jx[s - 2];
    const Json &ry = jy[s - 2];
    if (!rx.is_array() || !ry.is_array() || rx.size() != prev || ry.size() != prev)
      parse_fail("wrong number of ad rows", s - 1);
    std::vector<std::vector<Vector>> ad(prev);
    for (std::size_t e = 0; e < prev; ++e) {
      if (!rx[e].is_string() || !ry[e].is_string())
        parse_fail("ad rows must be hex strings", s - 1);
      ad[e].push_back(decode_row(rx[e].get<std::string>(), p, cur));
      ad[e].push_back(decode_row(ry[e].get<std::string>(), p, cur));
    }
    std::vector<Def> defs;
    for (std::size_t i = 0; i < cur; ++i, ++di) {
      const Json &d = jdefs[di];
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_string())
        parse_fail("each def must be [parent_index, \"x\"|\"y\"]", s);
      long long g = d[0].get<long long>();
      std::string z = d[1].get<std::string>();
      if (z != "x" && z != "y")
        parse_fail("def letter must be x or y", s);
      if (g < static_cast<long long>(base) || g >= static_cast<long long>(base + prev))
        parse_fail("def parent " + std::to_string(g) + " is not of degree " + std::to_string(s - 1), s);
      Def def{static_cast<std::size_t>(g) - base, z == "x" ? Letter::X : Letter::Y};
      if (!(ad[def.parent][static_cast<std::size_t>(def.letter)] == Vector::unit(p, cur, i)))
        throw Error(Error::Kind::InconsistentBase,
                    "element " + std::to_string(i) + " does not equal its defining bracket", s);
      defs.push_back(def);
    }
    base += prev;
    a = a.append_level(std::move(defs), ad, false);
  }
  JacobiResult jr = check_jacobi(a, JacobiMode::GeneratorTriples);
  if (!jr.ok) {
    int deg = 0;
    for (auto &t : jr.triple)
      deg += t.first;
    throw Error(Error::Kind::InconsistentBase, "Jacobi fails: " + jr.identity, deg);
  }
  return a;
}

GradedAlgebra load_algebra(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    parse_fail("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    parse_fail(path + ": " + e.what());
  }
  return algebra_from_json(j);
}

void save_algebra(const GradedAlgebra &a, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
    throw Error(Error::Kind::InvalidArgument, "cannot write '" + path + "'");
  out << dump(algebra_to_json(a));
}

Json analysis_json(const GradedAlgebra &a)
{
  Json j;
  j["char"] = a.characteristic();
  j["dims"] = a.dims();
  j["total_dim"] = a.total_dim();
  j["built_degree"] = a.top();
  if (a.top() < 2 || a.dim(2) == 0) {
    j["summary"] = "not 2-generated beyond degree 1";
    return j;
  }
  CentralizerSeq seq = centralizer_sequence(a);
  j["centralizers"] = format_centralizers(seq);
  bool maxclass = true;
  for (int s = 2; s <= a.top(); ++s)
    if (a.dim(s) > 1)
      maxclass = false;
  const bool covering = a.top() < 2 || check_covering(a, a.top() - 1).ok;
  j["class"] = maxclass ? "maximal class" : covering ? "thin" : "other";

  // constituents of the maximal class part
  CentralizerSeq prefix;
  for (const auto &c : seq) {
    if (!c.is_point() && c.kind != CentralizerPoint::Kind::All)
      break;
    prefix.push_back(c);
  }
  std::string summary;
  if (!prefix.empty()) {
    ConstituentAnalysis ca = constituent_lengths(prefix, a.characteristic());
    j["constituents"] = constituents_json(ca);
    if (ca.qbar)
      j["pattern"] = pattern_string(ca);
    if (ca.metabelian)
      summary = "metabelian; no constituents";
    else
      summary = std::to_string(ca.constituent_count()) + (ca.constituent_count() == 1 ? " constituent; " : " constituents; ") +
                pattern_string(ca);
  } else {
    j["constituents"] = nullptr;
  }

  Json dj = Json::array();
  for (const DiamondReport &d : diamond_scan(a)) {
    Json o;
    o["degree"] = d.degree;
    o["genuine"] = d.genuine;
    o["type"] = diamond_type_name(d.type);
    o["mu"] = d.mu_string();
    o["ambiguous"] = d.ambiguous;
    o["note"] = d.note;
    dj.push_back(o);
  }
  j["diamonds"] = dj;
  if (!maxclass)
    summary += std::string(summary.empty() ? "" : "; ") + std::to_string(dj.size()) + " diamonds";

  Json mj;
  if (a.top() >= 5)
    mj["L/L^6"] = is_metabelian_through(a, 6);
  if (auto k = second_diamond(a))
    mj["L/L^k"] = is_metabelian_through(a, *k);
  mj["L"] = is_metabelian_through(a, a.top() + 1);
  j["metabelian"] = mj;
  j["covering"] = covering;
  j["summary"] = summary;
  return j;
}

Json enumeration_json(const EnumerationReport &r)
{
  Json j;
  j["char"] = r.p;
  j["max_degree"] = r.max_degree;
  j["palette"] = r.palette == Palette::Two ? "two" : "all";
  j["nodes"] = r.nodes;
  j["leaves"] = r.leaves;
  j["qbar_counts"] = counts_json(r.qbar_counts);
  Json lc = Json::object();
  for (const auto &[q, m] : r.length_counts)
    lc[std::to_string(q)] = counts_json(m);
  j["length_counts"] = lc;
  j["distinct_counts"] = counts_json(r.distinct_counts);
  j["exceptional_qbar"] = counts_json(r.exceptional_qbar);
  Json pre = Json::array();
  for (const auto &s : r.prefixes)
    pre.push_back(format_centralizers(s));
  j["prefixes"] = pre;
  return j;
}

Json theorem_json(const TheoremReport &r)
{
  auto opt = [](const std::optional<int> &v) { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["char"] = r.p;
  j["thin"] = r.thin;
  j["k"] = opt(r.k);
  j["qbar"] = opt(r.qbar);
  j["r"] = opt(r.r);
  j["n"] = opt(r.n);
  j["dim"] = r.dim;
  j["built_degree"] = r.built_degree;
  j["dim_bound"] = r.dim_bound;
  j["M_constituents"] = r.m_lengths;
  j["M_centralizers"] = r.m_centralizers;
  Json cl = Json::array();
  for (const Clause &c : r.clauses) {
    Json o;
    o["id"] = c.id;
    o["status"] = status_name(c.status);
    o["detail"] = c.detail;
    cl.push_back(o);
  }
  j["clauses"] = cl;
  j["notes"] = r.notes;
  return j;
}

Json search_json(const SearchOptions &opt, const SearchResult &r)
{
  Json j;
  j["char"] = opt.p;
  j["qbar"] = opt.qbar;
  j["target_k"] = opt.target_k;
  j["max_degree"] = opt.max_degree;
  j["branch_limit"] = opt.branch_limit;
  j["status"] = status_name(r.status);
  j["nodes"] = r.nodes;
  j["deepest_degree"] = r.deepest_degree;
  j["exhausted"] = r.exhausted;
  Json w = Json::array();
  for (const auto &a : r.witnesses) {
    Json o;
    o["centralizers"] = format_centralizers(centralizer_sequence(a));
    o["algebra"] = algebra_to_json(a);
    w.push_back(o);
  }
  j["witnesses"] = w;
  return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

namespace {

bool is_flat(const Json &j)
{
  if (!j.is_array())
    return !j.is_object();
  for (const Json &e : j)
    if (e.is_array() || e.is_object())
      return false;
  return true;
}

std::string scalar_text(const Json &j)
{
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_null())
    return "-";
  if (j.is_array()) {
    std::string s;
    for (const Json &e : j)
      s += (s.empty() ? "" : " ") + scalar_text(e);
    return s.empty() ? "-" : s;
  }
  return j.dump();
}

// Nonempty array of flat objects sharing the same keys.
bool is_record_list(const Json &j)
{
  if (!j.is_array() || j.empty() || !j.front().is_object())
    return false;
  std::vector<std::string> keys;
  for (const auto &[k, v] : j.front().items())
    keys.push_back(k);
  for (const Json &e : j) {
    if (!e.is_object() || e.size() != keys.size())
      return false;
    for (const auto &k : keys)
      if (!e.contains(k) || !is_flat(e[k]))
        return false;
  }
  return true;
}

void render(const Json &j, int indent, std::ostringstream &out)
{
  std::size_t width = 0;
  if (j.is_object())
    for (const auto &[k, v] : j.items())
      width = std::max(width, k.size());
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto &[k, v] : j.items()) {
      if (is_flat(v)) {
        out << pad << k << std::string(width - k.size() + 2, ' ') << scalar_text(v) << "\n";
      } else {
        out << pad << k << ":\n";
        render(v, indent + 2, out);
      }
    }
  } else if (is_record_list(j)) {
    std::vector<std::string> keys;
    for (const auto &[k, v] : j.front().items())
      keys.push_back(k);
    std::vector<std::size_t> w(keys.size());
    std::vector<std::vector<std::string>> cells;
    for (const Json &e : j) {
      std::vector<std::string> row;
      for (const auto &k : keys)
        row.push_back(scalar_text(e[k]));
      cells.push_back(row);
    }
    for (std::size_t c = 0; c < keys.size(); ++c) {
      w[c] = keys[c].size();
      for (const auto &row : cells)
        w[c] = std::max(w[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string> &row) {
      std::string l = pad;
      for (std::size_t c = 0; c < row.size(); ++c)
        l += row[c] + (c + 1 < row.size() ? std::string(w[c] - row[c].size() + 2, ' ') : "");
      out << l << "\n";
    };
    line(keys);
    for (const auto &row : cells)
      line(row);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const Json &e : j) {
      if (is_flat(e)) {
        out << pad << "- " << scalar_text(e) << "\n";
      } else {
        out << pad << "[" << i << "]\n";
        render(e, indent + 2, out);
      }
      ++i;
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

} // namespace

std::string render_table(const Json &j)
{
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

} // namespace gradalg
