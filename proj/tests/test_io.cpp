#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gradalg/constructions.hpp"
#include "gradalg/error.hpp"
#include "gradalg/io.hpp"
#include "gradalg/maxclass.hpp"
#include "gradalg/thin.hpp"

using namespace gradalg;

namespace {

Error::Kind error_kind(auto &&f)
{
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return Error::Kind::InvalidArgument;
}

GradedAlgebra reload(const GradedAlgebra &a) { return algebra_from_json(Json::parse(dump(algebra_to_json(a)))); }

} // namespace

TEST_CASE("centralizer strings")
{
  CentralizerSeq s = parse_centralizers("y^6 x y^5 x+y x+2y all", 3);
  REQUIRE(s.size() == 15);
  CHECK(s[6] == CentralizerPoint::x());
  CHECK(s[12] == CentralizerPoint::other(1));
  CHECK(s[13] == CentralizerPoint::other(2));
  CHECK(s[14] == CentralizerPoint::all());
  CHECK(format_centralizers(s) == "y^6 x y^5 x+y x+2y all");
  CHECK(format_centralizers(parse_centralizers("y y y none dia", 2)) == "y^3 none dia");
  CHECK(error_kind([] { parse_centralizers("y^6 z", 2); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { parse_centralizers("x+2y", 2); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { parse_centralizers("y^0", 2); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { parse_centralizers("", 2); }) == Error::Kind::ParseError);
  try {
    parse_centralizers("y y y q", 2);
  } catch (const Error &e) {
    CHECK(e.degree() == 5);
  }
}

TEST_CASE("constituent patterns")
{
  CentralizerSeq s = parse_pattern("Q=8: 8,7,8^2,7,7", 47);
  CHECK(s.size() == 44);
  CHECK(s == bi_zassenhaus_pattern({2, 2}, 47));
  CHECK(format_centralizers(parse_pattern("Q=4: 4,3")) == "y^2 x y^2 x");
  CHECK(parse_pattern("Q=4: 4,3", 12).size() == 9);
  CHECK(parse_pattern("Q=8: 8,7,8", 10).size() == 7);
  CHECK(error_kind([] { parse_pattern("Q=8: 7,8"); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { parse_pattern("8,7"); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { parse_pattern("Q=8: 8,a"); }) == Error::Kind::ParseError);
}

TEST_CASE("words")
{
  auto w = parse_word("y x^6 y x^5");
  CHECK(w.size() == 13);
  CHECK(w[0] == Letter::Y);
  CHECK(w[7] == Letter::Y);
  CHECK(error_kind([] { parse_word("y z"); }) == Error::Kind::ParseError);
  GradedAlgebra a = bi_zassenhaus_quotient({2, 2}, 47);
  CHECK(eval_word(a, parse_word("y x^7 y x^7")).is_zero());
  CHECK_FALSE(eval_word(a, parse_word("y x^7 y x^6")).is_zero());
}

TEST_CASE("hex rows")
{
  std::mt19937 rng(1);
  for (unsigned p : {2u, 3u, 5u, 251u})
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 9u, 70u}) {
      Vector v(p, n);
      for (std::size_t i = 0; i < n; ++i)
        v.set(i, rng() % p);
      std::string h = encode_row(v);
      CHECK(h.size() == (p == 2 ? (n + 3) / 4 : 2 * n));
      CHECK(decode_row(h, p, n) == v);
    }
  Vector v(2, 5);
  v.set(0, 1);
  v.set(4, 1);
  CHECK(encode_row(v) == "88");
  CHECK(error_kind([] { decode_row("8c", 2, 5); }) == Error::Kind::ParseError);
  CHECK(error_kind([] { decode_row("05", 5, 1); }) == Error::Kind::ParseError);
}

TEST_CASE("algebra JSON round trip")
{
  std::vector<GradedAlgebra> algebras{free_start(3), bi_zassenhaus_quotient({2, 2}, 47), metabelian_maxclass(5, 9)};
  GradedAlgebra f = free_start(2);
  while (f.top() < 7)
    f = extend_full(f);
  algebras.push_back(f);
  SearchOptions opt;
  opt.qbar = 8;
  opt.target_k = 15;
  opt.max_degree = 22;
  for (const auto &w : thin_search(opt).witnesses)
    algebras.push_back(w);
  opt = SearchOptions{3, 0, 9, 15, 100000, 1};
  for (const auto &w : thin_search(opt).witnesses)
    algebras.push_back(w);
  CentralizerSeq ended(5, CentralizerPoint::y());
  ended.push_back(CentralizerPoint::all());
  algebras.push_back(from_centralizers(ended, 2));
  for (const GradedAlgebra &a : algebras) {
    std::string text = dump(algebra_to_json(a));
    GradedAlgebra b = reload(a);
    CHECK(dump(algebra_to_json(b)) == text);
    CHECK(b.dims() == a.dims());
    for (int i = 1; i < a.top(); ++i)
      for (int j = 1; i + j <= a.top(); ++j)
        for (std::size_t u = 0; u < a.dim(i); ++u)
          for (std::size_t v = 0; v < a.dim(j); ++v)
            CHECK(b.product(i, u, j, v) == a.product(i, u, j, v));
  }
  Json j = algebra_to_json(free_start(2));
  CHECK(j.dump() == R"({"char":2,"dims":[2,1],"defs":[[0,"y"]],"ad_x":[["0","8"]],"ad_y":[["8","0"]]})");
}

TEST_CASE("algebra JSON validation")
{
  const Json good = algebra_to_json(bi_zassenhaus_quotient({2, 1}, 12));
  auto with = [&](auto edit) {
    Json j = good;
    edit(j);
    return error_kind([&] { algebra_from_json(j); });
  };
  CHECK(with([](Json &j) { j.erase("defs"); }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["char"] = 4; }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["dims"][0] = 3; }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["ad_x"][2][0] = "zz"; }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["defs"][1][1] = "q"; }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["defs"][1][0] = 0; }) == Error::Kind::ParseError);
  CHECK(with([](Json &j) { j["ad_y"].erase(j["ad_y"].size() - 1); }) == Error::Kind::ParseError);
  // defining row that is not a unit vector
  CHECK(with([](Json &j) { j["ad_x"][2][0] = "0"; }) == Error::Kind::InconsistentBase);
  // a row outside the definitions: caught by Jacobi
  const GradedAlgebra free5 = [] {
    GradedAlgebra f = free_start(3);
    while (f.top() < 5)
      f = extend_full(f);
    return f;
  }();
  Json j = algebra_to_json(free5);
  // find an ad row of degree 3 not used by a definition and change it
  bool changed = false;
  for (std::size_t e = 0; e < free5.dim(3) && !changed; ++e)
    for (Letter z : {Letter::X, Letter::Y}) {
      bool defining = false;
      for (const Def &d : free5.level(4).defs)
        defining |= d.parent == e && d.letter == z;
      if (defining || changed)
        continue;
      Json &row = j[z == Letter::X ? "ad_x" : "ad_y"][2][e];
      Vector v = decode_row(row.get<std::string>(), 3, free5.dim(4));
      v.set(0, (v.get(0) + 1) % 3);
      row = encode_row(v);
      changed = true;
    }
  REQUIRE(changed);
  CHECK(error_kind([&] { algebra_from_json(j); }) == Error::Kind::InconsistentBase);
  CHECK(error_kind([] { load_algebra("/nonexistent/file.json"); }) == Error::Kind::ParseError);
}

TEST_CASE("reports")
{
  EnumerateOptions eo;
  eo.max_degree = 16;
  Json e = enumeration_json(enumerate_maxclass(eo));
  CHECK(e["char"] == 2);
  CHECK(e["palette"] == "two");
  CHECK(e["prefixes"].size() == e["leaves"].get<std::size_t>());

  SearchOptions so;
  so.qbar = 8;
  so.target_k = 15;
  so.max_degree = 22;
  SearchResult r = thin_search(so);
  Json s = search_json(so, r);
  CHECK(s["status"] == "found");
  REQUIRE(!s["witnesses"].empty());
  GradedAlgebra w = algebra_from_json(s["witnesses"][0]["algebra"]);
  Json t = theorem_json(verify_structure_theorem(w));
  CHECK(t["k"] == 15);
  std::vector<std::string> ids;
  for (const auto &c : t["clauses"])
    ids.push_back(c["id"]);
  CHECK(ids == std::vector<std::string>{"main.1", "main.2", "main.3", "thin.4", "thin.5", "thin.6",
                                        "odd.metabelian", "cor.degree-form"});

  Json an = analysis_json(metabelian_maxclass(2, 10));
  CHECK(an["summary"] == "metabelian; no constituents");
  Json bz = analysis_json(bi_zassenhaus_quotient({2, 2}, 47));
  CHECK(bz["pattern"] == "Q=8: 8,7,8^2,7^2");
  CHECK(bz["constituents"]["lengths"] == Json::array({7, 8, 8, 7, 7}));
  Json thin = analysis_json(w);
  CHECK(thin["class"] == "thin");
  bool inf = false;
  for (const auto &d : thin["diamonds"])
    inf |= d["degree"] == 15 && d["mu"] == "inf";
  CHECK(inf);

  std::string table = render_table(t);
  CHECK(table.find("main.1") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);
}
