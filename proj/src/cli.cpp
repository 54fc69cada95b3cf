#include "gradalg/cli.hpp"

#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gradalg/error.hpp"
#include "gradalg/field.hpp"
#include "gradalg/io.hpp"
#include "gradalg/maxclass.hpp"
#include "gradalg/thin.hpp"

namespace gradalg {

namespace {

struct Common {
  std::string out_path;
  std::string format = "table";
};

void add_common(CLI::App *sub, Common &c)
{
  sub->add_option("--out", c.out_path, "Write the JSON artifact to this file");
  sub->add_option("--format", c.format, "Standard output format")->check(CLI::IsMember({"json", "table"}));
}

void write_file(const std::string &path, const std::string &text)
{
  std::ofstream f(path);
  if (!f)
    throw Error(Error::Kind::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

void emit(const Json &j, const Common &c, std::ostream &out)
{
  if (!c.out_path.empty())
    write_file(c.out_path, dump(j));
  if (c.format == "json")
    out << dump(j);
  else
    out << render_table(j);
}

void check_char(unsigned p)
{
  if (p < 2 || p > 251 || !is_prime(p))
    throw Error(Error::Kind::InvalidArgument, "--char must be a prime at most 251");
}

} // namespace

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Graded Lie algebras of maximal class and thin Lie algebras over F_p"};
  app.require_subcommand(1, 1);

  unsigned p = 2;
  std::optional<int> dim;
  std::string centralizers, pattern, in_path, seed_path, first_path, palette = "two";
  EnumerateOptions eopt;
  SearchOptions sopt;
  Common common;

  CLI::App *build = app.add_subcommand("build", "Build an algebra from a centralizer string or pattern");
  build->add_option("--char", p, "Characteristic");
  auto *copt = build->add_option("--centralizers", centralizers, "Centralizer string, e.g. 'y^6 x y^6 x'");
  auto *popt = build->add_option("--pattern", pattern, "Constituent pattern, e.g. 'Q=8: 8,7,8^2,7'");
  copt->excludes(popt);
  build->add_option("--dim", dim, "Pad or truncate to this dimension");
  add_common(build, common);

  CLI::App *analyze = app.add_subcommand("analyze", "Analyze an algebra JSON file");
  analyze->add_option("--in", in_path, "Algebra JSON")->required();
  add_common(analyze, common);

  CLI::App *enumerate = app.add_subcommand("enumerate", "Enumerate algebras of maximal class");
  enumerate->add_option("--char", p, "Characteristic");
  enumerate->add_option("--max-degree", eopt.max_degree, "Largest degree")->required();
  enumerate->add_option("--palette", palette, "Centralizer palette")->check(CLI::IsMember({"two", "all"}));
  enumerate->add_option("--workers", eopt.workers, "Worker threads");
  enumerate->add_flag("--all-nodes", eopt.all_nodes, "List every node, not only maximal prefixes");
  add_common(enumerate, common);

  CLI::App *search = app.add_subcommand("search", "Search for thin algebras with a given second diamond");
  search->add_option("--char", p, "Characteristic");
  search->add_option("--qbar", sopt.qbar, "First constituent length (0 = any)");
  search->add_option("--target-k", sopt.target_k, "Degree of the second diamond")->required();
  search->add_option("--max-degree", sopt.max_degree, "Degree to build through")->required();
  search->add_option("--branch-limit", sopt.branch_limit, "Node budget");
  search->add_option("--workers", sopt.workers, "Worker threads");
  search->add_option("--seed", seed_path, "Start from this algebra JSON");
  search->add_option("--first", first_path, "Write the first witness as algebra JSON");
  add_common(search, common);

  CLI::App *verify = app.add_subcommand("verify", "Check the structure theorem on an algebra JSON file");
  verify->add_option("--in", in_path, "Algebra JSON")->required();
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) {
      check_char(p);
      CentralizerSeq seq;
      if (!pattern.empty())
        seq = parse_pattern(pattern, dim);
      else if (!centralizers.empty()) {
        seq = parse_centralizers(centralizers, p);
        if (dim) {
          if (*dim < 3)
            throw Error(Error::Kind::ParseError, "dimension must be at least 3");
          seq.resize(static_cast<std::size_t>(*dim - 3), CentralizerPoint::y());
        }
      } else
        throw Error(Error::Kind::ParseError, "build needs --centralizers or --pattern");
      const int top = static_cast<int>(seq.size()) + 2;
      if (top > degree_cap() + 1)
        throw Error(Error::Kind::CapExceeded, "degree " + std::to_string(top) + " exceeds the cap " +
                                                  std::to_string(degree_cap()));
      emit(algebra_to_json(from_centralizers(seq, p)), common, out);
    } else if (analyze->parsed()) {
      emit(analysis_json(load_algebra(in_path)), common, out);
    } else if (enumerate->parsed()) {
      check_char(p);
      eopt.p = p;
      eopt.palette = palette == "all" ? Palette::All : Palette::Two;
      emit(enumeration_json(enumerate_maxclass(eopt)), common, out);
    } else if (search->parsed()) {
      check_char(p);
      sopt.p = p;
      std::optional<GradedAlgebra> seed;
      if (!seed_path.empty())
        seed = load_algebra(seed_path);
      SearchResult r = thin_search(sopt, seed);
      if (!first_path.empty() && !r.witnesses.empty())
        save_algebra(r.witnesses.front(), first_path);
      emit(search_json(sopt, r), common, out);
    } else if (verify->parsed()) {
      TheoremReport r = verify_structure_theorem(load_algebra(in_path));
      emit(theorem_json(r), common, out);
      if (r.any_fail())
        return 2;
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace gradalg
