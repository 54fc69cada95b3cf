#ifndef GRADALG_IO_HPP
#define GRADALG_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradalg/algebra.hpp"
#include "gradalg/maxclass.hpp"
#include "gradalg/thin.hpp"

namespace gradalg {

using Json = nlohmann::ordered_json;

/// Centralizer string: tokens y, x, x+y, x+2y, ..., all, none, dia, each
/// with an optional ^k repetition.  The first token is C_2.
CentralizerSeq parse_centralizers(const std::string &text, unsigned p);
std::string format_centralizers(const CentralizerSeq &seq);

/// Constituent pattern "Q=8: 8,7,8^2,7": the full list of constituent
/// lengths, the first of which must equal Q.  With dim, the result is padded
/// with y or truncated to dim - 3 entries.
CentralizerSeq parse_pattern(const std::string &text, std::optional<int> dim = {});

/// Left-normed word "y x^6 y x^5".
std::vector<Letter> parse_word(const std::string &text);

/// Coefficient row as hex: packed bits for p = 2 (first coordinate in the
/// high bit of the first digit), two digits per coefficient otherwise.
std::string encode_row(const Vector &v);
Vector decode_row(const std::string &hex, unsigned p, std::size_t n);

Json algebra_to_json(const GradedAlgebra &a);
/// Validates shape, definitions and Jacobi.
GradedAlgebra algebra_from_json(const Json &j);

GradedAlgebra load_algebra(const std::string &path);
void save_algebra(const GradedAlgebra &a, const std::string &path);

Json analysis_json(const GradedAlgebra &a);
Json enumeration_json(const EnumerationReport &r);
Json theorem_json(const TheoremReport &r);
Json search_json(const SearchOptions &opt, const SearchResult &r);

/// Stable text form used for every artifact.
std::string dump(const Json &j);
/// Human readable rendering of a JSON document.
std::string render_table(const Json &j);

} // namespace gradalg

#endif // GRADALG_IO_HPP
