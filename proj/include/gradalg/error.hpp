#ifndef GRADALG_ERROR_HPP
#define GRADALG_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace gradalg {

class Error : public std::runtime_error {
public:
  enum class Kind {
    ParseError,
    CapExceeded,
    Inadmissible,
    DegreeOutOfRange,
    InconsistentBase,
    DimensionTooLarge,
    NotTwoGenerated,
    NoSecondDiamond,
    Unsatisfiable,
    InvalidArgument,
  };

  Error(Kind kind, const std::string &what, std::optional<int> degree = {})
      : std::runtime_error(format(kind, what, degree)), kind_(kind), degree_(degree)
  {
  }

  Kind kind() const { return kind_; }
  std::optional<int> degree() const { return degree_; }

  static const char *kind_name(Kind k);

private:
  static std::string format(Kind k, const std::string &what, std::optional<int> degree)
  {
    std::string s = kind_name(k);
    if (degree)
      s += " at degree " + std::to_string(*degree);
    if (!what.empty())
      s += ": " + what;
    return s;
  }

  Kind kind_;
  std::optional<int> degree_;
};

inline const char *Error::kind_name(Kind k)
{
  switch (k) {
  case Kind::ParseError: return "ParseError";
  case Kind::CapExceeded: return "CapExceeded";
  case Kind::Inadmissible: return "Inadmissible";
  case Kind::DegreeOutOfRange: return "DegreeOutOfRange";
  case Kind::InconsistentBase: return "InconsistentBase";
  case Kind::DimensionTooLarge: return "DimensionTooLarge";
  case Kind::NotTwoGenerated: return "NotTwoGenerated";
  case Kind::NoSecondDiamond: return "NoSecondDiamond";
  case Kind::Unsatisfiable: return "Unsatisfiable";
  case Kind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

} // namespace gradalg

#endif // GRADALG_ERROR_HPP
