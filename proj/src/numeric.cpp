#include "plancherel/numeric.hpp"

#include "plancherel/errors.hpp"

#include <sstream>

namespace plancherel {

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::exception&) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
}

std::string high_to_string(const HighFloat& x) {
  std::ostringstream out;
  out.precision(std::numeric_limits<HighFloat>::max_digits10);
  out << std::scientific << x;
  return out.str();
}

}  // namespace plancherel
