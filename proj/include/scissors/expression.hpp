#pragma once

// Small expression language for numeric literals in input files and on the
// command line: "0.3+0.4i", "1/2 + sqrt(3)/2*i", "exp(i*pi/3)", "acos(1/3)".
//
// Operators + - * / ^ (integer exponents), parentheses, constants i and pi,
// functions sqrt exp log sin cos acos. A number immediately followed by i is
// imaginary. Decimals are read exactly before rounding.

#include <string_view>

#include "scissors/real.hpp"

namespace scissors {

Complex parse_complex(std::string_view text, long bits);
/// As parse_complex, but rejects a nonzero imaginary part.
Real parse_real(std::string_view text, long bits);
/// Exact rational: "3", "-3/2", "0.125", "1e-3".
mpq_class parse_rational(std::string_view text);
/// One unit in the last printed decimal place of a plain decimal literal
/// ("4.396672801932495" -> 1e-15), covering both rounded and truncated
/// printing; zero for integers and rationals.
mpq_class literal_uncertainty(std::string_view text);

std::string format_rational(const mpq_class& q);

}  // namespace scissors
