#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace projdunkl {

using Rational = mpq_class;

/// Parses an exact rational: "3", "-7/4", "+2", or a finite decimal such as
/// "0.125" (converted exactly). Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
Rational pochhammer(const Rational& a, int n);
Rational factorial(int n);

/// Smallest integer >= q.
long ceil_to_long(const Rational& q);
bool is_integer(const Rational& q);

}  // namespace projdunkl
