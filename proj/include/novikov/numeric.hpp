#ifndef NOVIKOV_NUMERIC_HPP
#define NOVIKOV_NUMERIC_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace novikov
{

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// ~50 significant decimal digits; comfortably resolves the default 1e-30
// separation threshold for weights of moderate size.
using Real = boost::multiprecision::cpp_bin_float_50;

// Exponent vector of a monomial in Z^m.
using Monomial = std::vector<std::int64_t>;

// Parses "p", "p/q", "-p/q", or a finite decimal such as "0.125" / "-1.5e-2"
// into an exact rational. Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

// Parses a decimal string (or "inf") into a high-precision real.
Real parse_real(std::string_view text);

// "p/q" or "p" when the denominator is one.
std::string format_rational(const Rational& q);

// Shortest round-trip-stable decimal form used in JSON output; "inf" for
// positive infinity.
std::string format_real(const Real& x);

Real to_real(const Rational& q);

inline Real real_infinity()
{
    return std::numeric_limits<Real>::infinity();
}

// Comma separated list of rationals, as used by the --theta flag.
std::vector<Rational> parse_rational_list(std::string_view text);

} // namespace novikov

#endif
