#include <novikov/numeric.hpp>

#include <cctype>
#include <limits>

#include <novikov/error.hpp>

namespace novikov
{

namespace
{

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

Integer parse_integer(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw ParseError("malformed integer in '" + std::string(whole) + "'");
    }
    Integer v{std::string(s)};
    return negative ? Integer(-v) : v;
}

Integer pow10(long e)
{
    Integer r = 1;
    for (long i = 0; i < e; ++i) {
        r *= 10;
    }
    return r;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto s = trim(text);
    if (s.empty()) {
        throw ParseError("empty rational");
    }
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(s.substr(0, slash), s);
        const Integer den = parse_integer(s.substr(slash + 1), s);
        if (den == 0) {
            throw ParseError("zero denominator in '" + std::string(s) + "'");
        }
        return Rational(num, den);
    }

    // Decimal with optional fraction and exponent.
    std::string_view rest = s;
    bool negative = false;
    if (rest.front() == '-' || rest.front() == '+') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
        const auto exp_text = rest.substr(e + 1);
        const Integer ev = parse_integer(exp_text, s);
        if (abs(ev) > 4096) {
            throw ParseError("exponent out of range in '" + std::string(s) + "'");
        }
        exponent = ev.convert_to<long>();
        rest = rest.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
        const auto ip = rest.substr(0, dot);
        const auto fp = rest.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
            throw ParseError("malformed decimal '" + std::string(s) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        frac_len = static_cast<long>(fp.size());
    } else {
        if (!all_digits(rest)) {
            throw ParseError("malformed number '" + std::string(s) + "'");
        }
        digits = std::string(rest);
    }
    Integer mant(digits);
    if (negative) {
        mant = -mant;
    }
    const long scale = exponent - frac_len;
    if (scale >= 0) {
        return Rational(Integer(mant * pow10(scale)));
    }
    return Rational(mant, pow10(-scale));
}

Real parse_real(std::string_view text)
{
    const auto s = trim(text);
    if (s == "inf" || s == "+inf" || s == "infinity") {
        return real_infinity();
    }
    if (s.find('/') != std::string_view::npos) {
        return to_real(parse_rational(s));
    }
    // Validate through the exact parser, then let the float backend round the
    // decimal string itself so long expansions keep their precision.
    (void)parse_rational(s);
    return Real(std::string(s));
}

std::string format_rational(const Rational& q)
{
    const Integer num = numerator(q);
    const Integer den = denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

std::string format_real(const Real& x)
{
    if (boost::multiprecision::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0) {
        return "0";
    }
    return x.str(40);
}

Real to_real(const Rational& q)
{
    return Real(numerator(q)) / Real(denominator(q));
}

std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace novikov
