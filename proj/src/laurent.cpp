#include <novikov/laurent.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace novikov
{

namespace
{

std::vector<LaurentPoly::term_type> normalize(std::size_t nvars, std::vector<LaurentPoly::term_type> terms)
{
    std::map<Monomial, Rational> acc;
    for (auto& [g, c] : terms) {
        if (g.size() != nvars) {
            throw ShapeError("monomial of length " + std::to_string(g.size()) + " in a ring of "
                             + std::to_string(nvars) + " variables");
        }
        acc[std::move(g)] += c;
    }
    std::vector<LaurentPoly::term_type> out;
    out.reserve(acc.size());
    for (auto& [g, c] : acc) {
        if (c != 0) {
            out.emplace_back(g, std::move(c));
        }
    }
    return out;
}

void check_vars(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.nvars() != b.nvars()) {
        throw ShapeError("Laurent polynomials in different numbers of variables");
    }
}

} // namespace

LaurentPoly::LaurentPoly(std::size_t nvars, std::vector<term_type> terms)
    : m_nvars(nvars), m_terms(normalize(nvars, std::move(terms)))
{
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c)
{
    return LaurentPoly(nvars, {{Monomial(nvars, 0), c}});
}

LaurentPoly LaurentPoly::monomial(std::size_t nvars, const Rational& c, Monomial g)
{
    return LaurentPoly(nvars, {{std::move(g), c}});
}

LaurentPoly LaurentPoly::generator_minus_one(std::size_t nvars, std::size_t i)
{
    Monomial g(nvars, 0);
    g.at(i) = 1;
    return LaurentPoly(nvars, {{g, Rational(1)}, {Monomial(nvars, 0), Rational(-1)}});
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly out = *this;
    for (auto& t : out.m_terms) {
        t.second = -t.second;
    }
    return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b)
{
    check_vars(a, b);
    LaurentPoly out(a.m_nvars);
    out.m_terms.reserve(a.size() + b.size());
    auto i = a.m_terms.begin(), j = b.m_terms.begin();
    while (i != a.m_terms.end() || j != b.m_terms.end()) {
        if (j == b.m_terms.end() || (i != a.m_terms.end() && i->first < j->first)) {
            out.m_terms.push_back(*i++);
        } else if (i == a.m_terms.end() || j->first < i->first) {
            out.m_terms.push_back(*j++);
        } else {
            Rational c = i->second + j->second;
            if (c != 0) {
                out.m_terms.emplace_back(i->first, std::move(c));
            }
            ++i;
            ++j;
        }
    }
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b)
{
    return a + (-b);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    check_vars(a, b);
    if (a.is_zero() || b.is_zero()) {
        return LaurentPoly(a.m_nvars);
    }
    std::map<Monomial, Rational> acc;
    for (const auto& [ga, ca] : a.m_terms) {
        for (const auto& [gb, cb] : b.m_terms) {
            Monomial g(ga.size());
            for (std::size_t k = 0; k < g.size(); ++k) {
                g[k] = ga[k] + gb[k];
            }
            acc[std::move(g)] += ca * cb;
        }
    }
    LaurentPoly out(a.m_nvars);
    for (auto& [g, c] : acc) {
        if (c != 0) {
            out.m_terms.emplace_back(g, std::move(c));
        }
    }
    return out;
}

LaurentPoly operator*(const Rational& c, const LaurentPoly& a)
{
    if (c == 0) {
        return LaurentPoly(a.m_nvars);
    }
    LaurentPoly out = a;
    for (auto& t : out.m_terms) {
        t.second *= c;
    }
    return out;
}

Rational LaurentPoly::content() const
{
    if (m_terms.empty()) {
        return Rational(1);
    }
    Integer num = 0, den = 1;
    for (const auto& [g, c] : m_terms) {
        num = gcd(num, Integer(numerator(c)));
        den = lcm(den, Integer(denominator(c)));
    }
    return Rational(abs(num), den);
}

LaurentPoly LaurentPoly::map_monomials(std::size_t target_vars,
                                       const std::function<Monomial(const Monomial&)>& f) const
{
    std::vector<term_type> terms;
    terms.reserve(m_terms.size());
    for (const auto& [g, c] : m_terms) {
        terms.emplace_back(f(g), c);
    }
    return LaurentPoly(target_vars, std::move(terms));
}

Rational LaurentPoly::evaluate(const std::vector<Rational>& point) const
{
    if (point.size() != m_nvars) {
        throw ShapeError("evaluation point has wrong length");
    }
    Rational total = 0;
    for (const auto& [g, c] : m_terms) {
        Rational v = c;
        for (std::size_t i = 0; i < m_nvars; ++i) {
            const std::int64_t e = g[i];
            if (e == 0) {
                continue;
            }
            if (point[i] == 0) {
                throw PreconditionError("negative or zero power of a vanishing coordinate");
            }
            const Rational base = e > 0 ? point[i] : Rational(1) / point[i];
            for (std::int64_t k = 0; k < (e > 0 ? e : -e); ++k) {
                v *= base;
            }
        }
        total += v;
    }
    return total;
}

std::string LaurentPoly::str() const
{
    if (m_terms.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (auto it = m_terms.rbegin(); it != m_terms.rend(); ++it) {
        const auto& [g, c] = *it;
        const bool constant = std::all_of(g.begin(), g.end(), [](std::int64_t e) { return e == 0; });
        Rational shown = c;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) {
                shown = -c;
            }
        }
        if (constant || shown != 1) {
            if (!constant && shown == -1) {
                os << "-";
            } else {
                os << format_rational(shown);
                if (!constant) {
                    os << "*";
                }
            }
        }
        bool first_var = true;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] == 0) {
                continue;
            }
            if (!first_var) {
                os << "*";
            }
            os << "t" << i;
            if (g[i] != 1) {
                os << "^" << g[i];
            }
            first_var = false;
        }
        first = false;
    }
    return os.str();
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b)
{
    check_vars(a, b);
    if (b.is_zero()) {
        throw PreconditionError("division by the zero polynomial");
    }
    const std::size_t m = a.nvars();
    if (a.is_zero()) {
        return LaurentPoly(m);
    }
    // Per-variable exponent ranges of a quotient are forced by those of a, b.
    std::vector<std::int64_t> lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::int64_t alo = a.terms().front().first[i], ahi = alo, blo = b.terms().front().first[i], bhi = blo;
        for (const auto& t : a.terms()) {
            alo = std::min(alo, t.first[i]);
            ahi = std::max(ahi, t.first[i]);
        }
        for (const auto& t : b.terms()) {
            blo = std::min(blo, t.first[i]);
            bhi = std::max(bhi, t.first[i]);
        }
        lo[i] = alo - blo;
        hi[i] = ahi - bhi;
        if (lo[i] > hi[i]) {
            return std::nullopt;
        }
    }
    const auto& [bg, bc] = b.leading();
    LaurentPoly r = a;
    std::vector<LaurentPoly::term_type> q;
    while (!r.is_zero()) {
        const auto& [rg, rc] = r.leading();
        Monomial g(m);
        for (std::size_t i = 0; i < m; ++i) {
            g[i] = rg[i] - bg[i];
            if (g[i] < lo[i] || g[i] > hi[i]) {
                return std::nullopt;
            }
        }
        const Rational c = rc / bc;
        const LaurentPoly step = LaurentPoly::monomial(m, c, g);
        q.emplace_back(std::move(g), c);
        r = r - step * b;
    }
    return LaurentPoly(m, std::move(q));
}

PolyMatrix zero_poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars)
{
    return PolyMatrix(rows, cols, LaurentPoly(nvars));
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars)
{
    if (a.cols() != b.rows()) {
        throw ShapeError("matrix product of incompatible shapes");
    }
    PolyMatrix out = zero_poly_matrix(a.rows(), b.cols(), nvars);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            LaurentPoly s(nvars);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (!a(i, k).is_zero() && !b(k, j).is_zero()) {
                    s = s + a(i, k) * b(k, j);
                }
            }
            out(i, j) = std::move(s);
        }
    }
    return out;
}

} // namespace novikov
