#ifndef NOVIKOV_TESTS_RANDOM_SERIES_HPP
#define NOVIKOV_TESTS_RANDOM_SERIES_HPP

#include <random>
#include <string>
#include <type_traits>

#include <novikov/series.hpp>

#include "oracles.hpp"

namespace testing_support
{

using namespace novikov;

inline const std::string sqrt2 = "1.41421356237309504880168872420969807856967187537694";

inline Channel channel(std::vector<Rational> row, const std::string& value)
{
    return Channel{std::move(row), parse_real(value), value};
}

// phi(g) = g_1 on Z^1
inline LatticePtr line()
{
    return share(WeightedLattice(1, {channel({1}, "1")}));
}

// phi(a, b) = a + b: nontrivial kernel
inline LatticePtr diagonal()
{
    return share(WeightedLattice(2, {channel({1, 1}, "1")}));
}

// phi(a, b) = a + sqrt2 b: injective
inline LatticePtr irrational()
{
    return share(WeightedLattice(2, {channel({1, 0}, "1"), channel({0, 1}, sqrt2)}));
}

template <typename R>
oracle::Sparse<R> sparse(const TruncatedSeries<R>& s)
{
    oracle::Sparse<R> out;
    for (const auto& t : s.terms()) {
        out[t.monomial] = t.coeff;
    }
    return out;
}

template <typename R>
R random_coeff(std::mt19937& rng)
{
    std::uniform_int_distribution<int> c(-5, 5);
    int v = 0;
    while (v == 0) {
        v = c(rng);
    }
    if constexpr (std::is_same_v<R, Rational>) {
        std::uniform_int_distribution<int> d(1, 4);
        return Rational(v, d(rng));
    } else {
        return R(v);
    }
}

template <typename R>
TruncatedSeries<R> random_series(std::mt19937& rng, const LatticePtr& lat, bool unit_lead = false)
{
    std::uniform_int_distribution<int> e(-3, 3), count(1, 6), cut(0, 3);
    std::vector<Term<R>> terms;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        Monomial g(lat->rank());
        for (auto& x : g) {
            x = e(rng);
        }
        terms.push_back(Term<R>{random_coeff<R>(rng), g});
    }
    const int cc = cut(rng);
    const Real cutoff = cc == 0 ? real_infinity() : Real(2 + 2 * cc);
    TruncatedSeries<R> s(lat, terms, cutoff);
    if (s.empty()) {
        s = TruncatedSeries<R>::one(lat, cutoff);
    }
    if (unit_lead) {
        // keep one term of the minimal-weight block, with coefficient 1
        std::vector<Term<R>> t(s.terms().begin(), s.terms().end());
        const std::size_t block = s.leading_block_size();
        t.erase(t.begin() + 1, t.begin() + static_cast<std::ptrdiff_t>(block));
        t[0].coeff = R(1);
        s = TruncatedSeries<R>(lat, t, cutoff);
    }
    return s;
}

} // namespace testing_support

#endif
