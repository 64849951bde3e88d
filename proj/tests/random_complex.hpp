// Random chain complexes with d^2 = 0 by construction: a direct sum of
// elementary pieces, conjugated degreewise by unimodular Laurent matrices.
#ifndef NOVIKOV_TESTS_RANDOM_COMPLEX_HPP
#define NOVIKOV_TESTS_RANDOM_COMPLEX_HPP

#include <random>

#include <novikov/chain_complex.hpp>

namespace testing_support
{

using namespace novikov;

inline LaurentPoly random_monomial(std::mt19937& rng, std::size_t m, int sign_bias = 0)
{
    std::uniform_int_distribution<int> e(-1, 1), s(0, 1);
    Monomial g(m);
    for (auto& x : g) {
        x = e(rng);
    }
    const int sign = sign_bias != 0 ? sign_bias : (s(rng) ? 1 : -1);
    return LaurentPoly::monomial(m, sign, g);
}

// Nonzero non-unit (generically) boundary entry.
inline LaurentPoly random_entry(std::mt19937& rng, std::size_t m)
{
    std::uniform_int_distribution<int> kind(0, 3), var(0, static_cast<int>(m) - 1);
    switch (kind(rng)) {
    case 0:
        return LaurentPoly::generator_minus_one(m, static_cast<std::size_t>(var(rng)));
    case 1:
        return random_monomial(rng, m) + random_monomial(rng, m) + LaurentPoly::constant(m, 1);
    case 2:
        return LaurentPoly::generator_minus_one(m, static_cast<std::size_t>(var(rng)))
               * LaurentPoly::generator_minus_one(m, static_cast<std::size_t>(var(rng)));
    default:
        return random_monomial(rng, m) - LaurentPoly::constant(m, 2);
    }
}

struct Piece {
    int degree; // top degree of the piece
    int kind;   // 0: free generator, 1: p : C_k -> C_{k-1}, 2: 2x2 Koszul block
};

// lattice rank m in 1..3, degrees 0..3, every rank at most 6
inline GroupRingComplex random_complex(std::mt19937& rng, std::size_t m, int conjugations = 4)
{
    std::uniform_int_distribution<int> pieces(2, 6), deg(0, 3), kind(0, 2), var(0, static_cast<int>(m) - 1);
    std::map<int, std::size_t> ranks;
    // entries as (degree of boundary, row, col, polynomial)
    struct Entry {
        int k;
        std::size_t r, c;
        LaurentPoly p;
    };
    std::vector<Entry> entries;
    const int count = pieces(rng);
    for (int i = 0; i < count; ++i) {
        int kd = kind(rng);
        int k = deg(rng);
        if (kd == 1 && k == 0) {
            k = 1;
        }
        if (kd == 2 && k < 2) {
            k = 2;
        }
        const auto need = [&](int d, std::size_t n) { return ranks[d] + n <= 6; };
        if (kd == 0 && need(k, 1)) {
            ranks[k] += 1;
        } else if (kd == 1 && need(k, 1) && need(k - 1, 1)) {
            entries.push_back({k, ranks[k - 1], ranks[k], random_entry(rng, m)});
            ranks[k] += 1;
            ranks[k - 1] += 1;
        } else if (kd == 2 && need(k, 1) && need(k - 1, 2) && need(k - 2, 1)) {
            // Koszul block on two variables a, b (possibly equal)
            const auto a = LaurentPoly::generator_minus_one(m, static_cast<std::size_t>(var(rng)));
            const auto b = LaurentPoly::generator_minus_one(m, static_cast<std::size_t>(var(rng)));
            const std::size_t top = ranks[k], mid = ranks[k - 1], bot = ranks[k - 2];
            entries.push_back({k - 1, bot, mid, a});
            entries.push_back({k - 1, bot, mid + 1, b});
            entries.push_back({k, mid, top, -b});
            entries.push_back({k, mid + 1, top, a});
            ranks[k] += 1;
            ranks[k - 1] += 2;
            ranks[k - 2] += 1;
        }
    }
    if (ranks.empty() || std::all_of(ranks.begin(), ranks.end(), [](const auto& kv) { return kv.second == 0; })) {
        ranks[0] = 1;
    }
    std::map<int, PolyMatrix> d;
    for (int k = 1; k <= 3; ++k) {
        if (ranks[k] > 0 && ranks[k - 1] > 0) {
            d[k] = zero_poly_matrix(ranks[k - 1], ranks[k], m);
        }
    }
    for (const auto& e : entries) {
        d[e.k](e.r, e.c) = e.p;
    }
    // conjugate C_k by P_k:  d_k -> P_{k-1} d_k P_k^{-1}
    for (int k = 0; k <= 3; ++k) {
        const std::size_t n = ranks[k];
        if (n < 2) {
            continue;
        }
        PolyMatrix p = zero_poly_matrix(n, n, m), pinv = zero_poly_matrix(n, n, m);
        for (std::size_t i = 0; i < n; ++i) {
            p(i, i) = LaurentPoly::constant(m, 1);
            pinv(i, i) = LaurentPoly::constant(m, 1);
        }
        std::uniform_int_distribution<std::size_t> idx(0, n - 1);
        for (int c = 0; c < conjugations; ++c) {
            std::size_t i = idx(rng), j = idx(rng);
            if (i == j) {
                continue;
            }
            const LaurentPoly x = random_monomial(rng, m);
            PolyMatrix e = zero_poly_matrix(n, n, m), einv = zero_poly_matrix(n, n, m);
            for (std::size_t t = 0; t < n; ++t) {
                e(t, t) = LaurentPoly::constant(m, 1);
                einv(t, t) = LaurentPoly::constant(m, 1);
            }
            e(i, j) = x;
            einv(i, j) = -x;
            p = multiply(e, p, m);
            pinv = multiply(pinv, einv, m);
        }
        if (d.count(k)) {
            d[k] = multiply(d[k], pinv, m);
        }
        if (d.count(k + 1)) {
            d[k + 1] = multiply(p, d[k + 1], m);
        }
    }
    return GroupRingComplex(WeightedLattice::zero_weight(m), Grading{}, ranks, d);
}

inline GroupRingComplex with_lattice(const GroupRingComplex& c, WeightedLattice lattice)
{
    return GroupRingComplex(std::move(lattice), c.grading(), c.ranks(), c.boundaries(), c.labels());
}

} // namespace testing_support

#endif
