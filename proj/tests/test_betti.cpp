#include <doctest.h>

#include <random>

#include <novikov/betti.hpp>
#include <novikov/error.hpp>

#include "oracles.hpp"
#include "random_complex.hpp"

using namespace novikov;
using testing_support::random_complex;

namespace
{

const char* irrationals[] = {"1", "1.41421356237309504880168872420969807856967187537694",
                             "1.73205080756887729352744634150587236694280525381038",
                             "3.14159265358979323846264338327950288419716939937510"};

// Injective weight on Z^m: coordinate channels with Q-independent values.
WeightedLattice generic_class(std::size_t m)
{
    std::vector<Channel> cs;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> row(m, 0);
        row[i] = 1;
        cs.push_back(Channel{row, parse_real(irrationals[i]), irrationals[i]});
    }
    return WeightedLattice(m, cs);
}

std::vector<std::size_t> betti_vector(const BettiReport& r)
{
    std::vector<std::size_t> v;
    for (const auto& [k, b] : r.betti) {
        v.push_back(b);
    }
    return v;
}

PolyMatrix random_poly_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t m, std::size_t rank)
{
    PolyMatrix a = zero_poly_matrix(rows, rank, m), b = zero_poly_matrix(rank, cols, m);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            a(i, j) = testing_support::random_entry(rng, m);
        }
    }
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            b(i, j) = testing_support::random_monomial(rng, m);
        }
    }
    return multiply(a, b, m);
}

} // namespace

TEST_CASE("rank over the fraction field: small cases")
{
    PolyMatrix one(1, 1, LaurentPoly::generator_minus_one(1, 0));
    CHECK(rank_over_fraction_field(one) == 1);
    CHECK(rank_over_fraction_field(zero_poly_matrix(3, 2, 2)) == 0);
    PolyMatrix two(2, 2, LaurentPoly(2));
    two(0, 0) = two(1, 1) = LaurentPoly::generator_minus_one(2, 0);
    two(0, 1) = two(1, 0) = LaurentPoly::generator_minus_one(2, 1);
    CHECK(rank_over_fraction_field(two) == 2);
    // (t-1)^2 - (t-1)^2 = 0 if both variables agree
    PolyMatrix same(2, 2, LaurentPoly::generator_minus_one(1, 0));
    CHECK(rank_over_fraction_field(same) == 1);
}

TEST_CASE("rank over the fraction field agrees with evaluation at random points")
{
    std::mt19937 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const std::size_t m = 1 + static_cast<std::size_t>(i % 2);
        const std::size_t planted = static_cast<std::size_t>(i % 6);
        const auto mx = random_poly_matrix(rng, 5, 5, m, planted);
        const std::size_t r = rank_over_fraction_field(mx);
        CHECK(r <= planted);
        CHECK(r == oracle::generic_rank(mx, m, static_cast<unsigned>(i)));
        CHECK(r == rank_by_random_evaluation(mx, static_cast<std::uint64_t>(i)));
    }
}

TEST_CASE("rank does not depend on row and column order")
{
    std::mt19937 rng(8);
    const auto mx = random_poly_matrix(rng, 4, 5, 2, 3);
    PolyMatrix perm(4, 5, LaurentPoly(2));
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            perm(i, j) = mx(3 - i, (j + 2) % 5);
        }
    }
    CHECK(rank_over_fraction_field(mx) == rank_over_fraction_field(perm));
}

TEST_CASE("Novikov Betti numbers of the presets")
{
    CHECK(betti_vector(novikov_betti(circle_complex(), WeightedLattice::rational_class({1}))) == std::vector<std::size_t>{0, 0});
    CHECK(betti_vector(novikov_betti(circle_complex(), WeightedLattice::zero_weight(1))) == std::vector<std::size_t>{1, 1});
    CHECK(betti_vector(novikov_betti(torus_complex(2), WeightedLattice::zero_weight(2)))
          == std::vector<std::size_t>{1, 2, 1});
    CHECK(betti_vector(novikov_betti(torus_complex(2), WeightedLattice::rational_class({1, 0})))
          == std::vector<std::size_t>{0, 0, 0});
    CHECK(betti_vector(novikov_betti(torus_complex(4), WeightedLattice::zero_weight(4)))
          == std::vector<std::size_t>{1, 4, 6, 4, 1});
    const auto g2 = novikov_betti(surface_complex(2), generic_class(4));
    CHECK(betti_vector(g2) == std::vector<std::size_t>{0, 2, 0});
    CHECK(g2.euler_characteristic() == -2);
    CHECK(g2.field == "Frac(Q[Z^4])");
    CHECK(betti_vector(novikov_betti(surface_complex(2), WeightedLattice::rational_class({1, 0, 0, 0})))
          == std::vector<std::size_t>{0, 2, 0});
}

TEST_CASE("Betti numbers depend only on the kernel of the period map")
{
    const auto c = surface_complex(3);
    const auto a = novikov_betti(c, WeightedLattice::rational_class({1, 2, 0, 0, 0, 0}));
    const auto b = novikov_betti(c, WeightedLattice::rational_class({2, 4, 0, 0, 0, 0}));
    const auto d = novikov_betti(c, WeightedLattice::rational_class({Rational(-1, 3), Rational(-2, 3), 0, 0, 0, 0}));
    CHECK(betti_vector(a) == betti_vector(b));
    CHECK(betti_vector(a) == betti_vector(d));
    CHECK(betti_vector(a) == std::vector<std::size_t>{0, 4, 0});
}

TEST_CASE("invalid complexes are rejected")
{
    const auto t2 = torus_complex(2);
    auto d = t2.boundaries();
    d[2](0, 0) = LaurentPoly::generator_minus_one(2, 1);
    const GroupRingComplex bad(t2.lattice(), Grading{}, t2.ranks(), d);
    CHECK_THROWS_AS(novikov_betti(bad, WeightedLattice::zero_weight(2)), PreconditionError);
}

TEST_CASE("truncated Novikov rank")
{
    const auto line = share(WeightedLattice::rational_class({1}));
    SeriesMatrix a(1, 1, TruncatedSeries<Rational>(line, {{1, {0}}, {-1, {1}}}, real_infinity()));
    CHECK(rank_over_truncated_novikov(a, Real(5)) == 1);
    SeriesMatrix z(2, 2, TruncatedSeries<Rational>(line, real_infinity()));
    CHECK(rank_over_truncated_novikov(z, Real(5)) == 0);
    // an unknown entry cannot be certified zero
    SeriesMatrix low(1, 1, TruncatedSeries<Rational>(line, Real(2)));
    CHECK_THROWS_AS(rank_over_truncated_novikov(low, Real(5)), InsufficientCutoff);

    const auto special = specialize_to_theta(torus_complex(2), WeightedLattice::rational_class({1, 0}));
    const auto d1 = special.boundary(1);
    const auto lat = share(special.lattice());
    const auto s = to_series_matrix(d1, lat, sufficient_cutoff(d1, *lat, Real(5)));
    CHECK(rank_over_truncated_novikov(s, Real(5)) == 1);
    CHECK(rank_over_fraction_field(d1) == 1);

    // leading block 1 + (1,-1) is not a monomial
    const auto diag = share(WeightedLattice::rational_class({1, 1}));
    SeriesMatrix nu(1, 1, TruncatedSeries<Rational>(diag, {{1, {0, 0}}, {1, {1, -1}}}, real_infinity()));
    CHECK_THROWS_AS(rank_over_truncated_novikov(nu, Real(5)), NonUnitPivot);
}

TEST_CASE("truncated rank equals the fraction-field rank on random complexes")
{
    std::mt19937 rng(31337);
    for (int i = 0; i < 50; ++i) {
        const std::size_t m = 1 + static_cast<std::size_t>(i % 3);
        const auto c = random_complex(rng, m);
        const auto L = i % 2 ? generic_class(m) : WeightedLattice::rational_class(std::vector<Rational>(m, 1));
        const auto special = specialize_to_theta(c, L);
        const auto lat = share(special.lattice());
        for (const auto& [k, d] : special.boundaries()) {
            const Real c0(4);
            const auto s = to_series_matrix(d, lat, sufficient_cutoff(d, *lat, c0));
            CHECK(rank_over_truncated_novikov(s, c0) == rank_over_fraction_field(d));
        }
        const auto report = novikov_betti(c, L);
        CHECK(report.euler_characteristic() == euler_characteristic(c));
        for (const auto& [k, b] : report.betti) {
            CHECK(b <= c.rank(k));
        }
    }
}

namespace
{

struct PresetCase
{
    std::string name;
    WeightedLattice theta;
};

std::vector<PresetCase> preset_cases()
{
    return {{"circle", WeightedLattice::rational_class({1})},
            {"circle", WeightedLattice::zero_weight(1)},
            {"torus2", WeightedLattice::zero_weight(2)},
            {"torus2", WeightedLattice::rational_class({1, 0})},
            {"torus2", generic_class(2)},
            {"torus4", WeightedLattice::zero_weight(4)},
            {"torus4", WeightedLattice::rational_class({0, 1, 0, 2})},
            {"surface_g2", generic_class(4)},
            {"surface_g2", WeightedLattice::rational_class({1, 0, 0, 0})}};
}

} // namespace

TEST_CASE("flat base change holds on the presets")
{
    for (const auto& pc : preset_cases()) {
        CAPTURE(pc.name);
        const auto special = specialize_to_theta(preset_complex(pc.name), pc.theta);
        const auto lat = share(special.lattice());
        for (const auto& [k, d] : special.boundaries()) {
            const Real c0(3);
            const auto s = to_series_matrix(d, lat, sufficient_cutoff(d, *lat, c0));
            CHECK(rank_over_truncated_novikov(s, c0) == rank_over_fraction_field(d));
        }
    }
}

TEST_CASE("rational rescaling of boundaries leaves the Betti numbers unchanged")
{
    const Rational scales[] = {Rational(3, 7), Rational(-5, 2), Rational(1, 9)};
    for (const auto& pc : preset_cases()) {
        CAPTURE(pc.name);
        const auto c = preset_complex(pc.name);
        auto d = c.boundaries();
        std::size_t n = 0;
        for (auto& [k, mx] : d) {
            for (std::size_t i = 0; i < mx.rows(); ++i) {
                for (std::size_t j = 0; j < mx.cols(); ++j) {
                    mx(i, j) = scales[n % 3] * mx(i, j);
                }
            }
            ++n;
        }
        const GroupRingComplex q(c.lattice(), c.grading(), c.ranks(), d);
        CHECK(validate_complex(q).valid);
        CHECK(novikov_betti(q, pc.theta).betti == novikov_betti(c, pc.theta).betti);
    }
}
