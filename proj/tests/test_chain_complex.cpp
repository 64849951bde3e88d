#include <doctest.h>

#include <random>

#include <novikov/chain_complex.hpp>
#include <novikov/error.hpp>

#include "oracles.hpp"
#include "random_complex.hpp"

using namespace novikov;

namespace
{

LaurentPoly t_minus_one(std::size_t m, std::size_t i)
{
    return LaurentPoly::generator_minus_one(m, i);
}

WeightedLattice row_class(std::vector<Rational> row)
{
    return WeightedLattice::rational_class(row);
}

} // namespace

TEST_CASE("Laurent polynomial arithmetic and exact division")
{
    const auto a = t_minus_one(2, 0), b = t_minus_one(2, 1);
    const auto prod = a * b;
    CHECK(prod.size() == 4);
    const auto q = divide_exact(prod, b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK_FALSE(divide_exact(a, b).has_value());
    // t^-1 (t^2 - 1) / (t - 1) = t^-1 + 1
    const auto lhs = LaurentPoly(1, {{{1}, 1}, {{-1}, -1}});
    const auto r = divide_exact(lhs, t_minus_one(1, 0));
    REQUIRE(r.has_value());
    CHECK(*r == LaurentPoly(1, {{{-1}, 1}, {{0}, 1}}));
    CHECK((a - a).is_zero());
    CHECK(LaurentPoly(1, {{{0}, Rational(6, 4)}, {{2}, 3}}).content() == Rational(3, 2));
    CHECK(prod.evaluate({Rational(2), Rational(3)}) == 2);
}

TEST_CASE("validation")
{
    CHECK(validate_complex(circle_complex()).valid);
    const auto t2 = torus_complex(2);
    CHECK(t2.rank(0) == 1);
    CHECK(t2.rank(1) == 2);
    CHECK(t2.rank(2) == 1);
    CHECK(t2.boundary(1)(0, 0) == t_minus_one(2, 0));
    CHECK(t2.boundary(1)(0, 1) == t_minus_one(2, 1));
    CHECK(t2.boundary(2)(0, 0) == -t_minus_one(2, 1));
    CHECK(t2.boundary(2)(1, 0) == t_minus_one(2, 0));
    CHECK(validate_complex(t2).valid);

    auto d = t2.boundaries();
    d[2](0, 0) = t_minus_one(2, 1);
    const GroupRingComplex bad(t2.lattice(), Grading{}, t2.ranks(), d);
    const auto v = validate_complex(bad);
    CHECK_FALSE(v.valid);
    CHECK(v.degree == 1);
    CHECK(v.row == 0);
    CHECK(v.col == 0);
    CHECK_FALSE(v.message.empty());
}

TEST_CASE("presets")
{
    const auto t4 = torus_complex(4);
    CHECK(t4.rank(0) == 1);
    CHECK(t4.rank(1) == 4);
    CHECK(t4.rank(2) == 6);
    CHECK(t4.rank(3) == 4);
    CHECK(t4.rank(4) == 1);
    CHECK(validate_complex(t4).valid);
    CHECK(euler_characteristic(t4) == 0);
    for (std::size_t g = 1; g <= 3; ++g) {
        const auto s = surface_complex(g);
        CHECK(s.rank(1) == 2 * g);
        CHECK(validate_complex(s).valid);
        CHECK(euler_characteristic(s) == 2 - 2 * static_cast<long>(g));
    }
    CHECK(preset_complex("surface_g2").rank(1) == 4);
    CHECK(preset_complex("torus2").nvars() == 2);
    CHECK_THROWS_AS(preset_complex("klein"), ParseError);
    CHECK_THROWS_AS(preset_complex("surface_g9"), ParseError);
}

TEST_CASE("shape errors")
{
    const auto t2 = torus_complex(2);
    auto d = t2.boundaries();
    d[1] = zero_poly_matrix(1, 3, 2);
    CHECK_THROWS_AS(GroupRingComplex(t2.lattice(), Grading{}, t2.ranks(), d), ShapeError);
    CHECK_THROWS_AS(GroupRingComplex(t2.lattice(), Grading{}, t2.ranks(), t2.boundaries(), {{1, {"a"}}}), ShapeError);
    CHECK_THROWS_AS(GroupRingComplex(t2.lattice(), Grading{0}, t2.ranks(), t2.boundaries()), PreconditionError);
}

TEST_CASE("specialization to the period class")
{
    const auto circle = circle_complex();
    const auto flat = specialize_to_theta(circle, WeightedLattice::zero_weight(1));
    CHECK(flat.nvars() == 0);
    CHECK(flat.boundary(1)(0, 0).is_zero());

    const auto t2 = specialize_to_theta(torus_complex(2), row_class({1, 0}));
    CHECK(t2.nvars() == 1);
    CHECK(t2.boundary(1)(0, 0) == t_minus_one(1, 0));
    CHECK(t2.boundary(1)(0, 1).is_zero());
    CHECK(validate_complex(t2).valid);

    // injective weight: same complex up to relabeling of the variables
    const WeightedLattice generic(2, {Channel{{1, 0}, Real(1), "1"},
                                      Channel{{0, 1}, parse_real("1.4142135623730950488016887242097"), "1.4142135623730950488016887242097"}});
    const auto same = specialize_to_theta(torus_complex(2), generic);
    CHECK(same.nvars() == 2);
    CHECK(same.boundary(1) == torus_complex(2).boundary(1));
}

TEST_CASE("specialization keeps d^2 = 0 and the Euler characteristic")
{
    std::mt19937 rng(77);
    for (int i = 0; i < 30; ++i) {
        const std::size_t m = 1 + static_cast<std::size_t>(i % 3);
        const auto c = testing_support::random_complex(rng, m);
        REQUIRE(validate_complex(c).valid);
        std::vector<Rational> row(m);
        for (std::size_t j = 0; j < m; ++j) {
            row[j] = Rational(static_cast<int>((i + j) % 3) - 1);
        }
        const auto L = std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; })
                           ? WeightedLattice::zero_weight(m)
                           : row_class(row);
        const auto s = specialize_to_theta(c, L);
        CHECK(validate_complex(s).valid);
        CHECK(euler_characteristic(s) == euler_characteristic(c));
    }
}

TEST_CASE("grading residues")
{
    CHECK(Grading{}.reduce(-3) == -3);
    CHECK(Grading{3}.reduce(7) == 1);
    CHECK(Grading{3}.reduce(-1) == 5);
}
