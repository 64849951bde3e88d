#include <doctest.h>

#include <random>

#include <novikov/error.hpp>
#include <novikov/lattice.hpp>

#include "oracles.hpp"

using namespace novikov;

namespace
{

Channel channel(std::vector<Rational> row, const std::string& value)
{
    return Channel{std::move(row), parse_real(value), value};
}

const std::string sqrt2 = "1.41421356237309504880168872420969807856967187537694";

WeightedLattice diagonal_line()
{
    return WeightedLattice(2, {channel({1, 1}, "1")});
}

WeightedLattice random_lattice(std::mt19937& rng, std::size_t m, std::size_t channels)
{
    static const char* values[] = {"1", "1.41421356237309504880168872420969807856967187537694",
                                   "3.14159265358979323846264338327950288419716939937510"};
    std::uniform_int_distribution<int> coef(-3, 3);
    while (true) {
        std::vector<Channel> cs;
        for (std::size_t j = 0; j < channels; ++j) {
            std::vector<Rational> row;
            for (std::size_t i = 0; i < m; ++i) {
                row.emplace_back(coef(rng), 1 + (coef(rng) + 3) % 2);
            }
            cs.push_back(channel(row, values[j]));
        }
        try {
            return WeightedLattice(m, cs);
        } catch (const PreconditionError&) {
        } catch (const ShapeError&) {
        }
    }
}

} // namespace

TEST_CASE("kernel and complement of the diagonal weight")
{
    const auto s = kernel_and_split(diagonal_line());
    REQUIRE(s.kernel_basis.size() == 1);
    CHECK(s.kernel_basis[0] == Monomial{1, -1});
    REQUIRE(s.complement_basis.size() == 1);
    CHECK(s.complement_basis[0] == Monomial{1, 0});
    CHECK(s.image_rank == 1);
}

TEST_CASE("zero weight splits off everything as kernel")
{
    const auto s = kernel_and_split(WeightedLattice::zero_weight(2));
    CHECK(s.image_rank == 0);
    CHECK(s.complement_basis.empty());
    REQUIRE(s.kernel_basis.size() == 2);
    CHECK(std::abs(oracle::det({{s.kernel_basis[0][0], s.kernel_basis[0][1]}, {s.kernel_basis[1][0], s.kernel_basis[1][1]}}))
          == 1);
}

TEST_CASE("two independent channels have trivial kernel")
{
    const WeightedLattice L(2, {channel({1, 0}, "1"), channel({0, 1}, sqrt2)});
    const auto s = kernel_and_split(L);
    CHECK(s.kernel_basis.empty());
    CHECK(s.image_rank == 2);
    CHECK(s.complement_basis == std::vector<Monomial>{{1, 0}, {0, 1}});
}

TEST_CASE("redundant channels are rejected")
{
    CHECK_THROWS_AS(WeightedLattice(2, {channel({1, 1}, "1"), channel({2, 2}, sqrt2)}), PreconditionError);
    CHECK_THROWS_AS(WeightedLattice(2, {channel({1}, "1")}), ShapeError);
}

TEST_CASE("weight comparisons")
{
    const auto L = diagonal_line();
    CHECK(compare_weights(L, {2, 0}, {1, 1}) == Ordering::equal);
    CHECK(compare_weights(L, {0, 0}, {1, 0}) == Ordering::less);
    const WeightedLattice M(2, {channel({1, 0}, "1"), channel({0, 1}, sqrt2)});
    CHECK(compare_weights(M, {3, 0}, {0, 2}) == Ordering::greater);
    CHECK(compare_weights(M, {0, 2}, {3, 0}) == Ordering::less);
}

TEST_CASE("comparison below the separation threshold refuses to decide")
{
    // 1 and 1 + 1e-40 are distinct channel values that 1e-30 cannot separate
    const WeightedLattice L(2, {channel({1, 0}, "1"), channel({0, 1}, "1.0000000000000000000000000000000000000001")});
    CHECK_THROWS_AS(compare_weights(L, {1, 0}, {0, 1}), IrresolvableComparison);
    const WeightedLattice fine(2, {channel({1, 0}, "1"), channel({0, 1}, "1.0000000000000000000000000000000000000001")},
                               Real("1e-45"));
    CHECK(compare_weights(fine, {1, 0}, {0, 1}) == Ordering::less);
}

TEST_CASE("projection to the quotient")
{
    const auto L = diagonal_line();
    const auto s = kernel_and_split(L);
    CHECK(project_to_quotient(L, s, {1, -1}) == Monomial{0});
    CHECK(project_to_quotient(L, s, {1, 0}) == Monomial{1});
    CHECK(project_to_quotient(L, s, {0, 1}) == Monomial{1});
    CHECK(kernel_part(L, s, {0, 1}) == Monomial{-1, 1});
    const auto z = WeightedLattice::zero_weight(3);
    CHECK(project_to_quotient(z, kernel_and_split(z), {4, 5, 6}).empty());
}

TEST_CASE("image lattice carries the induced weight")
{
    const auto L = diagonal_line();
    const auto s = kernel_and_split(L);
    const auto I = image_lattice(L, s);
    CHECK(I.rank() == 1);
    CHECK(I.weight({3}) == L.weight({3, 0}));
}

TEST_CASE("random lattices: splitting, exact kernel test, compatible order")
{
    std::mt19937 rng(20261014);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 2 + trial % 3;
        const std::size_t ch = 1 + trial % std::min<std::size_t>(m, 3);
        const auto L = random_lattice(rng, m, ch);
        const auto s = kernel_and_split(L);
        CHECK(s.kernel_basis.size() + s.image_rank == m);
        std::vector<std::vector<long long>> cols;
        for (const auto& v : s.kernel_basis) {
            CHECK(oracle::in_kernel(L, v));
            cols.emplace_back(v.begin(), v.end());
        }
        for (const auto& v : s.complement_basis) {
            cols.emplace_back(v.begin(), v.end());
        }
        CHECK(std::abs(oracle::det(cols)) == 1);
        for (int k = 0; k < 20; ++k) {
            Monomial g(m), h(m), u(m);
            for (std::size_t i = 0; i < m; ++i) {
                g[i] = e(rng);
                h[i] = e(rng);
                u[i] = e(rng);
            }
            const auto p = project_to_quotient(L, s, g);
            const bool zero = std::all_of(p.begin(), p.end(), [](auto x) { return x == 0; });
            CHECK(zero == oracle::in_kernel(L, g));
            // g = kernel part + embedded image part, weight preserved
            const auto emb = embed_from_quotient(s, p);
            const auto ker = kernel_part(L, s, g);
            for (std::size_t i = 0; i < m; ++i) {
                CHECK(ker[i] + emb[i] == g[i]);
            }
            CHECK(oracle::in_kernel(L, ker));
            CHECK(compare_weights(L, g, emb) == Ordering::equal);
            CHECK(abs(L.weight(g) - oracle::weight(L, g)) < Real("1e-40"));
            CHECK(compare_weights(L, g, g) == Ordering::equal);
            // translation invariance of the order
            Monomial gu(m), hu(m);
            for (std::size_t i = 0; i < m; ++i) {
                gu[i] = g[i] + u[i];
                hu[i] = h[i] + u[i];
            }
            CHECK(compare_weights(L, g, h) == compare_weights(L, gu, hu));
        }
    }
}
