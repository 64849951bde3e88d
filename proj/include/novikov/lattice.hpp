#ifndef NOVIKOV_LATTICE_HPP
#define NOVIKOV_LATTICE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <novikov/numeric.hpp>

namespace novikov
{

// One summand of a weight homomorphism: g |-> value * (row . g).
struct Channel {
    std::vector<Rational> row;
    Real value;
    // Decimal text the value was read from; kept so serialization round trips.
    std::string value_text;
};

enum class Ordering { less, equal, greater };

// Channel coordinates of a monomial together with its numeric weight. Two keys
// denote the same weight exactly when their coordinates coincide.
struct WeightKey {
    std::vector<Rational> coords;
    Real value;
};

// Free abelian group Z^m with a real weight homomorphism
//
//     phi(g) = sum_j value_j * (row_j . g),
//
// where the channel values are taken to be Q-linearly independent. Equality of
// weights is decided exactly on the channel coordinates; strict order is
// decided numerically and refuses to answer below the separation threshold.
class WeightedLattice
{
public:
    static constexpr double default_separation = 1e-30;

    WeightedLattice() = default;
    WeightedLattice(std::size_t rank, std::vector<Channel> channels, Real separation = Real(default_separation));

    // Lattice of the given rank with phi = 0.
    static WeightedLattice zero_weight(std::size_t rank);
    // Single channel with value 1 and the given rational row (a rational
    // cohomology class). An all-zero row yields the zero weight.
    static WeightedLattice rational_class(const std::vector<Rational>& row);

    std::size_t rank() const noexcept
    {
        return m_rank;
    }
    const std::vector<Channel>& channels() const noexcept
    {
        return m_channels;
    }
    const Real& separation() const noexcept
    {
        return m_separation;
    }

    std::vector<Rational> channel_coordinates(const Monomial& g) const;
    Real weight(const Monomial& g) const;
    Real weight_of(const std::vector<Rational>& coords) const;
    WeightKey key(const Monomial& g) const;

    // Orders two keys by weight; throws IrresolvableComparison when the
    // coordinates differ but the numeric gap is below the separation.
    Ordering compare(const WeightKey& a, const WeightKey& b) const;

    void check_shape(const Monomial& g) const;

    friend bool operator==(const WeightedLattice& a, const WeightedLattice& b);

private:
    std::size_t m_rank = 0;
    std::vector<Channel> m_channels;
    Real m_separation{default_separation};
};

Ordering compare_weights(const WeightedLattice& lattice, const Monomial& g1, const Monomial& g2);

// Z^m = ker(phi) + complement, with the complement mapped injectively by phi.
struct Splitting {
    std::vector<Monomial> kernel_basis;     // Hermite normal form rows
    std::vector<Monomial> complement_basis; // image_rank vectors
    std::size_t image_rank = 0;
    // Rows of the inverse change of basis restricted to the complement
    // coordinates; project(g) = projection * g.
    std::vector<Monomial> projection;
};

Splitting kernel_and_split(const WeightedLattice& lattice);

// Complement coordinates of g, i.e. the class of g in Z^m / ker(phi).
Monomial project_to_quotient(const WeightedLattice& lattice, const Splitting& split, const Monomial& g);

// Sum of complement basis vectors with the given coordinates.
Monomial embed_from_quotient(const Splitting& split, const Monomial& image);

// g - embed(project(g)); always lies in ker(phi).
Monomial kernel_part(const WeightedLattice& lattice, const Splitting& split, const Monomial& g);

// The quotient Z^r with the weight induced through the complement basis.
WeightedLattice image_lattice(const WeightedLattice& lattice, const Splitting& split);

// |det| of the square integer matrix whose columns are the given vectors.
Integer abs_determinant(const std::vector<Monomial>& columns);

} // namespace novikov

#endif
