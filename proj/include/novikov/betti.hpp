#ifndef NOVIKOV_BETTI_HPP
#define NOVIKOV_BETTI_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include <novikov/chain_complex.hpp>
#include <novikov/laurent.hpp>
#include <novikov/series.hpp>

namespace novikov
{

// Rank over the field of fractions of Q[Z^m], by fraction-free (Bareiss)
// elimination with exact Laurent division and rational content stripping.
std::size_t rank_over_fraction_field(const PolyMatrix& matrix);

// Rank of the matrix after substituting random rational points (denominators
// at most 10^4), majority over `trials` substitutions. A lower bound of the
// generic rank that is sharp with high probability.
std::size_t rank_by_random_evaluation(const PolyMatrix& matrix, std::uint64_t seed, int trials = 3);

using SeriesMatrix = Matrix<TruncatedSeries<Rational>>;

// Rank over the Novikov field: Gaussian elimination on truncated series,
// pivoting on the entry of minimal leading weight (ties: exponent vector,
// then row, then column) and inverting pivots as leading-monomial units.
// Entries that end up without terms are certified zero only when their
// cutoff is at least c; otherwise InsufficientCutoff is thrown. A pivot whose
// minimal-weight block is not a single monomial raises NonUnitPivot.
std::size_t rank_over_truncated_novikov(const SeriesMatrix& matrix, const Real& c);

// Cutoff to embed polynomial entries with so that elimination can certify
// ranks below c: c + 2 * (rows + 1) * (max |term weight|).
Real sufficient_cutoff(const PolyMatrix& matrix, const WeightedLattice& lattice, const Real& c);

// Embeds each entry as a series truncated at `cutoff`.
SeriesMatrix to_series_matrix(const PolyMatrix& matrix, const LatticePtr& lattice, const Real& cutoff);

struct BettiReport {
    std::map<int, std::size_t> betti;
    std::map<int, std::size_t> boundary_ranks; // rank of boundary(k)
    std::map<int, std::size_t> chain_ranks;
    std::size_t deck_rank = 0; // rank of Gamma_1
    std::string field;

    std::size_t total() const;
    long euler_characteristic() const;
};

// Specializes to Gamma_1 = H_1 / ker I_theta and computes the Betti numbers
// over Frac(Q[Gamma_1]), which by flat base change agree with the Betti
// numbers over the Novikov field. Throws PreconditionError on an invalid
// complex.
BettiReport novikov_betti(const GroupRingComplex& complex, const WeightedLattice& theta);

} // namespace novikov

#endif
