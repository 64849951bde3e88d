#ifndef NOVIKOV_CHAIN_COMPLEX_HPP
#define NOVIKOV_CHAIN_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <novikov/laurent.hpp>
#include <novikov/lattice.hpp>

namespace novikov
{

// Z-grading (chern_number empty, c_1 = 0) or Z/2N-grading.
struct Grading {
    std::optional<int> chern_number;

    bool is_integral() const noexcept
    {
        return !chern_number.has_value();
    }
    // Degree as a residue class; identity for the Z-grading.
    int reduce(int degree) const;

    friend bool operator==(const Grading&, const Grading&) = default;
};

// Finitely generated free chain complex over Q[Gamma], Gamma = Z^m given by
// `lattice`. boundary(k) maps degree k to degree k-1 and has shape
// rank(k-1) x rank(k); absent boundaries are zero.
class GroupRingComplex
{
public:
    GroupRingComplex() = default;
    GroupRingComplex(WeightedLattice lattice, Grading grading, std::map<int, std::size_t> ranks,
                     std::map<int, PolyMatrix> boundaries, std::map<int, std::vector<std::string>> labels = {});

    const WeightedLattice& lattice() const noexcept
    {
        return m_lattice;
    }
    const Grading& grading() const noexcept
    {
        return m_grading;
    }
    const std::map<int, std::size_t>& ranks() const noexcept
    {
        return m_ranks;
    }
    const std::map<int, PolyMatrix>& boundaries() const noexcept
    {
        return m_boundaries;
    }
    const std::map<int, std::vector<std::string>>& labels() const noexcept
    {
        return m_labels;
    }

    std::size_t rank(int degree) const;
    PolyMatrix boundary(int degree) const;
    std::size_t nvars() const noexcept
    {
        return m_lattice.rank();
    }
    // Degrees with nonzero rank, ascending.
    std::vector<int> degrees() const;

private:
    WeightedLattice m_lattice;
    Grading m_grading;
    std::map<int, std::size_t> m_ranks;
    std::map<int, PolyMatrix> m_boundaries;
    std::map<int, std::vector<std::string>> m_labels;
};

struct ValidationReport {
    bool valid = true;
    // Location of the first nonzero entry of boundary(degree) * boundary(degree + 1).
    int degree = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    std::string message;
};

// Exact check of boundary(k) * boundary(k+1) = 0 for every k.
ValidationReport validate_complex(const GroupRingComplex& complex);

// Base change along Q[Gamma] -> Q[Gamma / ker I_theta]: each monomial is
// replaced by its complement coordinates. The result lives over the image
// lattice with the induced weight.
GroupRingComplex specialize_to_theta(const GroupRingComplex& complex, const WeightedLattice& theta);

long euler_characteristic(const GroupRingComplex& complex);

// Cellular complexes of the universal abelian cover.
GroupRingComplex circle_complex();
// Koszul complex on t_i - 1, i.e. the standard cube structure of T^m.
GroupRingComplex torus_complex(std::size_t dim);
// One 0-cell, 2g 1-cells a_1, b_1, ..., a_g, b_g and one 2-cell attached along
// the product of commutators; boundaries are abelianized Fox derivatives.
GroupRingComplex surface_complex(std::size_t genus);

// "circle", "torus2", "torus4", "torus<m>", "surface_g1".."surface_g3".
GroupRingComplex preset_complex(const std::string& name);

} // namespace novikov

#endif
