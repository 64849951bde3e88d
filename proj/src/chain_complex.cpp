#include <novikov/chain_complex.hpp>

#include <algorithm>

#include <novikov/error.hpp>

namespace novikov
{

int Grading::reduce(int degree) const
{
    if (!chern_number) {
        return degree;
    }
    const int period = 2 * *chern_number;
    return ((degree % period) + period) % period;
}

GroupRingComplex::GroupRingComplex(WeightedLattice lattice, Grading grading, std::map<int, std::size_t> ranks,
                                   std::map<int, PolyMatrix> boundaries,
                                   std::map<int, std::vector<std::string>> labels)
    : m_lattice(std::move(lattice)), m_grading(grading), m_ranks(std::move(ranks)),
      m_boundaries(std::move(boundaries)), m_labels(std::move(labels))
{
    if (m_grading.chern_number && *m_grading.chern_number <= 0) {
        throw PreconditionError("minimal Chern number must be positive");
    }
    for (const auto& [k, d] : m_boundaries) {
        if (d.rows() != rank(k - 1) || d.cols() != rank(k)) {
            throw ShapeError("boundary in degree " + std::to_string(k) + " has shape " + std::to_string(d.rows()) + "x"
                             + std::to_string(d.cols()) + ", expected " + std::to_string(rank(k - 1)) + "x"
                             + std::to_string(rank(k)));
        }
        for (std::size_t r = 0; r < d.rows(); ++r) {
            for (std::size_t c = 0; c < d.cols(); ++c) {
                if (d(r, c).nvars() != m_lattice.rank()) {
                    throw ShapeError("boundary entry in degree " + std::to_string(k)
                                     + " uses the wrong number of variables");
                }
            }
        }
    }
    for (const auto& [k, names] : m_labels) {
        if (names.size() != rank(k)) {
            throw ShapeError("label count in degree " + std::to_string(k) + " does not match its rank");
        }
    }
}

std::size_t GroupRingComplex::rank(int degree) const
{
    const auto it = m_ranks.find(degree);
    return it == m_ranks.end() ? 0 : it->second;
}

PolyMatrix GroupRingComplex::boundary(int degree) const
{
    const auto it = m_boundaries.find(degree);
    if (it != m_boundaries.end()) {
        return it->second;
    }
    return zero_poly_matrix(rank(degree - 1), rank(degree), nvars());
}

std::vector<int> GroupRingComplex::degrees() const
{
    std::vector<int> out;
    for (const auto& [k, r] : m_ranks) {
        if (r > 0) {
            out.push_back(k);
        }
    }
    return out;
}

ValidationReport validate_complex(const GroupRingComplex& complex)
{
    ValidationReport report;
    for (const auto& [k, d] : complex.boundaries()) {
        const auto next = complex.boundaries().find(k + 1);
        if (next == complex.boundaries().end()) {
            continue;
        }
        const PolyMatrix prod = multiply(d, next->second, complex.nvars());
        for (std::size_t r = 0; r < prod.rows(); ++r) {
            for (std::size_t c = 0; c < prod.cols(); ++c) {
                if (!prod(r, c).is_zero()) {
                    report.valid = false;
                    report.degree = k;
                    report.row = r;
                    report.col = c;
                    report.message = "boundary(" + std::to_string(k) + ") * boundary(" + std::to_string(k + 1)
                                     + ") has entry (" + std::to_string(r) + "," + std::to_string(c)
                                     + ") = " + prod(r, c).str();
                    return report;
                }
            }
        }
    }
    return report;
}

GroupRingComplex specialize_to_theta(const GroupRingComplex& complex, const WeightedLattice& theta)
{
    if (theta.rank() != complex.nvars()) {
        throw ShapeError("weight lattice rank " + std::to_string(theta.rank()) + " does not match the complex rank "
                         + std::to_string(complex.nvars()));
    }
    const Splitting split = kernel_and_split(theta);
    WeightedLattice target = image_lattice(theta, split);
    const std::size_t r = split.image_rank;
    auto project = [&](const Monomial& g) { return project_to_quotient(theta, split, g); };
    std::map<int, PolyMatrix> boundaries;
    for (const auto& [k, d] : complex.boundaries()) {
        PolyMatrix out = zero_poly_matrix(d.rows(), d.cols(), r);
        for (std::size_t i = 0; i < d.rows(); ++i) {
            for (std::size_t j = 0; j < d.cols(); ++j) {
                out(i, j) = d(i, j).map_monomials(r, project);
            }
        }
        boundaries.emplace(k, std::move(out));
    }
    return GroupRingComplex(std::move(target), complex.grading(), complex.ranks(), std::move(boundaries),
                            complex.labels());
}

long euler_characteristic(const GroupRingComplex& complex)
{
    long chi = 0;
    for (const auto& [k, r] : complex.ranks()) {
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(r);
    }
    return chi;
}

GroupRingComplex circle_complex()
{
    return torus_complex(1);
}

GroupRingComplex torus_complex(std::size_t dim)
{
    if (dim == 0 || dim > 8) {
        throw PreconditionError("torus dimension must be between 1 and 8");
    }
    // Cells of degree k are the k-subsets of {0..dim-1}, ordered
    // lexicographically as bitmasks sorted by their element lists.
    std::vector<std::vector<std::vector<std::size_t>>> cells(dim + 1);
    for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < dim; ++i) {
            if (mask & (1u << i)) {
                s.push_back(i);
            }
        }
        cells[s.size()].push_back(std::move(s));
    }
    for (auto& c : cells) {
        std::sort(c.begin(), c.end());
    }
    std::map<int, std::size_t> ranks;
    std::map<int, std::vector<std::string>> labels;
    for (std::size_t k = 0; k <= dim; ++k) {
        ranks[static_cast<int>(k)] = cells[k].size();
        std::vector<std::string> names;
        for (const auto& s : cells[k]) {
            std::string n = "e";
            for (auto i : s) {
                n += std::to_string(i);
            }
            names.push_back(n);
        }
        labels[static_cast<int>(k)] = std::move(names);
    }
    std::map<int, PolyMatrix> boundaries;
    for (std::size_t k = 1; k <= dim; ++k) {
        PolyMatrix d = zero_poly_matrix(cells[k - 1].size(), cells[k].size(), dim);
        for (std::size_t col = 0; col < cells[k].size(); ++col) {
            const auto& s = cells[k][col];
            for (std::size_t pos = 0; pos < s.size(); ++pos) {
                std::vector<std::size_t> face = s;
                face.erase(face.begin() + static_cast<long>(pos));
                const auto row = static_cast<std::size_t>(
                    std::lower_bound(cells[k - 1].begin(), cells[k - 1].end(), face) - cells[k - 1].begin());
                const Rational sign = pos % 2 == 0 ? 1 : -1;
                d(row, col) = sign * LaurentPoly::generator_minus_one(dim, s[pos]);
            }
        }
        boundaries.emplace(static_cast<int>(k), std::move(d));
    }
    return GroupRingComplex(WeightedLattice::zero_weight(dim), Grading{}, std::move(ranks), std::move(boundaries),
                            std::move(labels));
}

GroupRingComplex surface_complex(std::size_t genus)
{
    if (genus == 0 || genus > 3) {
        throw PreconditionError("surface presets cover genus 1 to 3");
    }
    const std::size_t m = 2 * genus;
    PolyMatrix d1 = zero_poly_matrix(1, m, m);
    PolyMatrix d2 = zero_poly_matrix(m, 1, m);
    std::vector<std::string> edges;
    for (std::size_t i = 0; i < genus; ++i) {
        const std::size_t a = 2 * i, b = 2 * i + 1;
        d1(0, a) = LaurentPoly::generator_minus_one(m, a);
        d1(0, b) = LaurentPoly::generator_minus_one(m, b);
        // d/da [a,b] = 1 - b,  d/db [a,b] = a - 1 after abelianization.
        d2(a, 0) = -LaurentPoly::generator_minus_one(m, b);
        d2(b, 0) = LaurentPoly::generator_minus_one(m, a);
        edges.push_back("a" + std::to_string(i + 1));
        edges.push_back("b" + std::to_string(i + 1));
    }
    std::map<int, PolyMatrix> boundaries;
    boundaries.emplace(1, std::move(d1));
    boundaries.emplace(2, std::move(d2));
    return GroupRingComplex(WeightedLattice::zero_weight(m), Grading{}, {{0, 1}, {1, m}, {2, 1}},
                            std::move(boundaries), {{0, {"v"}}, {1, edges}, {2, {"f"}}});
}

GroupRingComplex preset_complex(const std::string& name)
{
    // trailing decimal number of a preset name, or 0
    const auto suffix = [&](std::size_t from) {
        const std::string digits = name.substr(from);
        if (digits.empty() || digits.size() > 2 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            return 0;
        }
        return std::stoi(digits);
    };
    if (name == "circle") {
        return circle_complex();
    }
    if (name.rfind("torus", 0) == 0) {
        const int dim = suffix(5);
        if (dim >= 1 && dim <= 8) {
            return torus_complex(static_cast<std::size_t>(dim));
        }
    }
    if (name.rfind("surface_g", 0) == 0) {
        const int g = suffix(9);
        if (g >= 1 && g <= 3) {
            return surface_complex(static_cast<std::size_t>(g));
        }
    }
    throw ParseError("unknown preset '" + name + "'");
}

} // namespace novikov
