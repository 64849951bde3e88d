#include <novikov/betti.hpp>

#include <algorithm>
#include <random>

#include <novikov/error.hpp>

namespace novikov
{

namespace
{

void strip_rational_content(std::vector<LaurentPoly*>& row)
{
    Integer num = 0, den = 1;
    bool any = false;
    for (const auto* p : row) {
        for (const auto& [g, c] : p->terms()) {
            num = gcd(num, Integer(numerator(c)));
            den = lcm(den, Integer(denominator(c)));
            any = true;
        }
    }
    if (!any || (num == 1 && den == 1)) {
        return;
    }
    const Rational scale(den, num);
    for (auto* p : row) {
        *p = scale * *p;
    }
}

std::size_t rational_matrix_rank(std::vector<std::vector<Rational>> a)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c] == 0) {
                continue;
            }
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < cols; ++k) {
                a[r][k] -= f * a[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t rank_over_fraction_field(const PolyMatrix& matrix)
{
    PolyMatrix a = matrix;
    const std::size_t rows = a.rows(), cols = a.cols();
    const std::size_t nvars = rows && cols ? a(0, 0).nvars() : 0;
    std::vector<std::size_t> row_of(rows), col_of(cols);
    for (std::size_t i = 0; i < rows; ++i) {
        row_of[i] = i;
    }
    for (std::size_t j = 0; j < cols; ++j) {
        col_of[j] = j;
    }
    auto at = [&](std::size_t i, std::size_t j) -> LaurentPoly& { return a(row_of[i], col_of[j]); };

    LaurentPoly previous = LaurentPoly::constant(nvars, 1);
    std::size_t k = 0;
    while (k < std::min(rows, cols)) {
        // Sparsest nonzero pivot keeps intermediate minors small.
        std::size_t best_i = rows, best_j = cols, best_size = 0;
        for (std::size_t i = k; i < rows; ++i) {
            for (std::size_t j = k; j < cols; ++j) {
                const auto s = at(i, j).size();
                if (s > 0 && (best_i == rows || s < best_size)) {
                    best_i = i;
                    best_j = j;
                    best_size = s;
                }
            }
        }
        if (best_i == rows) {
            break;
        }
        std::swap(row_of[k], row_of[best_i]);
        std::swap(col_of[k], col_of[best_j]);
        const LaurentPoly pivot = at(k, k);
        for (std::size_t i = k + 1; i < rows; ++i) {
            const LaurentPoly factor = at(i, k);
            for (std::size_t j = k + 1; j < cols; ++j) {
                LaurentPoly num = pivot * at(i, j) - factor * at(k, j);
                auto q = divide_exact(num, previous);
                if (!q) {
                    throw Error("internal: Bareiss division is not exact");
                }
                at(i, j) = std::move(*q);
            }
            at(i, k) = LaurentPoly(nvars);
            // Scaling a row that has not been used as a pivot keeps every
            // later Bareiss division exact.
            std::vector<LaurentPoly*> row;
            for (std::size_t j = k + 1; j < cols; ++j) {
                row.push_back(&at(i, j));
            }
            strip_rational_content(row);
        }
        previous = pivot;
        ++k;
    }
    return k;
}

std::size_t rank_by_random_evaluation(const PolyMatrix& matrix, std::uint64_t seed, int trials)
{
    const std::size_t rows = matrix.rows(), cols = matrix.cols();
    if (rows == 0 || cols == 0) {
        return 0;
    }
    const std::size_t nvars = matrix(0, 0).nvars();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num_dist(-10000, 10000);
    std::uniform_int_distribution<long> den_dist(1, 10000);
    std::map<std::size_t, int> votes;
    for (int t = 0; t < trials; ++t) {
        std::vector<Rational> point(nvars);
        for (auto& p : point) {
            long n = 0;
            while (n == 0) {
                n = num_dist(rng);
            }
            p = Rational(n, den_dist(rng));
        }
        std::vector<std::vector<Rational>> values(rows, std::vector<Rational>(cols));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                values[i][j] = matrix(i, j).evaluate(point);
            }
        }
        ++votes[rational_matrix_rank(std::move(values))];
    }
    std::size_t best = 0;
    int best_votes = -1;
    for (const auto& [r, v] : votes) {
        // ties resolve to the larger rank: evaluation can only lose rank
        if (v >= best_votes) {
            best = r;
            best_votes = v;
        }
    }
    return best;
}

Real sufficient_cutoff(const PolyMatrix& matrix, const WeightedLattice& lattice, const Real& c)
{
    Real lead = 0;
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            bool any = false;
            Real low = 0;
            for (const auto& [g, coeff] : matrix(i, j).terms()) {
                const Real w(lattice.weight(g));
                low = any ? std::min(low, w) : w;
                any = true;
            }
            lead = std::max(lead, Real(abs(low)));
        }
    }
    return c + Real(matrix.rows()) * lead;
}

SeriesMatrix to_series_matrix(const PolyMatrix& matrix, const LatticePtr& lattice, const Real& cutoff)
{
    SeriesMatrix out(matrix.rows(), matrix.cols(), TruncatedSeries<Rational>(lattice, cutoff));
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            std::vector<Term<Rational>> terms;
            for (const auto& [g, coeff] : matrix(i, j).terms()) {
                terms.push_back(Term<Rational>{coeff, g});
            }
            out(i, j) = TruncatedSeries<Rational>(lattice, std::move(terms), cutoff);
        }
    }
    return out;
}

std::size_t rank_over_truncated_novikov(const SeriesMatrix& matrix, const Real& c)
{
    using Series = TruncatedSeries<Rational>;
    SeriesMatrix a = matrix;
    const std::size_t rows = a.rows(), cols = a.cols();
    // Exact polynomial entries get a finite working cutoff so pivots can be inverted.
    Real lead = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!a(i, j).empty()) {
                lead = std::max(lead, Real(abs(a(i, j).keys().front().value)));
            }
        }
    }
    const Real work = c + Real(rows) * lead;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!a(i, j).empty() && boost::multiprecision::isinf(a(i, j).cutoff())) {
                a(i, j) = a(i, j).with_cutoff(work);
            }
        }
    }
    std::vector<bool> row_done(rows, false), col_done(cols, false);
    std::size_t rank = 0;
    while (true) {
        // Pivot of minimal leading weight among entries with terms.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_done[i]) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_done[j] || a(i, j).empty()) {
                    continue;
                }
                if (pi == rows) {
                    pi = i;
                    pj = j;
                    continue;
                }
                const Series& cand = a(i, j);
                const Series& best = a(pi, pj);
                const Ordering o = cand.lattice().compare(cand.keys().front(), best.keys().front());
                if (o == Ordering::less
                    || (o == Ordering::equal && cand.terms().front().monomial < best.terms().front().monomial)) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == rows) {
            break;
        }
        const Series& pivot = a(pi, pj);
        if (pivot.leading_block_size() != 1) {
            throw NonUnitPivot("minimal-weight block of pivot (" + std::to_string(pi) + "," + std::to_string(pj)
                               + ") is not a monomial");
        }
        const Series inverse = series_invert_unit(pivot, pivot.cutoff() - pivot.lower_bound());
        for (std::size_t i = 0; i < rows; ++i) {
            if (row_done[i] || i == pi || a(i, pj).is_exact_zero()) {
                continue;
            }
            const Series factor = series_mul(a(i, pj), inverse);
            for (std::size_t j = 0; j < cols; ++j) {
                if (col_done[j] || j == pj) {
                    continue;
                }
                if (a(pi, j).is_exact_zero()) {
                    continue;
                }
                a(i, j) = series_sub(a(i, j), series_mul(factor, a(pi, j)));
            }
        }
        row_done[pi] = true;
        col_done[pj] = true;
        ++rank;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!row_done[i] && !col_done[j] && a(i, j).cutoff() < c) {
                throw InsufficientCutoff("entry (" + std::to_string(i) + "," + std::to_string(j)
                                         + ") is only known below " + format_real(a(i, j).cutoff())
                                         + " < " + format_real(c));
            }
        }
    }
    return rank;
}

std::size_t BettiReport::total() const
{
    std::size_t s = 0;
    for (const auto& [k, b] : betti) {
        s += b;
    }
    return s;
}

long BettiReport::euler_characteristic() const
{
    long chi = 0;
    for (const auto& [k, b] : betti) {
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b);
    }
    return chi;
}

BettiReport novikov_betti(const GroupRingComplex& complex, const WeightedLattice& theta)
{
    if (const auto v = validate_complex(complex); !v.valid) {
        throw PreconditionError("invalid complex: " + v.message);
    }
    const GroupRingComplex special = specialize_to_theta(complex, theta);
    BettiReport report;
    report.deck_rank = special.nvars();
    report.field = special.nvars() == 0 ? "Q" : "Frac(Q[Z^" + std::to_string(special.nvars()) + "])";
    for (const auto& [k, d] : special.boundaries()) {
        report.boundary_ranks[k] = rank_over_fraction_field(d);
    }
    for (const auto& [k, r] : special.ranks()) {
        report.chain_ranks[k] = r;
        const auto rank_of = [&](int deg) -> std::size_t {
            const auto it = report.boundary_ranks.find(deg);
            return it == report.boundary_ranks.end() ? 0 : it->second;
        };
        // specialized boundaries may be missing in the map; treat as zero
        const std::size_t used = rank_of(k) + rank_of(k + 1);
        if (used > r) {
            throw Error("internal: boundary ranks exceed chain rank");
        }
        report.betti[k] = r - used;
    }
    return report;
}

} // namespace novikov
