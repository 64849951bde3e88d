#include <novikov/lattice.hpp>

#include <algorithm>
#include <limits>
#include <utility>

#include <novikov/error.hpp>

namespace novikov
{

namespace
{

using IntMatrix = std::vector<std::vector<Integer>>;

std::int64_t to_int64(const Integer& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw ShapeError("lattice coordinate exceeds 64-bit range");
    }
    return v.convert_to<std::int64_t>();
}

// Rank of a rational matrix by Gaussian elimination.
std::size_t rational_rank(std::vector<std::vector<Rational>> a)
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

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& x, Integer& y)
{
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

// Column echelon form A*U = [L | 0] with L lower triangular (k x k) and U
// unimodular. Requires the rows of A to be linearly independent.
void column_echelon(IntMatrix& a, IntMatrix& u, std::size_t m)
{
    const std::size_t k = a.size();
    u.assign(m, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        u[i][i] = 1;
    }
    auto combine = [&](std::size_t ci, std::size_t cj, const Integer& p, const Integer& q, const Integer& r,
                       const Integer& s) {
        // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j), det ps - qr = 1
        for (auto& row : a) {
            const Integer x = row[ci], y = row[cj];
            row[ci] = p * x + q * y;
            row[cj] = r * x + s * y;
        }
        for (auto& row : u) {
            const Integer x = row[ci], y = row[cj];
            row[ci] = p * x + q * y;
            row[cj] = r * x + s * y;
        }
    };
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (a[i][j] == 0) {
                continue;
            }
            if (a[i][i] == 0) {
                combine(i, j, 0, 1, 1, 0);
                // swap has det -1; fix the sign on column j
                for (auto& row : a) {
                    row[j] = -row[j];
                }
                for (auto& row : u) {
                    row[j] = -row[j];
                }
                continue;
            }
            Integer g, x, y;
            xgcd(a[i][i], a[i][j], g, x, y);
            const Integer ai = a[i][i] / g, aj = a[i][j] / g;
            // new col_i = x col_i + y col_j ; new col_j = -aj col_i + ai col_j
            combine(i, j, x, y, -aj, ai);
        }
        if (a[i][i] < 0) {
            for (auto& row : a) {
                row[i] = -row[i];
            }
            for (auto& row : u) {
                row[i] = -row[i];
            }
        }
    }
}

// Row Hermite normal form of an integer matrix with independent rows:
// positive pivots, entries above pivots reduced into [0, pivot).
void row_hermite(IntMatrix& h)
{
    const std::size_t rows = h.size();
    if (rows == 0) {
        return;
    }
    const std::size_t cols = h[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (std::size_t i = r + 1; i < rows; ++i) {
            while (h[i][c] != 0) {
                if (h[r][c] == 0) {
                    std::swap(h[r], h[i]);
                    continue;
                }
                const Integer q = h[i][c] / h[r][c];
                for (std::size_t k = c; k < cols; ++k) {
                    h[i][k] -= q * h[r][k];
                }
                if (h[i][c] != 0) {
                    std::swap(h[r], h[i]);
                }
            }
        }
        if (h[r][c] == 0) {
            continue;
        }
        if (h[r][c] < 0) {
            for (auto& v : h[r]) {
                v = -v;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const std::size_t c = pivots[i];
        for (std::size_t j = 0; j < i; ++j) {
            Integer q = h[j][c] / h[i][c];
            if (h[j][c] - q * h[i][c] < 0) {
                q -= 1;
            }
            if (q != 0) {
                for (std::size_t k = c; k < cols; ++k) {
                    h[j][k] -= q * h[i][k];
                }
            }
        }
    }
}

// True iff the vectors extend to a basis of Z^m.
bool is_primitive(const std::vector<Monomial>& vectors, std::size_t m)
{
    if (vectors.empty()) {
        return true;
    }
    IntMatrix a;
    for (const auto& v : vectors) {
        a.emplace_back(v.begin(), v.end());
    }
    std::vector<std::vector<Rational>> q;
    for (const auto& row : a) {
        q.emplace_back(row.begin(), row.end());
    }
    if (rational_rank(q) != vectors.size()) {
        return false;
    }
    IntMatrix u;
    column_echelon(a, u, m);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (abs(a[i][i]) != 1) {
            return false;
        }
    }
    return true;
}

Monomial to_monomial(const std::vector<Integer>& v)
{
    Monomial out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(to_int64(x));
    }
    return out;
}

} // namespace

WeightedLattice::WeightedLattice(std::size_t rank, std::vector<Channel> channels, Real separation)
    : m_rank(rank), m_channels(std::move(channels)), m_separation(std::move(separation))
{
    std::vector<std::vector<Rational>> rows;
    for (auto& ch : m_channels) {
        if (ch.row.size() != rank) {
            throw ShapeError("channel row length " + std::to_string(ch.row.size()) + " does not match lattice rank "
                             + std::to_string(rank));
        }
        if (ch.value_text.empty()) {
            ch.value_text = format_real(ch.value);
        }
        if (ch.value == 0) {
            throw PreconditionError("channel value must be nonzero");
        }
        rows.push_back(ch.row);
    }
    if (rational_rank(rows) != m_channels.size()) {
        throw PreconditionError("channel rows are linearly dependent (redundant channel)");
    }
}

WeightedLattice WeightedLattice::zero_weight(std::size_t rank)
{
    return WeightedLattice(rank, {});
}

WeightedLattice WeightedLattice::rational_class(const std::vector<Rational>& row)
{
    const bool all_zero = std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; });
    if (all_zero) {
        return zero_weight(row.size());
    }
    return WeightedLattice(row.size(), {Channel{row, Real(1), "1"}});
}

void WeightedLattice::check_shape(const Monomial& g) const
{
    if (g.size() != m_rank) {
        throw ShapeError("vector of length " + std::to_string(g.size()) + " in lattice of rank "
                         + std::to_string(m_rank));
    }
}

std::vector<Rational> WeightedLattice::channel_coordinates(const Monomial& g) const
{
    check_shape(g);
    std::vector<Rational> out;
    out.reserve(m_channels.size());
    for (const auto& ch : m_channels) {
        Rational s = 0;
        for (std::size_t i = 0; i < m_rank; ++i) {
            if (g[i] != 0 && ch.row[i] != 0) {
                s += ch.row[i] * g[i];
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

Real WeightedLattice::weight_of(const std::vector<Rational>& coords) const
{
    Real w = 0;
    for (std::size_t j = 0; j < m_channels.size(); ++j) {
        if (coords[j] != 0) {
            w += m_channels[j].value * to_real(coords[j]);
        }
    }
    return w;
}

Real WeightedLattice::weight(const Monomial& g) const
{
    return weight_of(channel_coordinates(g));
}

WeightKey WeightedLattice::key(const Monomial& g) const
{
    WeightKey k;
    k.coords = channel_coordinates(g);
    k.value = weight_of(k.coords);
    return k;
}

Ordering WeightedLattice::compare(const WeightKey& a, const WeightKey& b) const
{
    if (a.coords == b.coords) {
        return Ordering::equal;
    }
    std::vector<Rational> diff(a.coords.size());
    for (std::size_t j = 0; j < diff.size(); ++j) {
        diff[j] = a.coords[j] - b.coords[j];
    }
    const Real d = weight_of(diff);
    if (abs(d) < m_separation) {
        throw IrresolvableComparison("weights differ in channel coordinates but evaluate within "
                                     + format_real(m_separation) + "; increase precision");
    }
    return d < 0 ? Ordering::less : Ordering::greater;
}

bool operator==(const WeightedLattice& a, const WeightedLattice& b)
{
    if (a.m_rank != b.m_rank || a.m_channels.size() != b.m_channels.size()) {
        return false;
    }
    for (std::size_t j = 0; j < a.m_channels.size(); ++j) {
        if (a.m_channels[j].row != b.m_channels[j].row || a.m_channels[j].value != b.m_channels[j].value) {
            return false;
        }
    }
    return true;
}

Ordering compare_weights(const WeightedLattice& lattice, const Monomial& g1, const Monomial& g2)
{
    return lattice.compare(lattice.key(g1), lattice.key(g2));
}

Splitting kernel_and_split(const WeightedLattice& lattice)
{
    const std::size_t m = lattice.rank();
    const std::size_t k = lattice.channels().size();

    // Channel rows scaled to primitive-free integer rows; same kernel.
    IntMatrix a;
    for (const auto& ch : lattice.channels()) {
        Integer l = 1;
        for (const auto& q : ch.row) {
            l = lcm(l, Integer(denominator(q)));
        }
        std::vector<Integer> row;
        for (const auto& q : ch.row) {
            row.push_back(Integer(numerator(q) * (l / denominator(q))));
        }
        a.push_back(std::move(row));
    }
    {
        std::vector<std::vector<Rational>> q;
        for (const auto& row : a) {
            q.emplace_back(row.begin(), row.end());
        }
        if (rational_rank(q) != k) {
            throw PreconditionError("rank-deficient channel matrix");
        }
    }

    IntMatrix echelon = a;
    IntMatrix u;
    column_echelon(echelon, u, m);

    Splitting split;
    split.image_rank = k;

    IntMatrix kernel;
    for (std::size_t c = k; c < m; ++c) {
        std::vector<Integer> col(m);
        for (std::size_t r = 0; r < m; ++r) {
            col[r] = u[r][c];
        }
        kernel.push_back(std::move(col));
    }
    row_hermite(kernel);
    for (const auto& v : kernel) {
        split.kernel_basis.push_back(to_monomial(v));
    }

    // Prefer standard basis vectors for the complement, in index order.
    std::vector<Monomial> chosen = split.kernel_basis;
    for (std::size_t j = 0; j < m && split.complement_basis.size() < k; ++j) {
        Monomial e(m, 0);
        e[j] = 1;
        chosen.push_back(e);
        if (is_primitive(chosen, m)) {
            split.complement_basis.push_back(e);
        } else {
            chosen.pop_back();
        }
    }
    if (split.complement_basis.size() < k) {
        split.complement_basis.clear();
        for (std::size_t c = 0; c < k; ++c) {
            std::vector<Integer> col(m);
            for (std::size_t r = 0; r < m; ++r) {
                col[r] = u[r][c];
            }
            split.complement_basis.push_back(to_monomial(col));
        }
    }

    // Inverse of [complement | kernel]; the first k rows give the projection.
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(2 * m, 0));
    for (std::size_t c = 0; c < m; ++c) {
        const Monomial& col = c < k ? split.complement_basis[c] : split.kernel_basis[c - k];
        for (std::size_t r = 0; r < m; ++r) {
            aug[r][c] = col[r];
        }
        aug[c][m + c] = 1;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && aug[p][c] == 0) {
            ++p;
        }
        if (p == m) {
            throw Error("internal: split basis is singular");
        }
        std::swap(aug[p], aug[c]);
        const Rational inv = 1 / aug[c][c];
        for (auto& v : aug[c]) {
            v *= inv;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == c || aug[r][c] == 0) {
                continue;
            }
            const Rational f = aug[r][c];
            for (std::size_t cc = 0; cc < 2 * m; ++cc) {
                aug[r][cc] -= f * aug[c][cc];
            }
        }
    }
    for (std::size_t r = 0; r < k; ++r) {
        Monomial row(m);
        for (std::size_t c = 0; c < m; ++c) {
            const Rational& v = aug[r][m + c];
            if (denominator(v) != 1) {
                throw Error("internal: split basis is not unimodular");
            }
            row[c] = to_int64(numerator(v));
        }
        split.projection.push_back(std::move(row));
    }
    return split;
}

Monomial project_to_quotient(const WeightedLattice& lattice, const Splitting& split, const Monomial& g)
{
    lattice.check_shape(g);
    Monomial out(split.image_rank, 0);
    for (std::size_t r = 0; r < split.image_rank; ++r) {
        std::int64_t s = 0;
        for (std::size_t c = 0; c < g.size(); ++c) {
            s += split.projection[r][c] * g[c];
        }
        out[r] = s;
    }
    return out;
}

Monomial embed_from_quotient(const Splitting& split, const Monomial& image)
{
    if (image.size() != split.image_rank) {
        throw ShapeError("image vector has wrong length");
    }
    const std::size_t m = split.kernel_basis.size() + split.image_rank;
    Monomial out(m, 0);
    for (std::size_t r = 0; r < split.image_rank; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            out[c] += image[r] * split.complement_basis[r][c];
        }
    }
    return out;
}

Monomial kernel_part(const WeightedLattice& lattice, const Splitting& split, const Monomial& g)
{
    const Monomial c = embed_from_quotient(split, project_to_quotient(lattice, split, g));
    Monomial out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        out[i] = g[i] - c[i];
    }
    return out;
}

WeightedLattice image_lattice(const WeightedLattice& lattice, const Splitting& split)
{
    std::vector<Channel> channels;
    for (const auto& ch : lattice.channels()) {
        Channel induced;
        induced.value = ch.value;
        induced.value_text = ch.value_text;
        for (const auto& b : split.complement_basis) {
            Rational s = 0;
            for (std::size_t i = 0; i < b.size(); ++i) {
                s += ch.row[i] * b[i];
            }
            induced.row.push_back(s);
        }
        channels.push_back(std::move(induced));
    }
    return WeightedLattice(split.image_rank, std::move(channels), lattice.separation());
}

Integer abs_determinant(const std::vector<Monomial>& columns)
{
    const std::size_t m = columns.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    for (std::size_t c = 0; c < m; ++c) {
        if (columns[c].size() != m) {
            throw ShapeError("determinant of a non-square matrix");
        }
        for (std::size_t r = 0; r < m; ++r) {
            a[r][c] = columns[c][r];
        }
    }
    Rational det = 1;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t p = c;
        while (p < m && a[p][c] == 0) {
            ++p;
        }
        if (p == m) {
            return 0;
        }
        if (p != c) {
            std::swap(a[p], a[c]);
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < m; ++r) {
            if (a[r][c] == 0) {
                continue;
            }
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < m; ++k) {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    return Integer(abs(numerator(det)));
}

} // namespace novikov
