#include <novikov/series.hpp>

namespace novikov
{

namespace
{

void merge_channel(std::vector<Channel>& out, std::vector<Rational> row, const Channel& src)
{
    for (auto& ch : out) {
        if (ch.value == src.value) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                ch.row[i] += row[i];
            }
            return;
        }
    }
    out.push_back(Channel{std::move(row), src.value, src.value_text});
}

std::vector<Channel> drop_zero_rows(std::vector<Channel> channels)
{
    std::vector<Channel> out;
    for (auto& ch : channels) {
        const bool zero = std::all_of(ch.row.begin(), ch.row.end(), [](const Rational& q) { return q == 0; });
        if (!zero) {
            out.push_back(std::move(ch));
        }
    }
    return out;
}

} // namespace

WeightedLattice interpolate_weight(const WeightedLattice& lower, const WeightedLattice& upper, const Rational& a,
                                   const Rational& b)
{
    if (lower.rank() != upper.rank()) {
        throw ShapeError("cannot interpolate weights on lattices of different rank");
    }
    std::vector<Channel> channels;
    for (const auto& ch : lower.channels()) {
        std::vector<Rational> row;
        for (const auto& q : ch.row) {
            row.push_back(a * q);
        }
        merge_channel(channels, std::move(row), ch);
    }
    for (const auto& ch : upper.channels()) {
        std::vector<Rational> row;
        for (const auto& q : ch.row) {
            row.push_back(b * q);
        }
        merge_channel(channels, std::move(row), ch);
    }
    return WeightedLattice(lower.rank(), drop_zero_rows(std::move(channels)),
                           std::min(lower.separation(), upper.separation()));
}

WeightedLattice novikov_weight(const WeightedLattice& theta, const WeightedLattice& omega, const Rational& tau)
{
    const std::size_t m1 = theta.rank();
    const std::size_t m2 = omega.rank();
    std::vector<Channel> channels;
    for (const auto& ch : theta.channels()) {
        std::vector<Rational> row(m1 + m2, 0);
        for (std::size_t i = 0; i < m1; ++i) {
            row[i] = tau * ch.row[i];
        }
        merge_channel(channels, std::move(row), ch);
    }
    for (const auto& ch : omega.channels()) {
        std::vector<Rational> row(m1 + m2, 0);
        for (std::size_t i = 0; i < m2; ++i) {
            row[m1 + i] = -ch.row[i];
        }
        merge_channel(channels, std::move(row), ch);
    }
    return WeightedLattice(m1 + m2, drop_zero_rows(std::move(channels)),
                           std::min(theta.separation(), omega.separation()));
}

} // namespace novikov
