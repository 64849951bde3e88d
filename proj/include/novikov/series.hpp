#ifndef NOVIKOV_SERIES_HPP
#define NOVIKOV_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <novikov/coefficients.hpp>
#include <novikov/error.hpp>
#include <novikov/lattice.hpp>
#include <novikov/numeric.hpp>

namespace novikov
{

template <CoefficientRing R>
struct Term {
    R coeff;
    Monomial monomial;

    friend bool operator==(const Term&, const Term&) = default;
};

using LatticePtr = std::shared_ptr<const WeightedLattice>;

inline LatticePtr share(WeightedLattice lattice)
{
    return std::make_shared<const WeightedLattice>(std::move(lattice));
}

namespace detail
{

// Cutoffs are sums of rounded weights, so a term sitting exactly on one can
// evaluate a hair below it. Values within the margin count as on the cutoff.
inline bool below_cutoff(const Real& value, const Real& cutoff)
{
    static const Real margin("1e-40");
    return value < cutoff - margin;
}

inline WeightKey add_keys(const WeightKey& a, const WeightKey& b)
{
    WeightKey out;
    out.coords.resize(a.coords.size());
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        out.coords[j] = a.coords[j] + b.coords[j];
    }
    out.value = a.value + b.value;
    return out;
}

inline Monomial add_monomials(const Monomial& a, const Monomial& b)
{
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

inline Monomial sub_monomials(const Monomial& a, const Monomial& b)
{
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b)
{
    return a == b || *a == *b;
}

} // namespace detail

// Finite part below `cutoff` of an element of the upward completion
// R((Gamma, phi)): terms are sorted by weight, equal weights broken
// lexicographically on the exponent vector. The cutoff certifies that every
// term of weight < cutoff is present; +inf marks an exact (finite) element.
template <CoefficientRing R>
class TruncatedSeries
{
public:
    using term_type = Term<R>;

    TruncatedSeries() = default;

    TruncatedSeries(LatticePtr lattice, Real cutoff) : m_lattice(std::move(lattice)), m_cutoff(std::move(cutoff))
    {
    }

    // Combines duplicate monomials, drops zero coefficients and terms at or
    // above the cutoff, then sorts.
    TruncatedSeries(LatticePtr lattice, std::vector<term_type> terms, Real cutoff)
        : m_lattice(std::move(lattice)), m_cutoff(std::move(cutoff))
    {
        std::map<Monomial, R> acc;
        for (auto& t : terms) {
            m_lattice->check_shape(t.monomial);
            auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
            if (!inserted) {
                it->second += t.coeff;
            }
        }
        std::vector<std::pair<term_type, WeightKey>> keyed;
        for (auto& [mono, coeff] : acc) {
            if (ring_traits<R>::is_zero(coeff)) {
                continue;
            }
            WeightKey k = m_lattice->key(mono);
            if (!detail::below_cutoff(k.value, m_cutoff)) {
                continue;
            }
            keyed.emplace_back(term_type{coeff, mono}, std::move(k));
        }
        assign_sorted(std::move(keyed));
    }

    static TruncatedSeries one(LatticePtr lattice, Real cutoff)
    {
        const std::size_t m = lattice->rank();
        return TruncatedSeries(std::move(lattice), {term_type{R(1), Monomial(m, 0)}}, std::move(cutoff));
    }

    static TruncatedSeries monomial(LatticePtr lattice, R coeff, Monomial g, Real cutoff)
    {
        return TruncatedSeries(std::move(lattice), {term_type{std::move(coeff), std::move(g)}}, std::move(cutoff));
    }

    const LatticePtr& lattice_ptr() const noexcept
    {
        return m_lattice;
    }
    const WeightedLattice& lattice() const noexcept
    {
        return *m_lattice;
    }
    const std::vector<term_type>& terms() const noexcept
    {
        return m_terms;
    }
    const std::vector<WeightKey>& keys() const noexcept
    {
        return m_keys;
    }
    const Real& cutoff() const noexcept
    {
        return m_cutoff;
    }
    bool empty() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }

    // Weight of the leading term; for an empty series the cutoff, which bounds
    // from below every weight the represented element can carry.
    Real lower_bound() const
    {
        return m_terms.empty() ? m_cutoff : m_keys.front().value;
    }

    // Number of leading terms sharing the minimal weight.
    std::size_t leading_block_size() const
    {
        std::size_t n = 0;
        while (n < m_terms.size() && m_lattice->compare(m_keys[n], m_keys.front()) == Ordering::equal) {
            ++n;
        }
        return n;
    }

    // Exact zero: no terms and an infinite cutoff.
    bool is_exact_zero() const
    {
        return m_terms.empty() && boost::multiprecision::isinf(m_cutoff);
    }

    TruncatedSeries with_cutoff(const Real& c) const
    {
        TruncatedSeries out(m_lattice, std::min(c, m_cutoff));
        for (std::size_t i = 0; i < m_terms.size(); ++i) {
            if (detail::below_cutoff(m_keys[i].value, out.m_cutoff)) {
                out.m_terms.push_back(m_terms[i]);
                out.m_keys.push_back(m_keys[i]);
            }
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.m_cutoff == b.m_cutoff && a.m_terms == b.m_terms;
    }

    // Internal: builds from terms already carrying their keys.
    static TruncatedSeries from_keyed(LatticePtr lattice, std::vector<std::pair<term_type, WeightKey>> keyed,
                                      Real cutoff)
    {
        TruncatedSeries out(std::move(lattice), std::move(cutoff));
        std::vector<std::pair<term_type, WeightKey>> kept;
        kept.reserve(keyed.size());
        for (auto& e : keyed) {
            if (!ring_traits<R>::is_zero(e.first.coeff) && detail::below_cutoff(e.second.value, out.m_cutoff)) {
                kept.push_back(std::move(e));
            }
        }
        out.assign_sorted(std::move(kept));
        return out;
    }

private:
    void assign_sorted(std::vector<std::pair<term_type, WeightKey>> keyed)
    {
        const WeightedLattice& lat = *m_lattice;
        std::sort(keyed.begin(), keyed.end(), [&lat](const auto& x, const auto& y) {
            const Ordering o = lat.compare(x.second, y.second);
            if (o != Ordering::equal) {
                return o == Ordering::less;
            }
            return x.first.monomial < y.first.monomial;
        });
        m_terms.clear();
        m_keys.clear();
        m_terms.reserve(keyed.size());
        m_keys.reserve(keyed.size());
        for (auto& [t, k] : keyed) {
            m_terms.push_back(std::move(t));
            m_keys.push_back(std::move(k));
        }
    }

    LatticePtr m_lattice;
    std::vector<term_type> m_terms;
    std::vector<WeightKey> m_keys;
    Real m_cutoff{0};
};

namespace detail
{

template <CoefficientRing R>
void check_same_lattice(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    if (!same_lattice(a.lattice_ptr(), b.lattice_ptr())) {
        throw ShapeError("series live over different lattices");
    }
}

// All convolution terms of weight < bound, combined by monomial.
template <CoefficientRing R>
std::vector<std::pair<Term<R>, WeightKey>> convolve_below(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b,
                                                          const Real& bound)
{
    std::map<Monomial, std::pair<R, WeightKey>> acc;
    const auto& at = a.terms();
    const auto& bt = b.terms();
    for (std::size_t i = 0; i < at.size(); ++i) {
        if (b.empty() || !below_cutoff(a.keys()[i].value + b.keys().front().value, bound)) {
            break;
        }
        for (std::size_t j = 0; j < bt.size(); ++j) {
            const Real w = a.keys()[i].value + b.keys()[j].value;
            if (!below_cutoff(w, bound)) {
                break;
            }
            Monomial g = add_monomials(at[i].monomial, bt[j].monomial);
            R c = at[i].coeff * bt[j].coeff;
            auto it = acc.find(g);
            if (it == acc.end()) {
                acc.emplace(std::move(g), std::make_pair(std::move(c), add_keys(a.keys()[i], b.keys()[j])));
            } else {
                it->second.first += c;
            }
        }
    }
    std::vector<std::pair<Term<R>, WeightKey>> out;
    out.reserve(acc.size());
    for (auto& [g, ck] : acc) {
        out.emplace_back(Term<R>{std::move(ck.first), g}, std::move(ck.second));
    }
    return out;
}

} // namespace detail

// Termwise sum; cutoff is the smaller of the two.
template <CoefficientRing R>
TruncatedSeries<R> series_add(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    detail::check_same_lattice(a, b);
    const Real cutoff = std::min(a.cutoff(), b.cutoff());
    std::map<Monomial, std::pair<R, WeightKey>> acc;
    auto absorb = [&](const TruncatedSeries<R>& s) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!detail::below_cutoff(s.keys()[i].value, cutoff)) {
                break;
            }
            const auto& t = s.terms()[i];
            auto it = acc.find(t.monomial);
            if (it == acc.end()) {
                acc.emplace(t.monomial, std::make_pair(t.coeff, s.keys()[i]));
            } else {
                it->second.first += t.coeff;
            }
        }
    };
    absorb(a);
    absorb(b);
    std::vector<std::pair<Term<R>, WeightKey>> keyed;
    for (auto& [g, ck] : acc) {
        keyed.emplace_back(Term<R>{std::move(ck.first), g}, std::move(ck.second));
    }
    return TruncatedSeries<R>::from_keyed(a.lattice_ptr(), std::move(keyed), cutoff);
}

template <CoefficientRing R>
TruncatedSeries<R> series_scale(const TruncatedSeries<R>& a, const R& c)
{
    if (ring_traits<R>::is_zero(c)) {
        return TruncatedSeries<R>(a.lattice_ptr(), real_infinity());
    }
    std::vector<std::pair<Term<R>, WeightKey>> keyed;
    for (std::size_t i = 0; i < a.size(); ++i) {
        keyed.emplace_back(Term<R>{a.terms()[i].coeff * c, a.terms()[i].monomial}, a.keys()[i]);
    }
    return TruncatedSeries<R>::from_keyed(a.lattice_ptr(), std::move(keyed), a.cutoff());
}

template <CoefficientRing R>
TruncatedSeries<R> series_sub(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    return series_add(a, series_scale(b, R(-1)));
}

// Product. The result is certified below
//     min(cutoff_a + lead_b, cutoff_b + lead_a),
// where lead is the leading weight (or the cutoff of an empty operand).
template <CoefficientRing R>
TruncatedSeries<R> series_mul(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    detail::check_same_lattice(a, b);
    const Real cutoff = std::min(a.cutoff() + b.lower_bound(), b.cutoff() + a.lower_bound());
    return TruncatedSeries<R>::from_keyed(a.lattice_ptr(), detail::convolve_below(a, b, cutoff), cutoff);
}

// Inverse of a series whose leading block is a single monomial with a unit
// coefficient. Writing a = c x^g (1 - r) with r of positive weight, the inverse
// is c^-1 x^-g (1 + r + r^2 + ...), certified below
//     min(target_cutoff - w, cutoff_a - 2 w),   w = weight(g),
// so that a * a^-1 = 1 holds below min(target_cutoff, cutoff_a - w).
template <CoefficientRing R>
TruncatedSeries<R> series_invert_unit(const TruncatedSeries<R>& a, const Real& target_cutoff)
{
    if (a.empty()) {
        throw PreconditionError("series with no terms below its cutoff has no inverse");
    }
    if (a.leading_block_size() != 1) {
        throw NonUnitPivot("leading block of the series is not a single monomial");
    }
    const auto& lead = a.terms().front();
    if (!ring_traits<R>::is_unit(lead.coeff)) {
        throw NonUnitPivot("leading coefficient is not invertible");
    }
    const R lead_inv = ring_traits<R>::inverse(lead.coeff);
    const WeightKey& lead_key = a.keys().front();
    const Real w = lead_key.value;
    const Real cutoff = std::min(target_cutoff - w, a.cutoff() - 2 * w);
    const LatticePtr& lat = a.lattice_ptr();
    const std::size_t m = lat->rank();

    WeightKey neg_lead;
    neg_lead.coords.resize(lead_key.coords.size());
    for (std::size_t j = 0; j < neg_lead.coords.size(); ++j) {
        neg_lead.coords[j] = -lead_key.coords[j];
    }
    neg_lead.value = -w;
    const Monomial neg_g = detail::sub_monomials(Monomial(m, 0), lead.monomial);

    if (a.size() == 1 && boost::multiprecision::isinf(cutoff)) {
        return TruncatedSeries<R>::from_keyed(lat, {{Term<R>{lead_inv, neg_g}, neg_lead}}, cutoff);
    }
    if (boost::multiprecision::isinf(cutoff)) {
        throw PreconditionError("an infinite target cutoff needs a monomial series");
    }

    // r = -(a / (c x^g) - 1), known below cutoff_a - w; only its terms below
    // bound = cutoff + w contribute.
    const Real bound = cutoff + w;
    std::vector<std::pair<Term<R>, WeightKey>> r_terms;
    for (std::size_t i = 1; i < a.size(); ++i) {
        r_terms.emplace_back(Term<R>{-(a.terms()[i].coeff * lead_inv), detail::add_monomials(a.terms()[i].monomial, neg_g)},
                             detail::add_keys(a.keys()[i], neg_lead));
    }
    const auto r = TruncatedSeries<R>::from_keyed(lat, std::move(r_terms), bound);
    auto power = TruncatedSeries<R>::one(lat, bound);
    auto sum = power;
    while (true) {
        power = TruncatedSeries<R>::from_keyed(lat, detail::convolve_below(power, r, bound), bound);
        if (power.empty()) {
            break;
        }
        sum = series_add(sum, power);
    }
    std::vector<std::pair<Term<R>, WeightKey>> out;
    for (std::size_t i = 0; i < sum.size(); ++i) {
        out.emplace_back(Term<R>{sum.terms()[i].coeff * lead_inv, detail::add_monomials(sum.terms()[i].monomial, neg_g)},
                         detail::add_keys(sum.keys()[i], neg_lead));
    }
    return TruncatedSeries<R>::from_keyed(lat, std::move(out), cutoff);
}

// Element of R[ker phi]((phi(Gamma))): coefficients are finite group-ring
// elements over the kernel, indexed by complement coordinates.
template <CoefficientRing R>
struct SeriesGroup {
    Monomial image;                 // complement coordinates (length image_rank)
    std::vector<Term<R>> kernel_terms; // monomials in Z^m lying in ker phi

    friend bool operator==(const SeriesGroup&, const SeriesGroup&) = default;
};

template <CoefficientRing R>
struct GroupedSeries {
    LatticePtr lattice;
    Splitting split;
    Real cutoff;
    std::vector<SeriesGroup<R>> groups; // sorted by image weight
};

// Regrouping map R((Gamma, phi)) -> R[ker phi]((phi(Gamma))): each monomial g
// is written as alpha + beta with alpha in the kernel and beta in the
// complement, and terms are collected by beta.
template <CoefficientRing R>
GroupedSeries<R> series_regroup(const TruncatedSeries<R>& a, const Splitting& split)
{
    const WeightedLattice& lat = a.lattice();
    if (split.kernel_basis.size() + split.image_rank != lat.rank()) {
        throw ShapeError("splitting does not belong to the series lattice");
    }
    GroupedSeries<R> out{a.lattice_ptr(), split, a.cutoff(), {}};
    // Equal image coordinates <=> equal weight, so consecutive equal-weight
    // runs of the sorted term list are exactly the groups.
    std::size_t i = 0;
    while (i < a.size()) {
        std::size_t j = i;
        std::map<Monomial, std::vector<Term<R>>> by_image;
        while (j < a.size() && lat.compare(a.keys()[j], a.keys()[i]) == Ordering::equal) {
            const auto& t = a.terms()[j];
            const Monomial beta = project_to_quotient(lat, split, t.monomial);
            by_image[beta].push_back(Term<R>{t.coeff, kernel_part(lat, split, t.monomial)});
            ++j;
        }
        for (auto& [beta, terms] : by_image) {
            std::sort(terms.begin(), terms.end(),
                      [](const Term<R>& x, const Term<R>& y) { return x.monomial < y.monomial; });
            out.groups.push_back(SeriesGroup<R>{beta, std::move(terms)});
        }
        i = j;
    }
    return out;
}

// Inverse of series_regroup.
template <CoefficientRing R>
TruncatedSeries<R> series_ungroup(const GroupedSeries<R>& g)
{
    std::vector<Term<R>> terms;
    for (const auto& grp : g.groups) {
        const Monomial beta = embed_from_quotient(g.split, grp.image);
        for (const auto& t : grp.kernel_terms) {
            terms.push_back(Term<R>{t.coeff, detail::add_monomials(t.monomial, beta)});
        }
    }
    return TruncatedSeries<R>(g.lattice, std::move(terms), g.cutoff);
}

// A series in the intersection ring of two completions: it is completed in the
// upward direction of two weights psi_lower and psi_upper (the weights at the
// endpoints tau_1 and tau_2 of an interval). Every term with
// psi_lower < lower_cutoff or psi_upper < upper_cutoff is listed.
template <CoefficientRing R>
class BiWeightedSeries
{
public:
    BiWeightedSeries(LatticePtr lower, LatticePtr upper, std::vector<Term<R>> terms, Real lower_cutoff,
                     Real upper_cutoff)
        : m_lower(std::move(lower)), m_upper(std::move(upper)), m_lower_cutoff(std::move(lower_cutoff)),
          m_upper_cutoff(std::move(upper_cutoff))
    {
        if (m_lower->rank() != m_upper->rank()) {
            throw ShapeError("endpoint weights live on lattices of different rank");
        }
        std::map<Monomial, R> acc;
        for (auto& t : terms) {
            m_lower->check_shape(t.monomial);
            auto [it, inserted] = acc.try_emplace(t.monomial, t.coeff);
            if (!inserted) {
                it->second += t.coeff;
            }
        }
        for (auto& [g, c] : acc) {
            if (ring_traits<R>::is_zero(c)) {
                continue;
            }
            if (detail::below_cutoff(m_lower->weight(g), m_lower_cutoff) || detail::below_cutoff(m_upper->weight(g), m_upper_cutoff)) {
                m_terms.push_back(Term<R>{c, g});
            }
        }
    }

    const WeightedLattice& lower() const noexcept
    {
        return *m_lower;
    }
    const WeightedLattice& upper() const noexcept
    {
        return *m_upper;
    }
    const Real& lower_cutoff() const noexcept
    {
        return m_lower_cutoff;
    }
    const Real& upper_cutoff() const noexcept
    {
        return m_upper_cutoff;
    }
    const std::vector<Term<R>>& terms() const noexcept
    {
        return m_terms;
    }

private:
    LatticePtr m_lower;
    LatticePtr m_upper;
    Real m_lower_cutoff;
    Real m_upper_cutoff;
    std::vector<Term<R>> m_terms; // sorted by monomial
};

// Weight a * psi_lower + b * psi_upper as a lattice; channels with equal values
// are merged so the channel values stay distinct.
WeightedLattice interpolate_weight(const WeightedLattice& lower, const WeightedLattice& upper, const Rational& a,
                                   const Rational& b);

// Psi_{theta*tau, omega} = tau * I_theta (+) -I_omega on Gamma_1 (+) Gamma_2.
WeightedLattice novikov_weight(const WeightedLattice& theta, const WeightedLattice& omega, const Rational& tau);

// Finite part below c of `s` viewed in the completion at an intermediate tau.
// With a = (tau2 - tau)/(tau2 - tau1), b = (tau - tau1)/(tau2 - tau1), any term
// of tau-weight < c has psi_lower < c/(2a) or psi_upper < c/(2b), so the listing
// is complete once the two cutoffs reach those bounds.
template <CoefficientRing R>
TruncatedSeries<R> series_retruncate(const BiWeightedSeries<R>& s, const Rational& tau1, const Rational& tau,
                                     const Rational& tau2, const Real& c)
{
    if (tau1 > tau2 || tau < tau1 || tau > tau2) {
        throw PreconditionError("retruncation needs tau1 <= tau <= tau2");
    }
    Rational a = 1, b = 0;
    if (tau2 != tau1) {
        a = (tau2 - tau) / (tau2 - tau1);
        b = (tau - tau1) / (tau2 - tau1);
    }
    if (b == 0) {
        if (s.lower_cutoff() < c) {
            throw PreconditionError("lower cutoff " + format_real(s.lower_cutoff()) + " is below " + format_real(c));
        }
    } else if (a == 0) {
        if (s.upper_cutoff() < c) {
            throw PreconditionError("upper cutoff " + format_real(s.upper_cutoff()) + " is below " + format_real(c));
        }
    } else {
        const Real need_lower = c / (2 * to_real(a));
        const Real need_upper = c / (2 * to_real(b));
        if (s.lower_cutoff() < need_lower || s.upper_cutoff() < need_upper) {
            throw PreconditionError("cutoffs do not certify completeness below " + format_real(c) + " (need "
                                    + format_real(need_lower) + " and " + format_real(need_upper) + ")");
        }
    }
    auto lat = share(interpolate_weight(s.lower(), s.upper(), a, b));
    return TruncatedSeries<R>(lat, s.terms(), c);
}

} // namespace novikov

#endif
