#ifndef NOVIKOV_COEFFICIENTS_HPP
#define NOVIKOV_COEFFICIENTS_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include <novikov/error.hpp>
#include <novikov/numeric.hpp>

namespace novikov
{

// Integers modulo a prime P.
template <std::uint64_t P>
class ModP
{
    static_assert(P > 1 && P < (std::uint64_t(1) << 31), "modulus must fit comfortably in 32 bits");

public:
    ModP() = default;
    ModP(std::int64_t v) : m_v(static_cast<std::uint64_t>(((v % std::int64_t(P)) + std::int64_t(P)) % std::int64_t(P)))
    {
    }

    std::uint64_t value() const noexcept
    {
        return m_v;
    }

    friend ModP operator+(ModP a, ModP b)
    {
        return from_raw((a.m_v + b.m_v) % P);
    }
    friend ModP operator-(ModP a, ModP b)
    {
        return from_raw((a.m_v + P - b.m_v) % P);
    }
    friend ModP operator*(ModP a, ModP b)
    {
        return from_raw((a.m_v * b.m_v) % P);
    }
    ModP operator-() const
    {
        return from_raw((P - m_v) % P);
    }
    ModP& operator+=(ModP b)
    {
        return *this = *this + b;
    }
    ModP& operator-=(ModP b)
    {
        return *this = *this - b;
    }
    ModP& operator*=(ModP b)
    {
        return *this = *this * b;
    }
    friend bool operator==(ModP a, ModP b) = default;
    friend bool operator==(ModP a, int b)
    {
        return a == ModP(b);
    }

    ModP inverse() const
    {
        if (m_v == 0) {
            throw NonUnitPivot("zero has no inverse modulo " + std::to_string(P));
        }
        // Fermat: a^(P-2).
        std::uint64_t base = m_v, e = P - 2, r = 1;
        while (e) {
            if (e & 1) {
                r = (r * base) % P;
            }
            base = (base * base) % P;
            e >>= 1;
        }
        return from_raw(r);
    }

    friend std::ostream& operator<<(std::ostream& os, ModP a)
    {
        return os << a.m_v;
    }

private:
    static ModP from_raw(std::uint64_t v)
    {
        ModP r;
        r.m_v = v;
        return r;
    }
    std::uint64_t m_v = 0;
};

// Unit test and inverse for the supported coefficient domains.
template <typename R>
struct ring_traits;

template <>
struct ring_traits<Rational> {
    static bool is_unit(const Rational& x)
    {
        return x != 0;
    }
    static Rational inverse(const Rational& x)
    {
        if (x == 0) {
            throw NonUnitPivot("zero has no inverse in Q");
        }
        return Rational(1) / x;
    }
    static bool is_zero(const Rational& x)
    {
        return x == 0;
    }
};

template <>
struct ring_traits<Integer> {
    static bool is_unit(const Integer& x)
    {
        return x == 1 || x == -1;
    }
    static Integer inverse(const Integer& x)
    {
        if (!is_unit(x)) {
            throw NonUnitPivot("leading coefficient " + x.str() + " is not a unit in Z");
        }
        return x;
    }
    static bool is_zero(const Integer& x)
    {
        return x == 0;
    }
};

template <std::uint64_t P>
struct ring_traits<ModP<P>> {
    static bool is_unit(const ModP<P>& x)
    {
        return x.value() != 0;
    }
    static ModP<P> inverse(const ModP<P>& x)
    {
        return x.inverse();
    }
    static bool is_zero(const ModP<P>& x)
    {
        return x.value() == 0;
    }
};

template <typename R>
concept CoefficientRing = requires(const R& a, const R& b) {
    { a + b } -> std::convertible_to<R>;
    { a * b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { ring_traits<R>::is_unit(a) } -> std::convertible_to<bool>;
    { ring_traits<R>::is_zero(a) } -> std::convertible_to<bool>;
    { ring_traits<R>::inverse(a) } -> std::convertible_to<R>;
};

} // namespace novikov

#endif
