#ifndef NOVIKOV_LAURENT_HPP
#define NOVIKOV_LAURENT_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <novikov/error.hpp>
#include <novikov/numeric.hpp>

namespace novikov
{

// Multivariate Laurent polynomial with rational coefficients, an element of the
// group ring Q[Z^m]. Terms are kept sorted by exponent vector
// (lexicographically), with no zero coefficients.
class LaurentPoly
{
public:
    using term_type = std::pair<Monomial, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t nvars) : m_nvars(nvars)
    {
    }
    LaurentPoly(std::size_t nvars, std::vector<term_type> terms);

    static LaurentPoly constant(std::size_t nvars, const Rational& c);
    static LaurentPoly monomial(std::size_t nvars, const Rational& c, Monomial g);
    // t_i - 1
    static LaurentPoly generator_minus_one(std::size_t nvars, std::size_t i);

    std::size_t nvars() const noexcept
    {
        return m_nvars;
    }
    const std::vector<term_type>& terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }

    // Lexicographically largest term; requires a nonzero polynomial.
    const term_type& leading() const
    {
        return m_terms.back();
    }

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const Rational& c, const LaurentPoly& a);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    // Positive rational c with (1/c) * p having coprime integer coefficients.
    Rational content() const;

    // Applies a group homomorphism to every exponent; the result has
    // `target_vars` variables.
    LaurentPoly map_monomials(std::size_t target_vars, const std::function<Monomial(const Monomial&)>& f) const;

    Rational evaluate(const std::vector<Rational>& point) const;

    std::string str() const;

private:
    std::size_t m_nvars = 0;
    std::vector<term_type> m_terms;
};

// Quotient q with a = q * b when it exists in Q[Z^m]; nullopt otherwise.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

// Dense row-major matrix.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : m_rows(rows), m_cols(cols), m_data(rows * cols, fill)
    {
    }

    std::size_t rows() const noexcept
    {
        return m_rows;
    }
    std::size_t cols() const noexcept
    {
        return m_cols;
    }
    T& operator()(std::size_t r, std::size_t c)
    {
        return m_data[r * m_cols + c];
    }
    const T& operator()(std::size_t r, std::size_t c) const
    {
        return m_data[r * m_cols + c];
    }
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t m_rows = 0;
    std::size_t m_cols = 0;
    std::vector<T> m_data;
};

using PolyMatrix = Matrix<LaurentPoly>;

PolyMatrix zero_poly_matrix(std::size_t rows, std::size_t cols, std::size_t nvars);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars);

} // namespace novikov

#endif
