#ifndef NOVIKOV_ERROR_HPP
#define NOVIKOV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace novikov
{

// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
class ParseError : public Error
{
public:
    using Error::Error;
};

// Shapes, ranks or lattices of the operands do not fit together.
class ShapeError : public Error
{
public:
    using Error::Error;
};

// An operation was called outside of its documented domain.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

// Two weights with different channel coordinates evaluate closer than the
// separation threshold; the working precision cannot order them.
class IrresolvableComparison : public Error
{
public:
    using Error::Error;
};

// A series computation needs information above the available cutoff.
class InsufficientCutoff : public Error
{
public:
    using Error::Error;
};

// The leading block of a series is not an invertible monomial.
class NonUnitPivot : public Error
{
public:
    using Error::Error;
};

// Symplectic path input violates the Conley-Zehnder preconditions.
class PathError : public Error
{
public:
    using Error::Error;
};

// Numerical integration failed (non-finite state, too few steps).
class IntegrationError : public Error
{
public:
    using Error::Error;
};

} // namespace novikov

#endif
