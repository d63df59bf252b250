#ifndef BLTORSION_ERRORS_HPP
#define BLTORSION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bltorsion
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: wrong shapes, inconsistent dimensions, bad schema values.
class ShapeError : public Error
{
public:
    using Error::Error;
};

/// A numerical procedure could not produce a trustworthy value.
class NumericalError : public Error
{
public:
    using Error::Error;
};

class SingularityError : public NumericalError
{
public:
    SingularityError(const std::string& what, long pivot)
        : NumericalError(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot)
    {
    }
    long pivot() const { return pivot_; }

private:
    long pivot_;
};

class ConvergenceError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// An eigenvalue sits too close to a spectral cut.
class AmbiguousCutError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class NondegeneracyError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// A determinant was requested with a branch convention that cannot be honoured.
class BranchError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// Adaptive step size fell below the floor.
class StiffnessError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// The discretization does not separate the spectrum at the requested threshold.
class ResolutionError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// Two operators expected to be similar are not.
class StencilMismatchError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// Requested computation lies outside what the library supports.
class UnsupportedError : public Error
{
public:
    using Error::Error;
};

} // namespace bltorsion

#endif // BLTORSION_ERRORS_HPP
