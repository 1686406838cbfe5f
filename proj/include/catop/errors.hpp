#pragma once

#include <stdexcept>
#include <string>

namespace catop {

/// Base class for every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix/sequence shapes.
struct DimensionError : Error { using Error::Error; };

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error { using Error::Error; };

/// A count or size parameter outside the accepted range.
struct SizeError : Error { using Error::Error; };

/// Exactly singular pivot met during elimination.
struct SingularMatrixError : Error { using Error::Error; };

/// An iteration or series failed to reach its tolerance.
struct ConvergenceError : Error { using Error::Error; };

/// The linear problem has no stable solution (e.g. Sylvester spectra overlap).
struct IllPosedError : Error { using Error::Error; };

/// The requested solve strategy is not permitted for this problem size.
struct StrategyError : Error { using Error::Error; };

/// Adaptive quadrature could not reach the requested tolerance.
struct IntegrationError : Error { using Error::Error; };

/// A resolvent was requested at (or numerically too close to) a spectrum point.
struct SpectrumError : Error { using Error::Error; };

/// The element does not belong to the weighted algebra.
struct AlgebraMembershipError : DomainError { using DomainError::DomainError; };

/// Parameter outside the region where the formula is guaranteed.
struct OutsideRegionError : DomainError { using DomainError::DomainError; };

/// Malformed input text (matrix files and similar).
struct ParseError : Error { using Error::Error; };

}  // namespace catop
