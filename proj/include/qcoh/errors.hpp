#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input matrix violates the Hermitian symmetry tolerance.
struct NotHermitianError : Error {
    using Error::Error;
};

/// Jacobi eigensolver exceeded its sweep cap.
struct NoConvergenceError : Error {
    using Error::Error;
};

/// Coherent-weight solver exceeded its cycle budget.
struct NotConvergedError : Error {
    using Error::Error;
};

/// A matrix failed density-matrix validation (message names the invariant).
struct InvalidDensityMatrixError : Error {
    using Error::Error;
};

/// Kraus operator is not strictly incoherent.
struct InvalidKrausError : Error {
    using Error::Error;
};

/// Kraus collection violates sub-normalization.
struct InvalidChannelError : Error {
    using Error::Error;
};

/// Operation requires a coherent state but the input is incoherent.
struct IncoherentInputError : Error {
    using Error::Error;
};

/// The residual test and the eigenvalue test of the enhancement condition
/// disagree beyond what numerics can explain.
struct VerdictMismatchError : Error {
    using Error::Error;
};

/// A basis population is zero while its row still carries coherence.
struct ZeroPopulationError : Error {
    using Error::Error;
};

/// Post-selection probability of a stochastic channel is numerically zero.
struct ZeroProbabilityError : Error {
    using Error::Error;
};

/// Bloch vector lies outside the unit ball.
struct UnphysicalError : Error {
    using Error::Error;
};

/// Qubit-only operation called on a state of the wrong dimension.
struct WrongDimensionError : Error {
    using Error::Error;
};

/// Full-rank decomposition requested for a rank-deficient state.
struct NotFullRankError : Error {
    using Error::Error;
};

/// State file could not be parsed into a matrix of the declared shape.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qcoh
