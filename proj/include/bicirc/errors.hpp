#ifndef BICIRC_ERRORS_HPP
#define BICIRC_ERRORS_HPP

// Error taxonomy for the bicirc library.
//
// Every failure mode is a distinct exception type so callers (CLI, tests)
// can map outcomes to exit codes without string matching.  All types derive
// from bicirc::Error, which derives from std::runtime_error.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bicirc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A floating-point result is NaN or infinite where a finite value is required.
struct NonFinite : Error {
    using Error::Error;
};

/// The circulant ratio r is zero; every construction here needs r != 0.
struct ZeroRatio : Error {
    ZeroRatio() : Error("invalid ratio: r must be nonzero") {}
    explicit ZeroRatio(const std::string& what) : Error(what) {}
};

/// Matrix dimensions do not match the requested operation.
struct ShapeError : Error {
    using Error::Error;
};

/// An exact identity that must hold by construction failed.  Always a bug.
struct IdentityFailed : Error {
    using Error::Error;
};

/// Power iteration did not converge within the iteration budget.
struct NoConvergence : Error {
    NoConvergence(std::size_t iterations, double last_estimate, double last_delta)
        : Error("power iteration: no convergence after " + std::to_string(iterations) +
                " iterations (estimate " + std::to_string(last_estimate) +
                ", last relative change " + std::to_string(last_delta) + ")"),
          iterations(iterations),
          last_estimate(last_estimate),
          last_delta(last_delta) {}

    std::size_t iterations;
    double last_estimate;
    double last_delta;
};

/// A closed-form denominator is numerically zero; the caller should fall
/// back to the direct numerical route.  Carries the offending indices.
struct DegenerateFormula : Error {
    DegenerateFormula(const std::string& what, std::vector<std::size_t> indices)
        : Error(what), indices(std::move(indices)) {}

    std::vector<std::size_t> indices;
};

/// A proved inequality was violated beyond tolerance.  Always a bug.
struct InequalityViolated : Error {
    using Error::Error;
};

}  // namespace bicirc

#endif  // BICIRC_ERRORS_HPP
