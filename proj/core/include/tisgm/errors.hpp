#ifndef TISGM_ERRORS_HPP
#define TISGM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tisgm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument (non-positive theta, k < 1, unordered pairs, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested exact computation exceeds the configuration-count cap.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, double required, double cap)
        : Error(what), required(required), cap(cap) {}
    double required;
    double cap;
};

/// Root bracketing failed: no sign change on the search interval.
class BracketingError : public Error {
public:
    using Error::Error;
};

/// Root bracketing found multiple sign changes where one was required.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what,
                   std::vector<std::pair<double, double>> brackets)
        : Error(what), brackets(std::move(brackets)) {}
    std::vector<std::pair<double, double>> brackets;
};

/// Iteration did not converge within the step budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> partial_orbit)
        : Error(what), partial_orbit(std::move(partial_orbit)) {}
    std::vector<double> partial_orbit;
};

/// A precondition on the caller's data was violated (e.g. "x must be a
/// fixed point").
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A computation produced a non-finite intermediate value.
class NumericalRangeError : public Error {
public:
    using Error::Error;
};

} // namespace tisgm

#endif
