#pragma once

#include <stdexcept>
#include <string>

namespace fracstar {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside an operation's domain (delta range, omega range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation requested too close to a pole of Gamma (or of the contour integrand).
class PoleError : public Error {
public:
    using Error::Error;
};

// Result magnitude exceeds double range; use the log-scale entry points instead.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Argument lies on (or too close to) the branch cut [0, inf) of the principal power.
class BranchError : public Error {
public:
    using Error::Error;
};

// No admissible contour truncation height meets the tolerance.
class TailError : public Error {
public:
    using Error::Error;
};

// A-priori truncation index exceeds the term budget.
class SlowConvergence : public Error {
public:
    using Error::Error;
};

// Evaluation point lies outside the star domain of the reference solution.
class StarViolation : public Error {
public:
    using Error::Error;
};

// Scale-norm inequality failed on a concrete element.
class BoundViolation : public Error {
public:
    using Error::Error;
};

// Taylor representation ran out of coefficients.
class TruncationError : public Error {
public:
    using Error::Error;
};

// Not enough data for an estimate.
class InsufficientData : public Error {
public:
    using Error::Error;
};

// Malformed input file or spec string.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace fracstar
