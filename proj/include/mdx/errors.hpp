#pragma once

#include <stdexcept>
#include <string>

namespace mdx {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// An iterative procedure exhausted its budget without meeting tolerance.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

/// Partial sums of an improper integral grow without bound under domain
/// extension.
class DivergenceDetected : public std::runtime_error {
public:
    explicit DivergenceDetected(const std::string& msg) : std::runtime_error(msg) {}
};

/// Root bracket endpoints do not straddle a sign change.
class NoBracket : public std::invalid_argument {
public:
    explicit NoBracket(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Constraint targets admit no solution.
class Infeasible : public std::runtime_error {
public:
    explicit Infeasible(const std::string& msg) : std::runtime_error(msg) {}
};

/// Too few data points for the requested fit.
class InsufficientData : public std::invalid_argument {
public:
    explicit InsufficientData(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Unrecognized ablation candidate identifier.
class UnknownCandidate : public std::invalid_argument {
public:
    explicit UnknownCandidate(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An exponent exceeded the configured safe bound; the caller should switch
/// to a scaled (log-domain) evaluation.
class OverflowGuard : public std::runtime_error {
public:
    explicit OverflowGuard(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mdx
