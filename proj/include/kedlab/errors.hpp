#ifndef KEDLAB_ERRORS_HPP
#define KEDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kedlab {

/// Invalid input (bad parameters, malformed tokens, unsupported requests).
/// CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A required derivative (or the density itself) vanishes at the
/// evaluation point, so the log-domain value is -inf.
class NodeError : public DomainError {
public:
    NodeError(const std::string& msg, double where)
        : DomainError(msg), r(where) {}
    double r;
};

/// Density evaluates to zero where a positive value is required.
class PoleError : public DomainError {
public:
    PoleError(const std::string& msg, double where)
        : DomainError(msg), r(where) {}
    double r;
};

/// ln rho(r) fell below the configured floor; the caller asked for a
/// guarded evaluation and should move the window instead.
class UnderflowGuard : public DomainError {
public:
    UnderflowGuard(const std::string& msg, double log_rho_value)
        : DomainError(msg), log_rho(log_rho_value) {}
    double log_rho;
};

/// Probe window cannot supply enough clean samples (nodes or underflow).
class WindowError : public DomainError {
public:
    explicit WindowError(const std::string& msg) : DomainError(msg) {}
};

/// Term dimension and profile dimension disagree.
class DimensionMismatch : public DomainError {
public:
    explicit DimensionMismatch(const std::string& msg) : DomainError(msg) {}
};

/// Enumeration request exceeds the combinatorial guard.
class LimitError : public DomainError {
public:
    explicit LimitError(const std::string& msg) : DomainError(msg) {}
};

/// Least-squares design matrix is numerically rank deficient.  Carries
/// the null-space dimension instead of returning arbitrary coefficients.
class RankDeficiency : public DomainError {
public:
    RankDeficiency(const std::string& msg, int dim)
        : DomainError(msg), nullspace_dim(dim) {}
    int nullspace_dim;
};

} // namespace kedlab

#endif
