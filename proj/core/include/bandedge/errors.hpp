#pragma once

#include <stdexcept>
#include <string>

namespace bandedge {

// Base class for every error thrown by the library. Each subclass carries a
// stable machine-readable code (snake_case) so front ends can map errors to
// exit statuses and structured diagnostics without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Parameter or configuration values violate their documented domain.
class InvalidParams : public Error {
public:
    explicit InvalidParams(const std::string& message)
        : Error("invalid_params", message) {}
};

// Polynomial has a zero leading coefficient.
class LeadingZero : public Error {
public:
    explicit LeadingZero(const std::string& message)
        : Error("leading_zero", message) {}
};

// Iterative method exhausted its budget without meeting its residual contract.
class NonConvergence : public Error {
public:
    explicit NonConvergence(const std::string& message)
        : Error("non_convergence", message) {}
};

// Two nonzero roots coincide within tolerance; the partial-fraction expansion
// divides by their difference and is ill-conditioned there.
class DegenerateRoots : public Error {
public:
    explicit DegenerateRoots(const std::string& message)
        : Error("degenerate_roots", message) {}
};

// Pointwise kernel evaluation requested at tau <= 0 where K ~ 1/sqrt(tau).
class SingularAtZero : public Error {
public:
    explicit SingularAtZero(const std::string& message)
        : Error("singular_at_zero", message) {}
};

// Pointwise kernel evaluation requested for a distributional (delta) kernel.
class NotPointwise : public Error {
public:
    explicit NotPointwise(const std::string& message)
        : Error("not_pointwise", message) {}
};

// Laplace-domain evaluation requested on (or too near) the branch cut.
class BranchCut : public Error {
public:
    explicit BranchCut(const std::string& message)
        : Error("branch_cut", message) {}
};

// The long-time limit does not exist (vanishing denominator).
class UndefinedLimit : public Error {
public:
    explicit UndefinedLimit(const std::string& message)
        : Error("undefined_limit", message) {}
};

// Time step exceeds the bound under which the solver's accuracy contract holds.
class StepTooLarge : public Error {
public:
    explicit StepTooLarge(const std::string& message)
        : Error("step_too_large", message) {}
};

// A state sample stopped being finite during time stepping.
class NonFinite : public Error {
public:
    explicit NonFinite(const std::string& message)
        : Error("non_finite", message) {}
};

// A closed-form sample stopped being finite; signals a branch-selection bug.
class OverflowDetected : public Error {
public:
    explicit OverflowDetected(const std::string& message)
        : Error("overflow_detected", message) {}
};

}  // namespace bandedge
