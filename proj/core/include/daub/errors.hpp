#pragma once

#include <stdexcept>
#include <string>

namespace daub {

// Every library error derives from Error and carries a short machine-greppable
// code, e.g. "unsupported-order".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what) : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// p outside [2, 19].
class UnsupportedOrder : public Error {
public:
    explicit UnsupportedOrder(int p);
};

// A derivative grid of order n cannot be produced for this p.
class DerivativeUnavailable : public Error {
public:
    DerivativeUnavailable(int p, int n, const std::string& reason);
};

// An evaluator was asked for a derivative its interpolator does not provide.
class UnsupportedDerivative : public Error {
public:
    UnsupportedDerivative(int p, int order, int max_order);
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t requested, std::size_t budget);
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain-error", what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error("insufficient-data", what) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error("format-error", what) {}
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double best_estimate, double error_estimate)
        : Error("non-convergence", what), best_(best_estimate), error_(error_estimate) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_;
    double error_;
};

}  // namespace daub
