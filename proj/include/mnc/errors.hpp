#pragma once

#include <stdexcept>
#include <string>

namespace mnc {

// Input outside an operation's domain (empty set, unnormalized direction,
// time outside the interval, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Input the routine deliberately does not handle (e.g. tails in the
// finite-dimensional oracle, non-finite functional representations).
class unsupported_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A specification object that violates its own invariants.
class construction_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical routine could not reach its target accuracy.
class accuracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A standing hypothesis of the solver (ball bound, comparison rate) fails.
class hypothesis_violation : public std::runtime_error {
public:
    hypothesis_violation(std::string condition, const std::string& what)
        : std::runtime_error(what), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

} // namespace mnc
