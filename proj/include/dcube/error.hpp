#pragma once

#include <stdexcept>
#include <string>

namespace dcube {

/// Raised when an input violates an operation's preconditions.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative numerical procedure fails to reach its target.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    /// Best error estimate reached before giving up.
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace dcube
