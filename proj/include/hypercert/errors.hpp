#pragma once

#include <stdexcept>
#include <string>

namespace hypercert {

/// Thrown when an argument lies outside the domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Numerical integration did not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double errorEstimate)
        : std::runtime_error(what), errorEstimate_(errorEstimate) {}

    double errorEstimate() const noexcept { return errorEstimate_; }

private:
    double errorEstimate_;
};

namespace detail {

void requireFinite(double v, const char* what);
void requirePositive(double v, const char* what);

}  // namespace detail
}  // namespace hypercert
