#include "hypercert/errors.hpp"

#include <cmath>

namespace hypercert::detail {

void requireFinite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be finite");
    }
}

void requirePositive(double v, const char* what)
{
    requireFinite(v, what);
    if (!(v > 0.0)) {
        throw DomainError(std::string(what) + " must be positive");
    }
}

}  // namespace hypercert::detail
