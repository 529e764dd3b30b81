#include "hypercert/density.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"

namespace hypercert::density {

using detail::requireFinite;
using detail::requirePositive;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt8 = std::sqrt(8.0);

// acosh(1 + v) for v >= 0 without forming 1 + v.
double acosh1p(double v)
{
    return std::log1p(v + std::sqrt(v * (v + 2.0)));
}

// arccos(1/3) - beta(r), evaluated as an angle difference so that it keeps
// full relative precision as r -> 0.
double upperMinusBeta(double r)
{
    const double x = 2.0 + 1.0 / std::cosh(2.0 * r);
    const double sr = std::sinh(r);
    const double threeMinusX = 2.0 * sr * sr / std::cosh(2.0 * r);
    const double rootX = std::sqrt(x * x - 1.0);
    const double sinDiff = threeMinusX * (3.0 + x) / (kSqrt8 + rootX) / (3.0 * x);
    const double cosDiff = (1.0 + kSqrt8 * rootX) / (3.0 * x);
    return std::atan2(sinDiff, cosDiff);
}

// Integrand of tau after t = arcsec(3) - s^2, times the Jacobian 2s.
double substitutedIntegrand(double s)
{
    if (s <= 0.0) {
        return 0.0;
    }
    const double q = s * s;
    const double t = std::acos(1.0 / 3.0) - q;
    const double sh = std::sin(q / 2.0);
    // u = 3 - sec t, written without cancellation near t = arcsec 3
    const double u = (kSqrt8 * std::sin(q) - 2.0 * sh * sh) / std::cos(t);
    const double v = u / (1.0 - u);
    return 2.0 * s * acosh1p(v);
}

}  // namespace

void QuadratureConfig::validate() const
{
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw DomainError("quadrature tolerance must be positive");
    }
    if (maxSubdivisions < 1) {
        throw DomainError("quadrature max subdivisions must be >= 1");
    }
}

double arcsec(double x)
{
    requireFinite(x, "arcsec argument");
    if (std::abs(x) < 1.0) {
        throw DomainError("arcsec argument must satisfy |x| >= 1");
    }
    return std::acos(1.0 / x);
}

double dihedralBeta(double r)
{
    requirePositive(r, "r");
    return arcsec(1.0 / std::cosh(2.0 * r) + 2.0);
}

QuadratureValue simplexVolume(double r, const QuadratureConfig& cfg)
{
    requirePositive(r, "r");
    cfg.validate();
    using boost::math::quadrature::gauss_kronrod;

    const double upper = std::sqrt(upperMinusBeta(r));
    const unsigned depth = cfg.method == QuadratureMethod::kFixedOrder
                               ? 0u
                               : static_cast<unsigned>(cfg.maxSubdivisions);
    double err = 0.0;
    // tau < 1.02 for every r, so a relative request of `tolerance` is at
    // least as strict as the absolute one.
    const double integral = gauss_kronrod<double, 61>::integrate(
        substitutedIntegrand, 0.0, upper, depth, cfg.tolerance, &err);
    const QuadratureValue out{3.0 * integral, 3.0 * err};
    if (!std::isfinite(out.value) || out.errorEstimate > cfg.tolerance) {
        throw QuadratureError("simplex volume quadrature did not converge (error estimate " +
                                  std::to_string(out.errorEstimate) + ")",
                              out.errorEstimate);
    }
    return out;
}

double simplexVolumeTau(double r, const QuadratureConfig& cfg)
{
    return simplexVolume(r, cfg).value;
}

double packingDensity(double r, const QuadratureConfig& cfg)
{
    const double tau = simplexVolumeTau(r, cfg);
    return (3.0 * dihedralBeta(r) - kPi) * (hypgeo::ballVolume(r) / kPi) / tau;
}

double bRatio(double r, const QuadratureConfig& cfg)
{
    return hypgeo::ballVolume(r) / packingDensity(r, cfg);
}

double circumradiusH3(double r)
{
    requirePositive(r, "r");
    // arccosh(sqrt(1 + 3 cosh 2r) / 2) = acosh(1 + delta)
    const double sr = std::sinh(r);
    const double delta = 3.0 * sr * sr / (std::sqrt(1.0 + 3.0 * std::cosh(2.0 * r)) + 2.0);
    return acosh1p(delta);
}

}  // namespace hypercert::density
