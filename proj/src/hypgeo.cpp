#include "hypercert/hypgeo.hpp"

#include <cmath>
#include <numbers>

#include "hypercert/errors.hpp"

namespace hypercert::hypgeo {

using detail::requireFinite;
using detail::requirePositive;

namespace {

constexpr double kPi = std::numbers::pi;

// sinh(x) - x without cancellation for small x.
double sinhMinusArg(double x)
{
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0 * (1.0 + x2 / 110.0))));
    }
    return std::sinh(x) - x;
}

void requireTriple(TriplePoint p)
{
    requirePositive(p.x, "x");
    requirePositive(p.y, "y");
    requirePositive(p.z, "z");
}

}  // namespace

double arccoshClamped(double arg)
{
    requireFinite(arg, "arccosh argument");
    if (arg < 1.0) {
        if (arg < 1.0 - kArccoshClamp) {
            throw DomainError("arccosh argument below 1");
        }
        return 0.0;
    }
    return std::acosh(arg);
}

double ballVolume(double r)
{
    requirePositive(r, "ball radius");
    return kPi * sinhMinusArg(2.0 * r);
}

double capVolume(CapSpec spec)
{
    requirePositive(spec.r, "cap radius");
    requireFinite(spec.w, "cap offset");
    const double r = spec.r;
    const double w = spec.w;
    if (w >= r) {
        return 0.0;
    }
    if (w <= -r) {
        return ballVolume(r);
    }
    // pi * integral_w^r (cosh^2 r sech^2 u - 1) du
    const double c = std::cosh(r);
    const double v = kPi * (c * c * (std::tanh(r) - std::tanh(w)) - (r - w));
    return v > 0.0 ? v : 0.0;
}

double eta(TriplePoint p)
{
    requireTriple(p);
    const double cx = std::cosh(p.x);
    const double cy = std::cosh(p.y);
    const double cz = std::cosh(p.z);
    const double sz = std::sinh(p.z);
    return (2.0 * cx * cy * cz - (cx * cx + cy * cy + cz * cz) + 1.0) / (sz * sz);
}

bool inV(TriplePoint p)
{
    return eta(p) >= 0.0;
}

bool inV0(TriplePoint p)
{
    return inV(p) && p.y < p.z;
}

double sigma(TriplePoint p)
{
    const double h = eta(p);
    if (h < 0.0) {
        throw DomainError("sigma: point outside V (eta < 0)");
    }
    // arccosh(cosh x / sqrt(1 + eta)) written as an asinh; uses
    // sinh^2 z (sinh^2 x - eta) = (cosh x cosh z - cosh y)^2.
    const double num = std::abs(std::cosh(p.x) * std::cosh(p.z) - std::cosh(p.y));
    return std::asinh(num / (std::sinh(p.z) * std::sqrt(1.0 + h)));
}

double lensVolume(TriplePoint p)
{
    const double s = sigma(p);
    return capVolume({p.x, s}) + capVolume({p.y, p.z - s});
}

double omega(double r, double D)
{
    requirePositive(r, "r");
    requirePositive(D, "D");
    if (r >= D) {
        throw DomainError("omega requires r < D");
    }
    return arccoshClamped(std::cosh(D) / std::cosh(r));
}

double theta(double r, double D)
{
    requirePositive(r, "r");
    requirePositive(D, "D");
    if (r >= D) {
        throw DomainError("theta requires r < D");
    }
    return std::asin(std::sinh(r) / std::sinh(D));
}

double psi(double a, double beta)
{
    requirePositive(a, "cone generator");
    requireFinite(beta, "cone angle");
    // arccosh(cosh a / sqrt(1 + sinh^2 a sin^2 beta)) as an asinh, exact at
    // beta = pi/2 where the arccosh argument is 1.
    const double sa = std::sinh(a);
    const double sb = std::sin(beta);
    return std::asinh(sa * std::abs(std::cos(beta)) / std::sqrt(1.0 + sa * sa * sb * sb));
}

double coneVolume(double a, double beta)
{
    requirePositive(a, "cone generator");
    requireFinite(beta, "cone angle");
    if (beta < 0.0 || beta > kPi / 2.0) {
        throw DomainError("cone angle must lie in [0, pi/2]");
    }
    const double v = ballVolume(a) / 2.0 * (1.0 - std::cos(beta)) - capVolume({a, psi(a, beta)});
    return v > 0.0 ? v : 0.0;
}

double phi(TriplePoint p)
{
    if (!inV0(p)) {
        throw DomainError("phi: point outside V0");
    }
    const double a = omega(p.y, p.z);
    const double b = theta(p.y, p.z);
    return lensVolume(p) + coneVolume(a, b) - capVolume({p.y, p.z - psi(a, b)});
}

}  // namespace hypercert::hypgeo
