#include "hypercert/mc_oracle.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <thread>

#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"

namespace hypercert::mc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSheetTolerance = 1e-10;

double sinhMinusArg(double x)
{
    if (std::abs(x) < 0.1) {
        const double x2 = x * x;
        return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)));
    }
    return std::sinh(x) - x;
}

std::uint64_t splitmix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Radius with density proportional to sinh^2 t on [0, radius].
double radialQuantile(double u, double radius)
{
    const double target = u * sinhMinusArg(2.0 * radius);
    if (target <= 0.0) {
        return 0.0;
    }
    const auto f = [target](double t) {
        const double s = std::sinh(t);
        return std::make_pair(sinhMinusArg(2.0 * t) - target, 4.0 * s * s);
    };
    const double guess = std::min(radius, std::cbrt(3.0 * target / 4.0));
    std::uintmax_t iters = 100;
    return boost::math::tools::newton_raphson_iterate(f, guess, 0.0, radius, 50, iters);
}

}  // namespace

double minkowski(const Vec4& a, const Vec4& b)
{
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

namespace {

// sinh of the signed distance from p to the plane of h, positive on the
// retained side. The unit tangent at the plane's foot point is its normal.
double sinhPastPlane(const HalfSpace& h, const HPoint& p)
{
    const double ch = std::cosh(h.offset);
    const double sh = std::sinh(h.offset);
    Vec4 n{};
    for (std::size_t i = 0; i < 4; ++i) {
        n[i] = sh * h.origin[i] + ch * h.dir[i];
    }
    return -minkowski(p.coords(), n);
}

}  // namespace

HPoint HPoint::fromCoords(const Vec4& x)
{
    for (double v : x) {
        detail::requireFinite(v, "hyperboloid coordinate");
    }
    const double norm = minkowski(x, x);
    if (!(x[0] >= 1.0) || std::abs(norm - 1.0) > kSheetTolerance * std::max(1.0, x[0] * x[0])) {
        throw DomainError("point is not on the upper sheet of the hyperboloid");
    }
    return HPoint(x);
}

HPoint HPoint::fromSpatial(double x1, double x2, double x3)
{
    return HPoint({std::sqrt(1.0 + x1 * x1 + x2 * x2 + x3 * x3), x1, x2, x3});
}

HPoint basepoint()
{
    return HPoint::fromSpatial(0.0, 0.0, 0.0);
}

HPoint axisPoint(double t)
{
    return HPoint::fromSpatial(std::sinh(t), 0.0, 0.0);
}

HPoint pointInDirection(double t, const std::array<double, 3>& dir)
{
    const double n = std::hypot(dir[0], dir[1], dir[2]);
    if (!(n > 0.0)) {
        throw DomainError("direction must be non-zero");
    }
    const double s = std::sinh(t) / n;
    return HPoint::fromSpatial(s * dir[0], s * dir[1], s * dir[2]);
}

HPoint transport(const HPoint& center, const HPoint& p)
{
    const Vec4& c = center.coords();
    const Vec4& x = p.coords();
    const double dot = c[1] * x[1] + c[2] * x[2] + c[3] * x[3];
    const double k = x[0] + dot / (1.0 + c[0]);
    return HPoint::fromSpatial(x[1] + c[1] * k, x[2] + c[2] * k, x[3] + c[3] * k);
}

double hdist(const HPoint& p, const HPoint& q)
{
    // -<p-q, p-q> = 2 cosh d - 2 = 4 sinh^2(d/2)
    Vec4 v{};
    for (std::size_t i = 0; i < 4; ++i) {
        v[i] = p[i] - q[i];
    }
    const double s = std::max(0.0, -minkowski(v, v));
    return 2.0 * std::asinh(std::sqrt(s) / 2.0);
}

Vec4 unitTangent(const HPoint& from, const HPoint& to)
{
    const double c = minkowski(from.coords(), to.coords());
    Vec4 t{};
    for (std::size_t i = 0; i < 4; ++i) {
        t[i] = to[i] - c * from[i];
    }
    const double n2 = -minkowski(t, t);
    if (!(n2 > 0.0)) {
        throw DomainError("tangent direction between coincident points");
    }
    const double n = std::sqrt(n2);
    for (double& v : t) {
        v /= n;
    }
    return t;
}

HPoint along(const HPoint& from, const Vec4& dir, double s)
{
    const double ch = std::cosh(s);
    const double sh = std::sinh(s);
    return HPoint::fromSpatial(ch * from[1] + sh * dir[1], ch * from[2] + sh * dir[2],
                               ch * from[3] + sh * dir[3]);
}

bool inBall(const Ball& b, const HPoint& p)
{
    return hdist(b.center, p) <= b.radius;
}

bool inHalfspace(const HalfSpace& h, const HPoint& p)
{
    return sinhPastPlane(h, p) >= 0.0;
}

bool inCap(const Cap& c, const HPoint& p)
{
    return inBall(c.ball, p) && inHalfspace(c.half, p);
}

bool inLens(const Lens& l, const HPoint& p)
{
    return inBall(l.a, p) && inBall(l.b, p);
}

bool inCone(const Cone& c, const HPoint& p)
{
    const double a = hdist(c.apex, p);
    if (a == 0.0) {
        return true;
    }
    if (a > c.generator) {
        return false;
    }
    const double b = hdist(c.apex, c.axisTarget);
    const double e = hdist(p, c.axisTarget);
    const double cosAngle = std::clamp(
        (std::cosh(a) * std::cosh(b) - std::cosh(e)) / (std::sinh(a) * std::sinh(b)), -1.0, 1.0);
    if (std::acos(cosAngle) > c.angle) {
        return false;
    }
    // Base plane: the generator's foot on the axis, from the right triangle
    // apex / foot / rim point (cos angle = tanh h / tanh generator).
    const double h = std::atanh(std::tanh(c.generator) * std::cos(c.angle));
    return sinhPastPlane({c.apex, unitTangent(c.apex, c.axisTarget), h}, p) <= 0.0;
}

bool inIcecream(const IceCream& z, const HPoint& p)
{
    return inBall(z.scoop, p) || inCone(z.cone, p);
}

Cap makeCap(const HPoint& center, const HPoint& toward, double r, double w)
{
    detail::requirePositive(r, "cap radius");
    detail::requireFinite(w, "cap offset");
    return {{center, r}, {center, unitTangent(center, toward), w}};
}

Cone makeCone(const HPoint& apex, const HPoint& axisTarget, double generator, double angle)
{
    detail::requirePositive(generator, "cone generator");
    detail::requireFinite(angle, "cone angle");
    if (angle < 0.0 || angle > kPi / 2.0) {
        throw DomainError("cone angle must lie in [0, pi/2]");
    }
    if (hdist(apex, axisTarget) == 0.0) {
        throw DomainError("cone axis is degenerate");
    }
    return {apex, axisTarget, generator, angle};
}

IceCream makeIcecream(const HPoint& apex, const HPoint& scoop, double r)
{
    detail::requirePositive(r, "scoop radius");
    const double D = hdist(apex, scoop);
    if (D == 0.0) {
        throw DomainError("ice-cream axis is degenerate");
    }
    if (!(r < D)) {
        throw DomainError("apex must lie outside the scoop");
    }
    // Tangent right triangle apex / tangency point / scoop centre.
    const double generator = std::acosh(std::cosh(D) / std::cosh(r));
    const double angle = std::asin(std::sinh(r) / std::sinh(D));
    return {{scoop, r}, makeCone(apex, scoop, generator, angle)};
}

double uniformDraw(std::uint64_t seed, std::uint64_t index, unsigned k)
{
    const std::uint64_t counter = index * 4 + k + 1;
    const std::uint64_t bits = splitmix64(seed + 0x9E3779B97F4A7C15ULL * counter);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

HPoint ballSample(const HPoint& center, double radius, std::uint64_t seed, std::uint64_t index)
{
    const double t = radialQuantile(uniformDraw(seed, index, 0), radius);
    const double z = 2.0 * uniformDraw(seed, index, 1) - 1.0;
    const double az = 2.0 * kPi * uniformDraw(seed, index, 2);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return transport(center, pointInDirection(t, {rho * std::cos(az), rho * std::sin(az), z}));
}

std::vector<HPoint> sampleBall(const HPoint& center, double radius, std::size_t count,
                               std::uint64_t seed)
{
    detail::requirePositive(radius, "sampling radius");
    std::vector<HPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(ballSample(center, radius, seed, i));
    }
    return out;
}

McEstimate estimateVolume(const Region& region, const Ball& envelope, std::uint64_t count,
                          std::uint64_t seed, unsigned threads)
{
    detail::requirePositive(envelope.radius, "envelope radius");
    if (count == 0) {
        throw DomainError("sample count must be positive");
    }
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));

    std::vector<std::uint64_t> hits(threads, 0);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                const std::uint64_t lo = count * t / threads;
                const std::uint64_t hi = count * (t + 1) / threads;
                std::uint64_t h = 0;
                for (std::uint64_t i = lo; i < hi; ++i) {
                    h += region(ballSample(envelope.center, envelope.radius, seed, i)) ? 1 : 0;
                }
                hits[t] = h;
            });
        }
    }

    McEstimate est;
    est.samples = count;
    est.seed = seed;
    for (auto h : hits) {
        est.hits += h;
    }
    const double vol = hypgeo::ballVolume(envelope.radius);
    const double frac = static_cast<double>(est.hits) / static_cast<double>(count);
    est.mean = vol * frac;
    est.standardError = vol * std::sqrt(frac * (1.0 - frac) / static_cast<double>(count));
    est.zeroHits = est.hits == 0;
    return est;
}

std::vector<std::string> shapeNames()
{
    return {"ball", "cap", "lens", "cone", "icecream", "phi"};
}

CrossCheck crossCheck(const std::string& shape, std::vector<double> params, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads)
{
    static const std::map<std::string, std::vector<double>> defaults = {
        {"ball", {1.0}},           {"cap", {1.0, 0.5}},        {"lens", {1.2, 0.7, 1.0}},
        {"cone", {1.0, 0.5}},      {"icecream", {0.55, 1.05}}, {"phi", {1.3, 0.55, 1.05}},
    };
    const auto it = defaults.find(shape);
    if (it == defaults.end()) {
        throw DomainError("unknown shape '" + shape + "'");
    }
    if (params.empty()) {
        params = it->second;
    }
    if (params.size() != it->second.size()) {
        throw DomainError("shape '" + shape + "' takes " + std::to_string(it->second.size())
                          + " parameters");
    }

    const HPoint o = basepoint();
    CrossCheck out;
    out.shape = shape;
    out.params = params;
    if (shape == "ball") {
        const double r = params[0];
        const Ball b{axisPoint(0.3), r};
        out.closedForm = hypgeo::ballVolume(r);
        out.estimate = estimateVolume([&](const HPoint& p) { return inBall(b, p); }, {o, r + 0.5},
                                      samples, seed, threads);
    } else if (shape == "cap") {
        const Cap c = makeCap(o, axisPoint(1.0), params[0], params[1]);
        out.closedForm = hypgeo::capVolume({params[0], params[1]});
        out.estimate = estimateVolume([&](const HPoint& p) { return inCap(c, p); }, c.ball, samples,
                                      seed, threads);
    } else if (shape == "lens") {
        const double r1 = params[0], r2 = params[1], D = params[2];
        if (!(r2 < std::min(D, r1) && D < r1 + r2 && r1 < r2 + D)) {
            throw DomainError("lens needs r2 < min(D, r1), D < r1 + r2, r1 < r2 + D");
        }
        const Lens l{{o, r1}, {axisPoint(D), r2}};
        out.closedForm = hypgeo::lensVolume({r1, r2, D});
        out.estimate = estimateVolume([&](const HPoint& p) { return inLens(l, p); }, l.b, samples,
                                      seed, threads);
    } else if (shape == "cone") {
        const Cone c = makeCone(o, axisPoint(1.0), params[0], params[1]);
        out.closedForm = hypgeo::coneVolume(params[0], params[1]);
        out.estimate = estimateVolume([&](const HPoint& p) { return inCone(c, p); },
                                      {o, params[0]}, samples, seed, threads);
    } else if (shape == "icecream") {
        const double r = params[0], D = params[1];
        const IceCream z = makeIcecream(o, axisPoint(D), r);
        const double a = hypgeo::omega(r, D);
        const double t = hypgeo::theta(r, D);
        out.closedForm = hypgeo::ballVolume(r) + hypgeo::coneVolume(a, t)
                         - hypgeo::capVolume({r, D - hypgeo::psi(a, t)});
        out.estimate = estimateVolume([&](const HPoint& p) { return inIcecream(z, p); },
                                      {o, D + r}, samples, seed, threads);
    } else {
        const double rho = params[0], r = params[1], D = params[2];
        if (!(r < D && D < rho && rho < D + r)) {
            throw DomainError("phi needs r < D < rho < D + r");
        }
        const IceCream z = makeIcecream(o, axisPoint(D), r);
        const Ball clip{o, rho};
        out.closedForm = hypgeo::phi({rho, r, D});
        out.estimate = estimateVolume(
            [&](const HPoint& p) { return inBall(clip, p) && inIcecream(z, p); }, clip, samples, seed,
            threads);
    }

    const double diff = out.estimate.mean - out.closedForm;
    const double se = out.estimate.standardError;
    out.zScore = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff));
    out.withinThreeSigma = std::abs(diff) <= 3.0 * se;
    return out;
}

}  // namespace hypercert::mc
