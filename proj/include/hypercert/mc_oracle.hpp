#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Monte-Carlo volume estimation in the hyperboloid model
// {x : x0^2 - x1^2 - x2^2 - x3^2 = 1, x0 > 0}.

namespace hypercert::mc {

using Vec4 = std::array<double, 4>;

/// x0 y0 - x1 y1 - x2 y2 - x3 y3
double minkowski(const Vec4& a, const Vec4& b);

/// A point on the upper sheet.
class HPoint {
public:
    /// Throws DomainError when the coordinates are off-sheet by more than 1e-10.
    static HPoint fromCoords(const Vec4& x);
    /// Renormalizes x0 onto the sheet from the spatial part.
    static HPoint fromSpatial(double x1, double x2, double x3);

    const Vec4& coords() const { return x_; }
    double operator[](std::size_t i) const { return x_[i]; }

private:
    explicit HPoint(const Vec4& x) : x_(x) {}
    Vec4 x_;
};

HPoint basepoint();

/// Point at distance t from the basepoint along the x1 axis.
HPoint axisPoint(double t);

/// Point at distance t from the basepoint in the (unit Euclidean) direction dir.
HPoint pointInDirection(double t, const std::array<double, 3>& dir);

/// Image of p under the boost taking the basepoint to `center`.
HPoint transport(const HPoint& center, const HPoint& p);

double hdist(const HPoint& p, const HPoint& q);

/// Unit tangent at `from` pointing at `to` (spacelike, norm -1).
Vec4 unitTangent(const HPoint& from, const HPoint& to);

/// Point at signed distance s from `from` along tangent `dir`.
HPoint along(const HPoint& from, const Vec4& dir, double s);

struct Ball {
    HPoint center;
    double radius;
};

/// Points whose signed distance along the geodesic from `origin` in
/// direction `dir`, measured past the perpendicular plane at `offset`, is
/// non-negative.
struct HalfSpace {
    HPoint origin;
    Vec4 dir;
    double offset;
};

struct Cap {
    Ball ball;
    HalfSpace half;
};

struct Lens {
    Ball a;
    Ball b;
};

/// Right circular cone given by its apex, a point on its axis, the
/// generator length and the half-angle.
struct Cone {
    HPoint apex;
    HPoint axisTarget;
    double generator;
    double angle;
};

/// Convex hull of an apex and a ball not containing it: the ball together
/// with the cone of tangent geodesics from the apex.
struct IceCream {
    Ball scoop;
    Cone cone;
};

bool inBall(const Ball& b, const HPoint& p);
bool inHalfspace(const HalfSpace& h, const HPoint& p);
bool inCap(const Cap& c, const HPoint& p);
bool inLens(const Lens& l, const HPoint& p);
bool inCone(const Cone& c, const HPoint& p);
bool inIcecream(const IceCream& z, const HPoint& p);

/// Cap of ball(center, r) cut at signed offset w along the direction to `toward`.
Cap makeCap(const HPoint& center, const HPoint& toward, double r, double w);
Cone makeCone(const HPoint& apex, const HPoint& axisTarget, double generator, double angle);
/// Throws DomainError when apex == scoop or the apex lies inside the scoop.
IceCream makeIcecream(const HPoint& apex, const HPoint& scoop, double r);

/// Counter-based uniform doubles in [0, 1): the k-th draw of sample `index`.
double uniformDraw(std::uint64_t seed, std::uint64_t index, unsigned k);

/// The `index`-th uniform sample of ball(center, radius) for `seed`.
HPoint ballSample(const HPoint& center, double radius, std::uint64_t seed, std::uint64_t index);

std::vector<HPoint> sampleBall(const HPoint& center, double radius, std::size_t count,
                               std::uint64_t seed);

struct McEstimate {
    double mean = 0.0;
    double standardError = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
    bool zeroHits = false;
};

using Region = std::function<bool(const HPoint&)>;

/// Hit-or-miss estimate of vol(region); the region must lie in the envelope.
/// Bit-identical for a given seed whatever the thread count.
McEstimate estimateVolume(const Region& region, const Ball& envelope, std::uint64_t count,
                          std::uint64_t seed, unsigned threads = 0);

struct CrossCheck {
    std::string shape;
    std::vector<double> params;
    double closedForm = 0.0;
    McEstimate estimate;
    double zScore = 0.0;
    bool withinThreeSigma = false;
};

/// Shapes: ball(r), cap(r, w), lens(r1, r2, D), cone(a, beta),
/// icecream(r, D), phi(rho, r, D). Empty params select defaults.
CrossCheck crossCheck(const std::string& shape, std::vector<double> params, std::uint64_t samples,
                      std::uint64_t seed, unsigned threads = 0);

std::vector<std::string> shapeNames();

}  // namespace hypercert::mc
