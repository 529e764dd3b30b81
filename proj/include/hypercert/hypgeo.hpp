#pragma once

// Closed-form volumes of balls, caps, lenses, cones and truncated
// "ice-cream cones" in hyperbolic 3-space.

namespace hypercert::hypgeo {

/// A point of (0,inf)^3. In applications x is rho or r1, y is r or r2,
/// z is the centre distance D.
struct TriplePoint {
    double x;
    double y;
    double z;
};

/// Ball of radius r cut by a plane at signed distance w from its centre.
/// Positive w means the centre is not in the retained half-space.
struct CapSpec {
    double r;
    double w;
};

/// Arguments of arccosh that fall below 1 by no more than this are snapped to 1.
inline constexpr double kArccoshClamp = 1e-12;

/// arccosh with roundoff clamping; throws DomainError below 1 - kArccoshClamp.
double arccoshClamped(double arg);

/// Volume of a ball of radius r: pi (sinh 2r - 2r).
double ballVolume(double r);

/// Volume of a solid cap. Zero for w >= r, the whole ball for w <= -r.
double capVolume(CapSpec spec);

/// Squared sinh of the altitude from the apex of a triangle with sides
/// x, y (meeting at the apex) onto the base of length z. Negative means
/// no such triangle exists.
double eta(TriplePoint p);

bool inV(TriplePoint p);
bool inV0(TriplePoint p);

/// Distance from the x-endpoint of the base to the foot of the altitude.
double sigma(TriplePoint p);

/// Volume of ball(P1, x) intersect ball(P2, y) with dist(P1, P2) = z.
double lensVolume(TriplePoint p);

/// Generator length of the cone tangent to a ball of radius r seen from
/// distance D.
double omega(double r, double D);

/// Half-angle of that tangent cone.
double theta(double r, double D);

/// Axis length of a right circular cone with generator a and angle beta.
double psi(double a, double beta);

/// Volume of a right circular cone with generator a and angle beta in [0, pi/2].
double coneVolume(double a, double beta);

/// Volume of hull({U} u ball(Q, r)) intersected with ball(U, rho), where
/// p = (rho, r, D) and D = dist(U, Q).
double phi(TriplePoint p);

}  // namespace hypercert::hypgeo
