#pragma once

// Boroczky's simplex bound for ball packings in hyperbolic 3-space.

namespace hypercert::density {

enum class QuadratureMethod {
    kAdaptive,    ///< adaptive Gauss-Kronrod bisection
    kFixedOrder,  ///< one 61-point Gauss-Kronrod pass
};

struct QuadratureConfig {
    QuadratureMethod method = QuadratureMethod::kAdaptive;
    /// Absolute tolerance on the integral.
    double tolerance = 1e-10;
    /// Maximum bisection depth of the adaptive scheme.
    int maxSubdivisions = 15;

    void validate() const;
};

struct QuadratureValue {
    double value;
    double errorEstimate;
};

/// arccos(1/x), |x| >= 1.
double arcsec(double x);

/// Dihedral angle of the regular simplex with edge 2r.
double dihedralBeta(double r);

/// Volume of the regular simplex with edge 2r together with the
/// quadrature error estimate. Throws QuadratureError when the estimate
/// exceeds cfg.tolerance.
QuadratureValue simplexVolume(double r, const QuadratureConfig& cfg = {});

double simplexVolumeTau(double r, const QuadratureConfig& cfg = {});

/// Boroczky density d_3(r) of a packing of radius-r balls.
double packingDensity(double r, const QuadratureConfig& cfg = {});

/// B(r) / d_3(r).
double bRatio(double r, const QuadratureConfig& cfg = {});

/// Distance from barycentre to a vertex of the regular simplex with edge 2r.
double circumradiusH3(double r);

}  // namespace hypercert::density
