#pragma once

#include "hypercert/certify.hpp"
#include "hypercert/density.hpp"
#include "hypercert/errors.hpp"

namespace hypercert::bounds {

// Volume thresholds taken from the literature on small-volume hyperbolic
// 3-manifolds. They are inputs here, not derived.

/// Every orientable finite-volume hyperbolic 3-manifold (Gabai-Meyerhoff-Milley).
inline constexpr double kMinVolume = 0.94;
/// Closed, with dim H1(M; F_p) >= 4 for some p.
inline constexpr double kClosedVolumeRank4 = 1.22;
/// Non-compact, with dim H1(M; F_p) >= 3 (two-cusp bound plus the census).
inline constexpr double kCuspedVolumeRank3 = 2.848;
/// Closed, with dim H1(M; F_2) >= 11.
inline constexpr double kClosedVolumeMod2Rank11 = 3.77;

/// Which hypothesis of the rank bound failed.
enum class Condition : char {
    kPhiExceedsC = 'a',
    kBallExceedsC = 'b',
    kNonIntegral = 'c',
};

class PreconditionError : public DomainError {
public:
    PreconditionError(Condition c, const std::string& what) : DomainError(what), condition(c) {}
    Condition condition;
};

struct RankBoundReport {
    double epsilon = 0.0;
    double R = 0.0;
    double c = 0.0;
    double bHalfEps = 0.0;
    double ballR = 0.0;
    double ballHalfEps = 0.0;
    double quotient = 0.0;
    long valenceBound = 0;
    double rankCoefficient = 0.0;
    double quadratureTolerance = 0.0;
};

/// Checks conditions (a)-(c) against `cert` and fills the report.
/// Throws PreconditionError naming the first condition that fails.
RankBoundReport rankReport(double epsilon, double R, double c,
                           const certify::PartitionCertificate& cert,
                           const density::QuadratureConfig& quad = {});

/// 1 + volume * rankCoefficient.
double rankBound(double epsilon, double R, double c, double volume,
                 const certify::PartitionCertificate& cert,
                 const density::QuadratureConfig& quad = {});

/// Report for eps = log 3, R = 2 log 3 + 0.15, c = 0.496, backed by the
/// verified 47-cell partition.
RankBoundReport paperReport(const density::QuadratureConfig& quad = {});

double lambda0(const density::QuadratureConfig& quad = {});
double lambda1(const density::QuadratureConfig& quad = {});
double lambda1Noncompact(const density::QuadratureConfig& quad = {});
double lambda1CompactP2(const density::QuadratureConfig& quad = {});

struct HomologyBoundQuery {
    double volume;
    bool compact;
    bool primeIsTwo;
};

struct HomologyBound {
    double coefficient;
    double bound;
    /// 11 * volume, valid whenever dim H1 <= 10.
    double smallRankBound;
};

HomologyBound homologyBound(const HomologyBoundQuery& q, const density::QuadratureConfig& quad = {});

}  // namespace hypercert::bounds
