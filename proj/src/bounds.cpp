#include "hypercert/bounds.hpp"

#include <cmath>
#include <sstream>

#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"

namespace hypercert::bounds {

namespace {

bool sameParams(const certify::CertifyParams& a, double epsilon, double R)
{
    const auto close = [](double x, double y) { return std::abs(x - y) <= 1e-15 * std::abs(y); };
    return close(a.epsilon, epsilon) && close(a.R, R);
}

}  // namespace

RankBoundReport rankReport(double epsilon, double R, double c, const certify::PartitionCertificate& cert,
                           const density::QuadratureConfig& quad)
{
    certify::CertifyParams{epsilon, R}.validate();
    detail::requirePositive(c, "c");

    if (!sameParams(cert.params, epsilon, R)) {
        throw PreconditionError(Condition::kPhiExceedsC,
                                "condition (a): certificate was issued for different (eps, R)");
    }
    if (cert.cells.empty() || !cert.allGood() || !(cert.certifiedC > c)) {
        std::ostringstream os;
        os << "condition (a): certificate does not prove Phi > " << c << " on I";
        throw PreconditionError(Condition::kPhiExceedsC, os.str());
    }

    RankBoundReport rep;
    rep.epsilon = epsilon;
    rep.R = R;
    rep.c = c;
    rep.ballHalfEps = hypgeo::ballVolume(epsilon / 2.0);
    if (!(rep.ballHalfEps > c)) {
        throw PreconditionError(Condition::kBallExceedsC, "condition (b): B(eps/2) must exceed c");
    }
    rep.bHalfEps = density::bRatio(epsilon / 2.0, quad);
    rep.ballR = hypgeo::ballVolume(R);
    rep.quotient = (rep.ballR - rep.bHalfEps) / c;
    if (std::abs(rep.quotient - std::round(rep.quotient)) <= 10.0 * cert.slack) {
        throw PreconditionError(Condition::kNonIntegral,
                                "condition (c): (B(R) - b(eps/2)) / c is an integer within slack");
    }
    rep.valenceBound = static_cast<long>(std::floor(rep.quotient));
    rep.rankCoefficient = (static_cast<double>(rep.valenceBound) / 2.0 - 1.0) / rep.bHalfEps;
    rep.quadratureTolerance = quad.tolerance;
    return rep;
}

double rankBound(double epsilon, double R, double c, double volume,
                 const certify::PartitionCertificate& cert, const density::QuadratureConfig& quad)
{
    detail::requirePositive(volume, "volume");
    return 1.0 + volume * rankReport(epsilon, R, c, cert, quad).rankCoefficient;
}

RankBoundReport paperReport(const density::QuadratureConfig& quad)
{
    const auto p = certify::paperParams();
    const auto cert = certify::verifyPaperPartition();
    return rankReport(p.epsilon, p.R, certify::kPaperTarget, cert, quad);
}

double lambda0(const density::QuadratureConfig& quad)
{
    return paperReport(quad).rankCoefficient;
}

double lambda1(const density::QuadratureConfig& quad)
{
    return 1.0 / kClosedVolumeRank4 + lambda0(quad);
}

double lambda1Noncompact(const density::QuadratureConfig& quad)
{
    return 1.0 / kCuspedVolumeRank3 + lambda0(quad);
}

double lambda1CompactP2(const density::QuadratureConfig& quad)
{
    return 1.0 / kClosedVolumeMod2Rank11 + lambda0(quad);
}

HomologyBound homologyBound(const HomologyBoundQuery& q, const density::QuadratureConfig& quad)
{
    detail::requirePositive(q.volume, "volume");
    const double l0 = lambda0(quad);
    double threshold = kClosedVolumeRank4;
    if (q.compact && q.primeIsTwo) {
        threshold = kClosedVolumeMod2Rank11;
    } else if (!q.compact) {
        threshold = kCuspedVolumeRank3;
    }
    const double coefficient = 1.0 / threshold + l0;
    return {coefficient, coefficient * q.volume, 11.0 * q.volume};
}

}  // namespace hypercert::bounds
