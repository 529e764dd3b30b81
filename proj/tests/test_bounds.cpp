#include <doctest.h>

#include <cmath>

#include "hypercert/bounds.hpp"
#include "hypercert/certify.hpp"
#include "hypercert/density.hpp"
#include "hypercert/hypgeo.hpp"

using namespace hypercert;
using namespace hypercert::bounds;
using doctest::Approx;

namespace {

const double kLog3 = std::log(3.0);

bool inHalfOpen(double v, double lo, double hi)
{
    return v >= lo && v < hi;
}

Condition conditionOf(double epsilon, double R, double c, const certify::PartitionCertificate& cert)
{
    try {
        rankReport(epsilon, R, c, cert);
    } catch (const PreconditionError& e) {
        return e.condition;
    }
    FAIL("expected a precondition failure");
    return Condition::kPhiExceedsC;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("paper report")
{
    const auto rep = paperReport();
    CHECK(rep.quotient == Approx(314.629877319144477).epsilon(1e-11));
    CHECK(rep.valenceBound == 314);
    CHECK(rep.ballHalfEps == Approx(0.737397909563188323).epsilon(1e-14));
    CHECK(rep.ballHalfEps > 0.496);
    CHECK(rep.ballR == Approx(156.986200457888295).epsilon(1e-14));
    CHECK(rep.bHalfEps == Approx(0.929781307592634420).epsilon(1e-11));
    CHECK(rep.rankCoefficient == Approx((314.0 / 2.0 - 1.0) / rep.bHalfEps).epsilon(1e-15));
    CHECK(rep.quadratureTolerance == 1e-10);
}

TEST_CASE("valence bound is stable under small changes of c")
{
    const auto p = certify::paperParams();
    const auto cert = certify::verifyPaperPartition();
    for (double c : {0.496 - 1e-4, 0.496, 0.496 + 1e-5}) {
        CHECK(rankReport(p.epsilon, p.R, c, cert).valenceBound == 314);
    }
    // 0.496 + 1e-4 exceeds what the paper partition proves; use a finer one
    const auto fine = certify::certifyLowerBound(p, 0.4961);
    REQUIRE(std::holds_alternative<certify::PartitionCertificate>(fine));
    CHECK(rankReport(p.epsilon, p.R, 0.496 + 1e-4, std::get<certify::PartitionCertificate>(fine))
              .valenceBound == 314);
}

TEST_CASE("lambda constants")
{
    CHECK(inHalfOpen(lambda0(), 167.781, 167.782));
    CHECK(inHalfOpen(lambda1(), 168.601, 168.602));
    CHECK(inHalfOpen(lambda1Noncompact(), 168.132, 168.133));
    CHECK(inHalfOpen(lambda1CompactP2(), 168.046, 168.047));

    CHECK(lambda0() == Approx(167.781389802201060).epsilon(1e-11));
    CHECK(lambda1() == Approx(168.601061933348601).epsilon(1e-11));
    CHECK(lambda1Noncompact() == Approx(168.132513397706678).epsilon(1e-11));
    CHECK(lambda1CompactP2() == Approx(168.046641791590981).epsilon(1e-11));

    CHECK(lambda1CompactP2() < lambda1Noncompact());
    CHECK(lambda1Noncompact() < lambda1());
    CHECK(lambda1() - lambda0() == Approx(1.0 / kClosedVolumeRank4).epsilon(1e-12));
}

TEST_CASE("homology bound routing")
{
    const double V = 2.5;
    const auto closed2 = homologyBound({V, true, true});
    const auto closedOdd = homologyBound({V, true, false});
    const auto cusped2 = homologyBound({V, false, true});
    const auto cuspedOdd = homologyBound({V, false, false});
    CHECK(closed2.coefficient == Approx(lambda1CompactP2()).epsilon(1e-15));
    CHECK(closedOdd.coefficient == Approx(lambda1()).epsilon(1e-15));
    CHECK(cusped2.coefficient == Approx(lambda1Noncompact()).epsilon(1e-15));
    CHECK(cuspedOdd.coefficient == cusped2.coefficient);
    CHECK(closed2.bound == Approx(closed2.coefficient * V).epsilon(1e-15));
    CHECK(closed2.smallRankBound == Approx(11.0 * V).epsilon(1e-15));
    CHECK_THROWS_AS(homologyBound({0.0, true, true}), DomainError);
    CHECK_THROWS_AS(homologyBound({-1.0, false, true}), DomainError);
}

TEST_CASE("rank bound monotonicity")
{
    const auto p = certify::paperParams();
    const auto cert = certify::verifyPaperPartition();
    double prev = 0.0;
    for (double V = 0.94; V < 20.0; V += 0.5) {
        const double r = rankBound(p.epsilon, p.R, 0.496, V, cert);
        CHECK(r > prev);
        CHECK(r == Approx(1.0 + lambda0() * V).epsilon(1e-13));
        prev = r;
    }
    prev = 1e300;
    for (double c = 0.30; c <= 0.496; c += 0.0037) {
        try {
            const double r = rankBound(p.epsilon, p.R, c, 3.0, cert);
            CHECK(r <= prev);
            prev = r;
        } catch (const PreconditionError& e) {
            // integral quotients are refused, not skipped silently
            CHECK(e.condition == Condition::kNonIntegral);
        }
    }
}

TEST_CASE("preconditions are enforced")
{
    const auto p = certify::paperParams();
    const auto cert = certify::verifyPaperPartition();

    // (a): certificate for other parameters, or one that proves too little
    CHECK(conditionOf(p.epsilon, p.R + 0.01, 0.496, cert) == Condition::kPhiExceedsC);
    CHECK(conditionOf(p.epsilon, p.R, 0.497, cert) == Condition::kPhiExceedsC);
    auto broken = cert;
    broken.cells[10].good = false;
    CHECK(conditionOf(p.epsilon, p.R, 0.496, broken) == Condition::kPhiExceedsC);
    auto empty = cert;
    empty.cells.clear();
    CHECK(conditionOf(p.epsilon, p.R, 0.496, empty) == Condition::kPhiExceedsC);

    // (b): a certificate claiming more than B(eps/2)
    auto inflated = cert;
    inflated.certifiedC = 10.0;
    CHECK(conditionOf(p.epsilon, p.R, 0.8, inflated) == Condition::kBallExceedsC);

    // (c): c chosen so the quotient is exactly 315
    const double c315 = (hypgeo::ballVolume(p.R) - density::bRatio(p.epsilon / 2.0)) / 315.0;
    CHECK(c315 < cert.certifiedC);
    CHECK(conditionOf(p.epsilon, p.R, c315, cert) == Condition::kNonIntegral);

    CHECK_THROWS_AS(rankBound(p.epsilon, p.R, 0.496, 0.0, cert), DomainError);
    CHECK_THROWS_AS(rankReport(p.epsilon, p.R, -0.1, cert), DomainError);
}

}  // TEST_SUITE
