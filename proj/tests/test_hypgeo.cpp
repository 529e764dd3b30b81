#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"
#include "oracles.hpp"

using namespace hypercert;
using namespace hypercert::hypgeo;
using doctest::Approx;
using hypercert::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog3 = std::log(3.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// x with cosh x = cosh y cosh z
double hypotenuse(double y, double z)
{
    return std::acosh(std::cosh(y) * std::cosh(z));
}

}  // namespace

TEST_SUITE("hypgeo") {

TEST_CASE("ball volume")
{
    // sinh(log 3) = 4/3
    CHECK(ballVolume(kLog3 / 2.0) == Approx(kPi * (4.0 / 3.0 - kLog3)).epsilon(1e-15));
    CHECK(ballVolume(kLog3 / 2.0) == Approx(0.737397909563188323).epsilon(1e-14));
    CHECK(ballVolume(2.0 * kLog3 + 0.15) == Approx(156.986200457888295).epsilon(1e-14));

    for (double r : {1e-2, 1e-4, 1e-6}) {
        const double euclid = 4.0 / 3.0 * kPi * r * r * r;
        CHECK(ballVolume(r) / euclid == Approx(1.0).epsilon(r * r * 2.0));
    }

    double prev = 0.0;
    for (double r = 0.01; r < 4.0; r += 0.01) {
        const double v = ballVolume(r);
        CHECK(v > prev);
        prev = v;
    }

    CHECK_THROWS_AS(ballVolume(0.0), DomainError);
    CHECK_THROWS_AS(ballVolume(-1.0), DomainError);
    CHECK_THROWS_AS(ballVolume(kNaN), DomainError);
    CHECK_THROWS_AS(ballVolume(kInf), DomainError);
}

TEST_CASE("cap volume identities")
{
    Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const double r = g.uniform(0.01, 3.0);
        const double w = g.uniform(0.0, r);
        CHECK(capVolume({r, 0.0}) == Approx(ballVolume(r) / 2.0).epsilon(1e-12));
        CHECK(capVolume({r, w}) + capVolume({r, -w}) == Approx(ballVolume(r)).epsilon(1e-12));
    }
    CHECK(capVolume({1.3, 1.3}) == 0.0);
    CHECK(capVolume({1.3, 2.0}) == 0.0);
    CHECK(capVolume({1.3, -1.3}) == Approx(ballVolume(1.3)));
    CHECK(capVolume({1.3, -5.0}) == ballVolume(1.3));
    CHECK_THROWS_AS(capVolume({0.0, 0.1}), DomainError);
    CHECK_THROWS_AS(capVolume({1.0, kNaN}), DomainError);
}

TEST_CASE("cap volume against quadrature")
{
    CHECK(capVolume({1.0, 0.5}) == Approx(0.669423243300580212).epsilon(1e-13));
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double r = 0.2 + 0.3 * i;
            const double w = -r + 2.0 * r * (j + 0.5) / 10.0;
            CHECK(std::abs(capVolume({r, w}) - testing::capVolumeQuadrature(r, w)) < 1e-9);
        }
    }
}

TEST_CASE("cap volume monotonicity")
{
    Gen g(12);
    for (int i = 0; i < 300; ++i) {
        const double r = g.uniform(0.1, 3.0);
        const double w1 = g.uniform(-r, r);
        const double w2 = g.uniform(-r, r);
        const double dr = g.uniform(0.0, 0.5);
        CHECK((w1 <= w2) == (capVolume({r, w1}) >= capVolume({r, w2})));
        CHECK(capVolume({r + dr, w1}) >= capVolume({r, w1}));
    }
}

TEST_CASE("eta")
{
    const double y = 0.4, z = 0.9;
    const double sy = std::sinh(y);
    CHECK(eta({hypotenuse(y, z), y, z}) == Approx(sy * sy).epsilon(1e-12));

    Gen g(13);
    for (int i = 0; i < 2000; ++i) {
        const TriplePoint p{g.uniform(0.01, 4.0), g.uniform(0.01, 4.0), g.uniform(0.01, 4.0)};
        const double sx = std::sinh(p.x);
        CHECK(eta(p) <= sx * sx * (1.0 + 1e-12) + 1e-12);
        CHECK(inV(p) == (eta(p) >= 0.0));
        CHECK(inV0(p) == (eta(p) >= 0.0 && p.y < p.z));
    }

    // cosh 2.5 > cosh^2 0.6: no triangle with these sides
    CHECK(std::cosh(2.5) > std::cosh(0.6) * std::cosh(0.6));
    CHECK(eta({0.6, 0.6, 2.5}) < 0.0);
    CHECK_FALSE(inV({0.6, 0.6, 2.5}));
    CHECK_THROWS_AS(eta({0.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("sigma")
{
    // right angle at P1: cosh y = cosh x cosh z
    const double x = 0.7, z = 0.5;
    CHECK(std::abs(sigma({x, hypotenuse(x, z), z})) < 1e-10);
    // right angle at P2
    CHECK(sigma({hypotenuse(0.4, 0.9), 0.4, 0.9}) == Approx(0.9).epsilon(1e-12));

    Gen g(14);
    for (int i = 0; i < 1000; ++i) {
        const TriplePoint p{g.uniform(0.05, 3.0), g.uniform(0.05, 3.0), g.uniform(0.05, 3.0)};
        if (inV(p)) {
            CHECK(sigma(p) >= 0.0);
        } else {
            CHECK_THROWS_AS(sigma(p), DomainError);
        }
    }
}

TEST_CASE("lens volume")
{
    CHECK(lensVolume({1.2, 0.7, 1.0}) == Approx(0.878453769755707228).epsilon(1e-13));

    // tangency limit
    double prev = kInf;
    for (double gap : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double v = lensVolume({1.2, 0.7, 1.9 - gap});
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-6);

    Gen g(15);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const double r1 = g.uniform(0.1, 2.5);
        const double r2 = g.uniform(0.05, r1);
        const double D = g.uniform(r2, r1 + r2);
        if (!(r1 < r2 + D)) {
            continue;
        }
        const TriplePoint p{r1, r2, D};
        REQUIRE(inV(p));
        CHECK(lensVolume(p) <= std::min(ballVolume(r1), ballVolume(r2)) * (1.0 + 1e-12));
        ++checked;
    }
    CHECK(checked > 500);
    CHECK_THROWS_AS(lensVolume({0.6, 0.6, 2.5}), DomainError);
}

TEST_CASE("omega and theta")
{
    CHECK(omega(kLog3 / 2.0, kLog3) == Approx(std::acosh(5.0 / (2.0 * std::sqrt(3.0)))).epsilon(1e-14));
    CHECK(omega(kLog3 / 2.0, kLog3) == Approx(0.909954167268762996).epsilon(1e-14));
    CHECK(theta(kLog3 / 2.0, kLog3) == Approx(std::asin(std::sqrt(3.0) / 4.0)).epsilon(1e-14));
    CHECK(theta(kLog3 / 2.0, kLog3) == Approx(0.447832396928932486).epsilon(1e-14));

    Gen g(16);
    for (int i = 0; i < 500; ++i) {
        const double r = g.uniform(0.05, 2.0);
        const double D = r + g.uniform(0.01, 2.0);
        const double w = omega(r, D);
        const double t = theta(r, D);
        CHECK(w > 0.0);
        CHECK(t > 0.0);
        CHECK(t < kPi / 2.0);
        CHECK(std::cosh(w) * std::cosh(r) == Approx(std::cosh(D)).epsilon(1e-12));
        CHECK(std::sinh(r) == Approx(std::sin(t) * std::sinh(D)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(omega(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(theta(1.2, 1.0), DomainError);
}

TEST_CASE("psi")
{
    Gen g(17);
    for (int i = 0; i < 500; ++i) {
        const double a = g.uniform(0.01, 3.0);
        CHECK(psi(a, 0.0) == Approx(a).epsilon(1e-10));
        CHECK(std::abs(psi(a, kPi / 2.0)) < 1e-10);
    }
    // hyperbolic Pythagoras in the cone's axial triangle
    const double h = psi(1.0, 0.3);
    const double l = std::asinh(std::sin(0.3) * std::sinh(1.0));
    CHECK(std::cosh(h) * std::cosh(l) == Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(h == Approx(0.923563145925620924).epsilon(1e-14));
    CHECK_THROWS_AS(psi(-1.0, 0.2), DomainError);
}

TEST_CASE("cone volume")
{
    Gen g(18);
    for (int i = 0; i < 300; ++i) {
        const double a = g.uniform(0.01, 3.0);
        CHECK(std::abs(coneVolume(a, 0.0)) < 1e-10);
        CHECK(std::abs(coneVolume(a, kPi / 2.0)) < 1e-10);
        CHECK(coneVolume(a, g.uniform(0.0, kPi / 2.0)) <= ballVolume(a) / 2.0);
    }
    CHECK(coneVolume(1.0, 0.5) == Approx(0.219302727533910127).epsilon(1e-13));
    CHECK_THROWS_AS(coneVolume(1.0, -0.1), DomainError);
    CHECK_THROWS_AS(coneVolume(1.0, 1.6), DomainError);
}

TEST_CASE("phi")
{
    const double atPaper = phi({kLog3 + 0.15, kLog3 / 2.0, kLog3});
    CHECK(atPaper == Approx(0.496407748386239325).epsilon(1e-13));
    CHECK(atPaper > 0.496);
    CHECK(phi({1.3, 0.55, 1.05}) == Approx(0.596296282867252437).epsilon(1e-13));

    Gen g(19);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const double r = g.uniform(0.05, 1.5);
        const double D = r + g.uniform(0.01, 1.5);
        const double rho = D + g.uniform(0.0, r);
        const TriplePoint p{rho, r, D};
        if (!inV0(p)) {
            continue;
        }
        const double v = phi(p);
        const double w = omega(r, D);
        CHECK(v >= 0.0);
        CHECK(v <= ballVolume(rho) * (1.0 + 1e-12));
        CHECK(v <= (ballVolume(r) + coneVolume(w, theta(r, D))) * (1.0 + 1e-12));
        ++checked;
    }
    CHECK(checked > 1000);
    CHECK_THROWS_AS(phi({1.3, 1.1, 1.05}), DomainError);
    CHECK_THROWS_AS(phi({0.6, 0.6, 2.5}), DomainError);
}

TEST_CASE("phi is continuous on V0")
{
    // Along a segment inside V0, halving the step roughly halves the largest jump.
    const TriplePoint a{1.3, 0.55, 1.05};
    const TriplePoint b{1.5, 0.6, 1.2};
    const auto maxJump = [&](int n) {
        double worst = 0.0;
        double prev = phi(a);
        for (int i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            const double v = phi({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)});
            worst = std::max(worst, std::abs(v - prev));
            prev = v;
        }
        return worst;
    };
    const double coarse = maxJump(200);
    const double fine = maxJump(400);
    CHECK(fine < 0.6 * coarse);
    CHECK(fine < 1e-2);
}

TEST_CASE("arccosh clamping")
{
    CHECK(arccoshClamped(1.0 - 1e-13) == 0.0);
    CHECK(arccoshClamped(1.0) == 0.0);
    CHECK_THROWS_AS(arccoshClamped(1.0 - 1e-9), DomainError);
    CHECK_THROWS_AS(arccoshClamped(kNaN), DomainError);
}

}  // TEST_SUITE
