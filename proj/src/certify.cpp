#include "hypercert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"

namespace hypercert::certify {

using hypgeo::arccoshClamped;
using hypgeo::ballVolume;
using hypgeo::capVolume;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEtaRoundoff = 1e-9;

double sq(double v) { return v * v; }

void requireCell(const CertifyParams& p, double dLo, double dHi)
{
    if (!std::isfinite(dLo) || !std::isfinite(dHi) || !(dLo < dHi)) {
        throw DomainError("cell must satisfy dLo < dHi");
    }
    if (dLo < p.domainLo() || dHi > p.domainHi()) {
        throw DomainError("cell lies outside [R/2 - eps/4, eps]");
    }
}

// Runs fn(i) for i in [0, n) over a few threads. Each index writes only
// its own output slot, so the result does not depend on the thread count.
template <typename Fn>
void parallelFor(std::size_t n, unsigned threads, Fn&& fn)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1 || n < 8) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) {
                fn(i);
            }
        });
    }
}

}  // namespace

void CertifyParams::validate() const
{
    detail::requirePositive(epsilon, "epsilon");
    detail::requirePositive(R, "R");
    if (!(2.0 * epsilon < R && R < 2.5 * epsilon)) {
        throw DomainError("parameters must satisfy 2 eps < R < 5 eps / 2");
    }
}

CertifyParams paperParams()
{
    const double eps = std::log(3.0);
    return {eps, 2.0 * eps + 0.15};
}

double pointH(const CertifyParams& p, double D)
{
    if (!(D >= p.domainLo() && D <= p.domainHi())) {
        throw DomainError("D lies outside [R/2 - eps/4, eps]");
    }
    // Every (R - D, eps/2, D) with D in I lies in V0. At D = R/2 - eps/4 the
    // triangle is degenerate and eta vanishes, so roundoff can push it
    // slightly negative.
    const double h = hypgeo::eta({p.R - D, p.scoopRadius(), D});
    if (h < -kEtaRoundoff) {
        throw DomainError("eta is negative on I; parameters are inconsistent");
    }
    return std::max(h, 0.0);
}

double pointSigma(const CertifyParams& p, double D)
{
    return arccoshClamped(std::cosh(p.R - D) / std::sqrt(1.0 + pointH(p, D)));
}

double pointPsi(const CertifyParams& p, double D)
{
    const double r = p.scoopRadius();
    return hypgeo::psi(hypgeo::omega(r, D), hypgeo::theta(r, D));
}

double pointWlens(const CertifyParams& p, double D)
{
    const double s = pointSigma(p, D);
    return capVolume({p.R - D, s}) + capVolume({p.scoopRadius(), D - s});
}

double pointWcone(const CertifyParams& p, double D)
{
    const double r = p.scoopRadius();
    return hypgeo::coneVolume(hypgeo::omega(r, D), hypgeo::theta(r, D));
}

double pointPhi(const CertifyParams& p, double D)
{
    return pointWlens(p, D) + pointWcone(p, D) - capVolume({p.scoopRadius(), D - pointPsi(p, D)});
}

BoundPair hBounds(const CertifyParams& p, double dLo, double dHi)
{
    requireCell(p, dLo, dHi);
    const double cr = std::cosh(p.scoopRadius());
    const double lower = (2.0 * std::cosh(p.R - dHi) * cr * std::cosh(dLo)
                          - (sq(std::cosh(p.R - dLo)) + sq(cr) + sq(std::cosh(dHi))) + 1.0)
                         / sq(std::sinh(dHi));
    const double upper = (2.0 * std::cosh(p.R - dLo) * cr * std::cosh(dHi)
                          - (sq(std::cosh(p.R - dHi)) + sq(cr) + sq(std::cosh(dLo))) + 1.0)
                         / sq(std::sinh(dLo));
    return {lower, upper};
}

std::array<double, 3> goodnessMargins(const CertifyParams& p, double dLo, double dHi)
{
    const BoundPair h = hBounds(p, dLo, dHi);
    const double r = p.scoopRadius();
    return {
        h.lower + 1.0,
        sq(std::sinh(p.R - dHi)) - h.upper,
        std::sinh(hypgeo::omega(r, dLo))
            - std::sinh(hypgeo::omega(r, dHi)) * std::sin(hypgeo::theta(r, dHi)),
    };
}

BoundPair sigmaBounds(const CertifyParams& p, double dLo, double dHi)
{
    const auto m = goodnessMargins(p, dLo, dHi);
    if (!(m[0] > 0.0) || !(m[1] > 0.0)) {
        throw DomainError("sigma bounds need H- > -1 and H+ < sinh^2(R - D+)");
    }
    const BoundPair h = hBounds(p, dLo, dHi);
    return {
        arccoshClamped(std::cosh(p.R - dHi) / std::sqrt(1.0 + h.upper)),
        arccoshClamped(std::cosh(p.R - dLo) / std::sqrt(1.0 + h.lower)),
    };
}

BoundPair psiBounds(const CertifyParams& p, double dLo, double dHi)
{
    const auto m = goodnessMargins(p, dLo, dHi);
    if (!(m[2] > 0.0)) {
        throw DomainError("psi bounds need sinh w(D-) > sinh w(D+) sin t(D+)");
    }
    const double r = p.scoopRadius();
    const double wLo = hypgeo::omega(r, dLo);
    const double wHi = hypgeo::omega(r, dHi);
    const double tLo = hypgeo::theta(r, dLo);
    const double tHi = hypgeo::theta(r, dHi);
    return {
        arccoshClamped(std::cosh(wLo) / std::sqrt(1.0 + sq(std::sinh(wHi)) * sq(std::sin(tHi)))),
        arccoshClamped(std::cosh(wHi) / std::sqrt(1.0 + sq(std::sinh(wLo)) * sq(std::sin(tLo)))),
    };
}

double wlensLower(const CertifyParams& p, double dLo, double dHi)
{
    const BoundPair s = sigmaBounds(p, dLo, dHi);
    return capVolume({p.R - dHi, s.upper}) + capVolume({p.scoopRadius(), dHi - s.lower});
}

double wconeLower(const CertifyParams& p, double dLo, double dHi)
{
    const BoundPair ps = psiBounds(p, dLo, dHi);
    const double r = p.scoopRadius();
    const double wLo = hypgeo::omega(r, dLo);
    const double wHi = hypgeo::omega(r, dHi);
    return ballVolume(wLo) / 2.0 * (1.0 - std::cos(hypgeo::theta(r, dLo)))
           - capVolume({wHi, ps.lower});
}

SubintervalCertificate phiLower(const CertifyParams& p, double dLo, double dHi, double slack)
{
    SubintervalCertificate c;
    c.dLo = dLo;
    c.dHi = dHi;
    const BoundPair h = hBounds(p, dLo, dHi);
    c.hLo = h.lower;
    c.hHi = h.upper;
    c.margins = goodnessMargins(p, dLo, dHi);
    c.good = std::all_of(c.margins.begin(), c.margins.end(),
                         [slack](double m) { return m - slack > 0.0; });
    if (!c.good) {
        c.sigmaLo = c.sigmaHi = c.psiLo = c.psiHi = kNaN;
        c.wlensLo = c.wconeLo = c.phiLo = kNaN;
        return c;
    }
    const BoundPair s = sigmaBounds(p, dLo, dHi);
    const BoundPair ps = psiBounds(p, dLo, dHi);
    c.sigmaLo = s.lower;
    c.sigmaHi = s.upper;
    c.psiLo = ps.lower;
    c.psiHi = ps.upper;
    c.wlensLo = wlensLower(p, dLo, dHi);
    c.wconeLo = wconeLower(p, dLo, dHi);
    c.phiLo = c.wlensLo + c.wconeLo - capVolume({p.scoopRadius(), dLo - ps.upper});
    return c;
}

std::size_t PartitionCertificate::weakestCell() const
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (cells[i].phiLo < cells[best].phiLo) {
            best = i;
        }
    }
    return best;
}

bool PartitionCertificate::allGood() const
{
    return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.good; });
}

const std::array<const char*, 46>& paperDeltas()
{
    static const std::array<const char*, 46> deltas = {
        "0.17",   "0.14",   "0.12",    "0.10",    "0.09",    "0.08",   "0.07",   "0.06",
        "0.05",   "0.045",  "0.040",   "0.035",   "0.030",   "0.025",  "0.022",  "0.020",
        "0.018",  "0.016",  "0.014",   "0.012",   "0.010",   "0.0084", "0.007",  "0.006",
        "0.005",  "0.0042", "0.0035",  "0.0030",  "0.0025",  "0.0022", "0.0019", "0.0016",
        "0.0013", "0.0011", "0.0009",  "0.00075", "0.0006",  "0.0005", "0.0004", "0.0003",
        "0.00025", "0.00020", "0.00015", "0.00010", "0.00005", "0.00002",
    };
    return deltas;
}

PartitionCertificate paperPartition(double slack)
{
    const CertifyParams p = paperParams();
    std::vector<double> points;
    points.push_back(p.domainLo());
    for (const char* d : paperDeltas()) {
        points.push_back(p.epsilon - std::strtod(d, nullptr));
    }
    points.push_back(p.domainHi());

    PartitionCertificate cert;
    cert.params = p;
    cert.slack = slack;
    for (std::size_t i = 1; i < points.size(); ++i) {
        cert.cells.push_back(phiLower(p, points[i - 1], points[i], slack));
    }
    cert.certifiedC = std::numeric_limits<double>::infinity();
    for (const auto& c : cert.cells) {
        cert.certifiedC = c.good ? std::min(cert.certifiedC, c.phiLo) : kNaN;
        if (!c.good) {
            break;
        }
    }
    return cert;
}

PartitionCertificate verifyPaperPartition(double slack)
{
    PartitionCertificate cert = paperPartition(slack);
    for (std::size_t i = 0; i < cert.cells.size(); ++i) {
        const auto& c = cert.cells[i];
        if (!c.good || !(c.phiLo - slack > kPaperTarget)) {
            std::ostringstream os;
            os << "cell " << i + 1 << " [" << c.dLo << ", " << c.dHi << "] "
               << (c.good ? "has phiLo <= 0.496" : "is not good");
            throw CertificationError(os.str(), std::move(cert), i);
        }
    }
    return cert;
}

CertifyOutcome certifyLowerBound(const CertifyParams& p, double targetC, const CertifyOptions& opts)
{
    p.validate();
    detail::requireFinite(targetC, "target constant");
    if (opts.maxDepth < 0) {
        throw DomainError("maxDepth must be non-negative");
    }

    struct Pending {
        double lo;
        double hi;
        int depth;
    };
    std::vector<Pending> frontier{{p.domainLo(), p.domainHi(), 0}};
    std::vector<SubintervalCertificate> accepted;

    while (!frontier.empty()) {
        std::vector<SubintervalCertificate> evaluated(frontier.size());
        parallelFor(frontier.size(), opts.threads, [&](std::size_t i) {
            evaluated[i] = phiLower(p, frontier[i].lo, frontier[i].hi, opts.slack);
        });

        std::vector<Pending> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            const auto& cell = evaluated[i];
            const auto& pend = frontier[i];
            if (cell.good && cell.phiLo - opts.slack > targetC) {
                accepted.push_back(cell);
                continue;
            }
            const double mid = pend.lo + (pend.hi - pend.lo) / 2.0;
            const double phiMid = pointPhi(p, mid);
            if (phiMid <= targetC + opts.slack) {
                std::ostringstream os;
                os << "Phi(" << mid << ") = " << phiMid << " does not exceed the target " << targetC;
                return CertifyFailure{FailureKind::kTargetExceedsPhi, cell, pend.depth, mid, phiMid,
                                      os.str()};
            }
            if (pend.depth >= opts.maxDepth || !(pend.lo < mid && mid < pend.hi)) {
                std::ostringstream os;
                os << "depth " << pend.depth << " exhausted on [" << pend.lo << ", " << pend.hi << "]";
                return CertifyFailure{FailureKind::kDepthExhausted, cell, pend.depth, std::nullopt,
                                      std::nullopt, os.str()};
            }
            next.push_back({pend.lo, mid, pend.depth + 1});
            next.push_back({mid, pend.hi, pend.depth + 1});
        }
        if (accepted.size() + next.size() > opts.maxCells) {
            return CertifyFailure{FailureKind::kTooManyCells, evaluated.front(), frontier.front().depth,
                                  std::nullopt, std::nullopt, "cell budget exhausted"};
        }
        frontier = std::move(next);
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const auto& a, const auto& b) { return a.dLo < b.dLo; });
    PartitionCertificate cert;
    cert.params = p;
    cert.slack = opts.slack;
    cert.cells = std::move(accepted);
    cert.certifiedC = std::numeric_limits<double>::infinity();
    for (const auto& c : cert.cells) {
        cert.certifiedC = std::min(cert.certifiedC, c.phiLo);
    }
    return cert;
}

std::optional<LargestC> largestCertifiableC(const CertifyParams& p, double tol,
                                            const CertifyOptions& opts)
{
    p.validate();
    detail::requirePositive(tol, "c tolerance");
    // Any certifiable c lies below every sampled value of Phi.
    constexpr int kSamples = 256;
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kSamples; ++i) {
        const double D = p.domainLo() + (p.domainHi() - p.domainLo()) * i / kSamples;
        hi = std::min(hi, pointPhi(p, D));
    }
    double lo = 0.0;
    std::optional<LargestC> best;
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2.0;
        auto outcome = certifyLowerBound(p, mid, opts);
        if (auto* cert = std::get_if<PartitionCertificate>(&outcome)) {
            lo = mid;
            best = LargestC{mid, std::move(*cert)};
        } else {
            hi = mid;
        }
    }
    return best;
}

std::vector<double> GridSpec::points() const
{
    if (count < 1) {
        throw DomainError("grid needs at least one point");
    }
    if (count == 1) {
        return {rMin};
    }
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(rMin + (rMax - rMin) * i / (count - 1));
    }
    return out;
}

OptimizeResult optimizeR(double epsilon, const std::vector<double>& grid, const CertifyOptions& opts,
                         double cTolerance, const density::QuadratureConfig& quad)
{
    detail::requirePositive(epsilon, "epsilon");
    if (grid.empty()) {
        throw DomainError("grid needs at least one point");
    }
    OptimizeResult result;
    result.epsilon = epsilon;
    result.bHalfEps = density::bRatio(epsilon / 2.0, quad);
    const double ballHalfEps = ballVolume(epsilon / 2.0);

    for (const double R : grid) {
        GridPoint gp;
        gp.R = R;
        try {
            const CertifyParams p{epsilon, R};
            p.validate();
            const auto found = largestCertifiableC(p, cTolerance, opts);
            if (!found) {
                gp.message = "no positive constant certified";
            } else {
                // Any c below a certified constant is certified too, so cap c
                // under B(eps/2) rather than dropping the point.
                gp.certifiedC = std::min(found->c, ballHalfEps - cTolerance);
                gp.cellCount = found->certificate.cells.size();
                gp.quotient = (ballVolume(R) - result.bHalfEps) / gp.certifiedC;
                gp.valenceBound = static_cast<long>(std::floor(gp.quotient));
                gp.ok = gp.certifiedC > 0.0;
                if (!gp.ok) {
                    gp.message = "certified constant is not positive";
                }
            }
        } catch (const std::exception& e) {
            gp.message = e.what();
        }
        result.points.push_back(gp);
    }

    for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto& gp = result.points[i];
        if (!gp.ok) {
            continue;
        }
        if (!result.best) {
            result.best = i;
            continue;
        }
        const auto& cur = result.points[*result.best];
        if (gp.valenceBound < cur.valenceBound
            || (gp.valenceBound == cur.valenceBound && gp.R < cur.R)) {
            result.best = i;
        }
    }
    return result;
}

}  // namespace hypercert::certify
