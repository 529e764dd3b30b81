#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hypercert/density.hpp"

namespace hypercert::certify {

/// Margulis parameter epsilon and valence-ball radius R, with
/// 2 eps < R < 5 eps / 2. The certified domain is I = [R/2 - eps/4, eps].
struct CertifyParams {
    double epsilon;
    double R;

    void validate() const;
    double domainLo() const { return R / 2.0 - epsilon / 4.0; }
    double domainHi() const { return epsilon; }
    double scoopRadius() const { return epsilon / 2.0; }
};

/// eps = log 3, R = 2 log 3 + 0.15.
CertifyParams paperParams();

inline constexpr double kDefaultSlack = 1e-9;
inline constexpr double kPaperTarget = 0.496;

struct BoundPair {
    double lower;
    double upper;
};

// Pointwise functions of D on I; these are the quantities the cell bounds
// enclose.
double pointH(const CertifyParams& p, double D);
double pointSigma(const CertifyParams& p, double D);
double pointPsi(const CertifyParams& p, double D);
double pointWlens(const CertifyParams& p, double D);
double pointWcone(const CertifyParams& p, double D);
double pointPhi(const CertifyParams& p, double D);

/// Three goodness quantities of a cell; the cell is good when all are
/// positive.
std::array<double, 3> goodnessMargins(const CertifyParams& p, double dLo, double dHi);

BoundPair hBounds(const CertifyParams& p, double dLo, double dHi);

/// Requires margins 1 and 2 to be positive.
BoundPair sigmaBounds(const CertifyParams& p, double dLo, double dHi);

/// Requires margin 3 to be positive.
BoundPair psiBounds(const CertifyParams& p, double dLo, double dHi);

double wlensLower(const CertifyParams& p, double dLo, double dHi);
double wconeLower(const CertifyParams& p, double dLo, double dHi);

struct SubintervalCertificate {
    double dLo = 0.0;
    double dHi = 0.0;
    double hLo = 0.0;
    double hHi = 0.0;
    // NaN when the cell is not good.
    double sigmaLo = 0.0;
    double sigmaHi = 0.0;
    double psiLo = 0.0;
    double psiHi = 0.0;
    double wlensLo = 0.0;
    double wconeLo = 0.0;
    double phiLo = 0.0;
    bool good = false;
    std::array<double, 3> margins{};
};

/// Evaluates every bound on [dLo, dHi]. Never throws on a cell that is not
/// good: the flag is cleared and the margins say why. A margin counts as
/// positive only when it exceeds `slack`.
SubintervalCertificate phiLower(const CertifyParams& p, double dLo, double dHi,
                                double slack = kDefaultSlack);

struct PartitionCertificate {
    CertifyParams params{};
    double slack = kDefaultSlack;
    std::vector<SubintervalCertificate> cells;
    double certifiedC = 0.0;

    /// Index of the cell with the smallest phiLo.
    std::size_t weakestCell() const;
    bool allGood() const;
};

/// Thrown by verifyPaperPartition; carries the offending certificate.
class CertificationError : public std::runtime_error {
public:
    CertificationError(const std::string& what, PartitionCertificate cert, std::size_t cellIndex)
        : std::runtime_error(what), certificate(std::move(cert)), cellIndex(cellIndex) {}

    PartitionCertificate certificate;
    std::size_t cellIndex;
};

/// Offsets from eps of the 46 interior partition points, as written.
const std::array<const char*, 46>& paperDeltas();

/// The 47-cell partition of I for paperParams(); no checks.
PartitionCertificate paperPartition(double slack = kDefaultSlack);

/// paperPartition() plus the checks that every cell is good and every
/// phiLo exceeds 0.496.
PartitionCertificate verifyPaperPartition(double slack = kDefaultSlack);

struct CertifyOptions {
    int maxDepth = 40;
    double slack = kDefaultSlack;
    std::size_t maxCells = std::size_t{1} << 20;
    /// 0 means hardware concurrency.
    unsigned threads = 0;
};

enum class FailureKind {
    kDepthExhausted,
    kTargetExceedsPhi,  ///< Phi itself is <= target at witnessPoint
    kTooManyCells,
};

struct CertifyFailure {
    FailureKind kind;
    SubintervalCertificate worstCell;
    int depth = 0;
    std::optional<double> witnessPoint;
    std::optional<double> witnessValue;
    std::string message;
};

using CertifyOutcome = std::variant<PartitionCertificate, CertifyFailure>;

/// Bisects I until every cell is good with phiLo > targetC + slack.
CertifyOutcome certifyLowerBound(const CertifyParams& p, double targetC,
                                 const CertifyOptions& opts = {});

struct LargestC {
    double c;
    PartitionCertificate certificate;
};

/// Bisection on c to absolute tolerance `tol`; nullopt when nothing positive
/// can be certified.
std::optional<LargestC> largestCertifiableC(const CertifyParams& p, double tol = 1e-5,
                                            const CertifyOptions& opts = {});

struct GridSpec {
    double rMin;
    double rMax;
    int count;

    std::vector<double> points() const;
};

struct GridPoint {
    double R = 0.0;
    bool ok = false;
    double certifiedC = 0.0;
    double quotient = 0.0;
    long valenceBound = 0;
    std::size_t cellCount = 0;
    std::string message;
};

struct OptimizeResult {
    double epsilon = 0.0;
    double bHalfEps = 0.0;
    std::vector<GridPoint> points;
    std::optional<std::size_t> best;
};

/// For each R, certifies the largest c and computes the valence bound
/// floor((B(R) - b(eps/2)) / c); the best R minimizes it, ties to smaller R.
OptimizeResult optimizeR(double epsilon, const std::vector<double>& grid,
                         const CertifyOptions& opts = {}, double cTolerance = 1e-5,
                         const density::QuadratureConfig& quad = {});

}  // namespace hypercert::certify
