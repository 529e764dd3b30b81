// hypercert: constants, certificates and oracle checks from the command line.
//
// Exit codes: 0 success, 1 certification failure, 2 invalid input.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hypercert/bounds.hpp"
#include "hypercert/certify.hpp"
#include "hypercert/density.hpp"
#include "hypercert/errors.hpp"
#include "hypercert/hypgeo.hpp"
#include "hypercert/mc_oracle.hpp"
#include "hypercert/serialize.hpp"

namespace {

using hypercert::io::json;
namespace certify = hypercert::certify;
namespace bounds = hypercert::bounds;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct CliConfig {
    std::string format = "json";
    std::string output;
    double quadTolerance = 1e-10;
    double slack = certify::kDefaultSlack;
    std::uint64_t seed = 20240917;
    std::uint64_t samples = 1000000;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parseReal(const std::string& text, const std::string& flag)
{
    const double log3 = std::log(3.0);
    if (text == "log3") {
        return log3;
    }
    if (text == "log3-paper") {
        return 2.0 * log3 + 0.15;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0' || !std::isfinite(v)) {
        throw InvalidInput("--" + flag + ": not a number: '" + text + "'");
    }
    return v;
}

bool parseBool(const std::string& text, const std::string& flag)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw InvalidInput("--" + flag + ": expected true or false");
}

std::vector<double> parseList(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(parseReal(item, "params"));
        }
    }
    return out;
}

hypercert::density::QuadratureConfig quadConfig(const CliConfig& cfg)
{
    hypercert::density::QuadratureConfig q;
    q.tolerance = cfg.quadTolerance;
    return q;
}

// Flat "key: value" rendering; nested objects get dotted keys.
void renderHuman(std::ostream& os, const json& j, const std::string& prefix = "")
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (it.key() == "cells" && it.value().is_array()) {
                os << key << ": " << it.value().size() << " cells\n";
                std::size_t i = 0;
                for (const auto& c : it.value()) {
                    os << "  [" << ++i << "] D=[" << hypercert::io::dumpJson(c.at("dLo"), -1) << ", "
                       << hypercert::io::dumpJson(c.at("dHi"), -1)
                       << "] phiLo=" << hypercert::io::dumpJson(c.at("phiLo"), -1)
                       << " good=" << c.at("good").dump()
                       << " margins=" << hypercert::io::dumpJson(c.at("margins"), -1) << '\n';
                }
                continue;
            }
            renderHuman(os, it.value(), key);
        }
    } else if (j.is_array() && !j.empty() && j.front().is_object()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            renderHuman(os, j[i], prefix + "[" + std::to_string(i) + "]");
        }
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : hypercert::io::dumpJson(j, -1))
           << '\n';
    }
}

void renderCsvScalars(std::ostream& os, const json& j, const std::string& prefix = "")
{
    if (prefix.empty()) {
        os << "key,value\n";
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.value().is_object()) {
            renderCsvScalars(os, it.value(), key);
        } else if (!it.value().is_array() || !it.value().empty()) {
            const auto& v = it.value();
            os << key << ',' << (v.is_string() ? v.get<std::string>() : hypercert::io::dumpJson(v, -1))
               << '\n';
        }
    }
}

class Emitter {
public:
    explicit Emitter(const CliConfig& cfg) : cfg_(cfg)
    {
        if (!cfg.output.empty()) {
            file_.open(cfg.output);
            if (!file_) {
                throw InvalidInput("cannot open output file " + cfg.output);
            }
        }
    }

    std::ostream& out() { return cfg_.output.empty() ? std::cout : file_; }

    // cert, when given, drives the CSV rows.
    void emit(const json& doc, const certify::PartitionCertificate* cert = nullptr)
    {
        if (cfg_.format == "json") {
            out() << hypercert::io::dumpJson(doc) << '\n';
        } else if (cfg_.format == "human") {
            renderHuman(out(), doc);
        } else if (cert) {
            hypercert::io::writeCsv(out(), *cert);
        } else if (doc.contains("points") && doc["points"].is_array()) {
            out() << "R,ok,certifiedC,quotient,valenceBound,cellCount\n";
            for (const auto& p : doc["points"]) {
                const auto num = [&](const char* k) {
                    return p.contains(k) ? hypercert::io::dumpJson(p[k], -1) : std::string();
                };
                out() << num("R") << ',' << p["ok"].dump() << ',' << num("certifiedC") << ','
                      << num("quotient") << ',' << num("valenceBound") << ',' << num("cellCount")
                      << '\n';
            }
        } else {
            renderCsvScalars(out(), doc);
        }
    }

private:
    const CliConfig& cfg_;
    std::ofstream file_;
};

int cmdConstants(const CliConfig& cfg)
{
    const auto quad = quadConfig(cfg);
    const double half = std::log(3.0) / 2.0;
    const auto rep = bounds::paperReport(quad);
    const auto tau = hypercert::density::simplexVolume(half, quad);
    json doc = {
        {"ballHalfEps", hypercert::hypgeo::ballVolume(half)},
        {"bHalfEps", rep.bHalfEps},
        {"dHalfEps", hypercert::density::packingDensity(half, quad)},
        {"tauHalfEps", tau.value},
        {"tauErrorEstimate", tau.errorEstimate},
        {"lambda0", rep.rankCoefficient},
        {"lambda1", 1.0 / bounds::kClosedVolumeRank4 + rep.rankCoefficient},
        {"lambda1Noncompact", 1.0 / bounds::kCuspedVolumeRank3 + rep.rankCoefficient},
        {"lambda1CompactP2", 1.0 / bounds::kClosedVolumeMod2Rank11 + rep.rankCoefficient},
        {"valenceBound", rep.valenceBound},
        {"quotient", rep.quotient},
        {"quadratureTolerance", quad.tolerance},
    };
    Emitter(cfg).emit(doc);
    return kExitOk;
}

int cmdVerifyLemma(const CliConfig& cfg)
{
    try {
        const auto cert = certify::verifyPaperPartition(cfg.slack);
        json doc = hypercert::io::toJson(cert);
        doc["weakestCell"] = cert.weakestCell() + 1;
        doc["target"] = certify::kPaperTarget;
        Emitter(cfg).emit(doc, &cert);
        return kExitOk;
    } catch (const certify::CertificationError& e) {
        std::cerr << "verification failed: " << e.what() << '\n'
                  << hypercert::io::dumpJson(hypercert::io::toJson(e.certificate.cells[e.cellIndex]))
                  << '\n';
        Emitter(cfg).emit(hypercert::io::toJson(e.certificate), &e.certificate);
        return kExitFailure;
    }
}

int cmdCertify(const CliConfig& cfg, double eps, double R, double c, int maxDepth)
{
    const certify::CertifyParams p{eps, R};
    p.validate();
    certify::CertifyOptions opts;
    opts.maxDepth = maxDepth;
    opts.slack = cfg.slack;
    const auto outcome = certify::certifyLowerBound(p, c, opts);
    if (const auto* cert = std::get_if<certify::PartitionCertificate>(&outcome)) {
        json doc = hypercert::io::toJson(*cert);
        doc["target"] = c;
        Emitter(cfg).emit(doc, cert);
        return kExitOk;
    }
    const auto& failure = std::get<certify::CertifyFailure>(outcome);
    std::cerr << "certification failed: " << failure.message << '\n';
    json doc = {{"epsilon", eps}, {"R", R}, {"target", c}, {"failure", hypercert::io::toJson(failure)}};
    Emitter(cfg).emit(doc);
    return kExitFailure;
}

int cmdOptimize(const CliConfig& cfg, double eps, const std::string& gridText, double cTol, int maxDepth)
{
    std::vector<double> grid;
    if (gridText.empty()) {
        // interior of (2 eps, 5 eps / 2) in steps of 0.01
        const double lo = 2.0 * eps + 0.01;
        const double hi = 2.5 * eps - 0.01;
        const int count = static_cast<int>(std::floor((hi - lo) / 0.01 + 1e-9)) + 1;
        grid = certify::GridSpec{lo, lo + 0.01 * (count - 1), count}.points();
    } else if (gridText.find(':') != std::string::npos) {
        std::stringstream ss(gridText);
        std::string a, b, n;
        std::getline(ss, a, ':');
        std::getline(ss, b, ':');
        std::getline(ss, n, ':');
        const double count = parseReal(n, "grid");
        if (count < 1 || count != std::floor(count)) {
            throw InvalidInput("--grid: count must be a positive integer");
        }
        grid = certify::GridSpec{parseReal(a, "grid"), parseReal(b, "grid"), static_cast<int>(count)}
                   .points();
    } else {
        grid = parseList(gridText);
    }
    for (double R : grid) {
        certify::CertifyParams{eps, R}.validate();
    }
    certify::CertifyOptions opts;
    opts.slack = cfg.slack;
    opts.maxDepth = maxDepth;
    const auto result = certify::optimizeR(eps, grid, opts, cTol, quadConfig(cfg));
    for (const auto& gp : result.points) {
        if (!gp.ok) {
            std::cerr << "warning: R = " << gp.R << " skipped: " << gp.message << '\n';
        }
    }
    Emitter(cfg).emit(hypercert::io::toJson(result));
    return result.best ? kExitOk : kExitFailure;
}

int cmdBound(const CliConfig& cfg, double volume, bool cusped, long prime, const std::string& epsText,
             const std::string& rText, const std::string& cText)
{
    if (!(volume > 0.0)) {
        throw InvalidInput("--volume must be positive");
    }
    // 0 means no prime given: use the bound valid for every p
    if (prime != 0 && prime < 2) {
        throw InvalidInput("--prime must be a prime number");
    }
    for (long d = 2; d * d <= prime; ++d) {
        if (prime % d == 0) {
            throw InvalidInput("--prime must be a prime number");
        }
    }
    const auto quad = quadConfig(cfg);
    const auto h = bounds::homologyBound({volume, !cusped, prime == 2}, quad);

    json doc = {
        {"volume", volume},
        {"compact", !cusped},
        {"prime", prime == 0 ? json(nullptr) : json(prime)},
        {"coefficient", h.coefficient},
        {"homologyBound", h.bound},
        {"smallRankBound", h.smallRankBound},
    };

    bounds::RankBoundReport rep;
    if (epsText.empty() && rText.empty() && cText.empty()) {
        rep = bounds::paperReport(quad);
    } else {
        const certify::CertifyParams p{parseReal(epsText.empty() ? "log3" : epsText, "epsilon"),
                                       parseReal(rText.empty() ? "log3-paper" : rText, "R")};
        const double c = parseReal(cText.empty() ? "0.496" : cText, "c");
        p.validate();
        certify::CertifyOptions opts;
        opts.slack = cfg.slack;
        const auto outcome = certify::certifyLowerBound(p, c, opts);
        const auto* cert = std::get_if<certify::PartitionCertificate>(&outcome);
        if (!cert) {
            throw bounds::PreconditionError(
                bounds::Condition::kPhiExceedsC,
                "condition (a): " + std::get<certify::CertifyFailure>(outcome).message);
        }
        rep = bounds::rankReport(p.epsilon, p.R, c, *cert, quad);
    }
    doc["rank"] = hypercert::io::toJson(rep);
    doc["rankBound"] = 1.0 + volume * rep.rankCoefficient;
    Emitter(cfg).emit(doc);
    return kExitOk;
}

int cmdMcCheck(const CliConfig& cfg, const std::string& shape, const std::string& params)
{
    const auto check = hypercert::mc::crossCheck(shape, parseList(params), cfg.samples, cfg.seed);
    if (check.estimate.zeroHits) {
        std::cerr << "warning: no sample fell inside the region\n";
    }
    Emitter(cfg).emit(hypercert::io::toJson(check));
    return check.withinThreeSigma ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified hyperbolic volume bounds and Margulis-number rank estimates"};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->envname("HYPERCERT_FORMAT");
    app.add_option("--output,-o", cfg.output, "Output file (default stdout)")->envname("HYPERCERT_OUTPUT");
    app.add_option("--quad-tol", cfg.quadTolerance, "Absolute tolerance of the simplex-volume quadrature")
        ->check(CLI::PositiveNumber)
        ->envname("HYPERCERT_QUAD_TOL");
    app.add_option("--slack", cfg.slack, "Roundoff slack subtracted before positivity tests")
        ->check(CLI::NonNegativeNumber)
        ->envname("HYPERCERT_SLACK");
    app.add_option("--seed", cfg.seed, "Monte-Carlo seed")->envname("HYPERCERT_SEED");
    app.add_option("--samples", cfg.samples, "Monte-Carlo sample count")
        ->check(CLI::PositiveNumber)
        ->envname("HYPERCERT_SAMPLES");

    auto* constants = app.add_subcommand("constants", "Print the paper-parameter constants");
    auto* verify = app.add_subcommand("verify-lemma", "Verify the published 47-cell partition");

    std::string epsText = "log3", rText = "log3-paper", cText = "0.496";
    int maxDepth = 40;
    auto* cert = app.add_subcommand("certify", "Adaptively certify Phi > c on I");
    cert->add_option("--epsilon", epsText, "Margulis parameter (decimal or 'log3')");
    cert->add_option("--R", rText, "Valence radius (decimal or 'log3-paper')");
    cert->add_option("--c", cText, "Target constant");
    cert->add_option("--max-depth", maxDepth, "Maximum bisection depth")->check(CLI::NonNegativeNumber);

    std::string optEps = "log3", gridText;
    double cTol = 1e-5;
    auto* opt = app.add_subcommand("optimize", "Search R for the smallest valence bound");
    opt->add_option("--epsilon", optEps, "Margulis parameter (decimal or 'log3')");
    opt->add_option("--grid", gridText, "R grid as min:max:count or a comma list");
    opt->add_option("--c-tol", cTol, "Tolerance of the bisection on c")->check(CLI::PositiveNumber);
    opt->add_option("--max-depth", maxDepth, "Maximum bisection depth")->check(CLI::NonNegativeNumber);

    double volume = 0.0;
    std::string cuspedText = "false";
    long prime = 0;
    std::string bEps, bR, bC;
    auto* bound = app.add_subcommand("bound", "Homology and rank bounds for a given volume");
    bound->add_option("--volume", volume, "Volume of the manifold")->required();
    bound->add_option("--cusped", cuspedText, "true for a non-compact manifold");
    bound->add_option("--prime", prime, "Coefficient prime p (default: any prime)");
    bound->add_option("--epsilon", bEps, "Margulis number for a custom rank bound");
    bound->add_option("--R", bR, "Valence radius for a custom rank bound");
    bound->add_option("--c", bC, "Constant for a custom rank bound");

    std::string shape = "icecream", params;
    auto* mcCheck = app.add_subcommand("mc-check", "Compare a closed-form volume with Monte Carlo");
    mcCheck->add_option("--shape", shape, "ball, cap, lens, cone, icecream or phi");
    mcCheck->add_option("--params", params, "Comma-separated shape parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (constants->parsed()) {
            return cmdConstants(cfg);
        }
        if (verify->parsed()) {
            return cmdVerifyLemma(cfg);
        }
        if (cert->parsed()) {
            return cmdCertify(cfg, parseReal(epsText, "epsilon"), parseReal(rText, "R"),
                              parseReal(cText, "c"), maxDepth);
        }
        if (opt->parsed()) {
            return cmdOptimize(cfg, parseReal(optEps, "epsilon"), gridText, cTol, maxDepth);
        }
        if (bound->parsed()) {
            return cmdBound(cfg, volume, parseBool(cuspedText, "cusped"), prime, bEps, bR, bC);
        }
        if (mcCheck->parsed()) {
            return cmdMcCheck(cfg, shape, params);
        }
    } catch (const bounds::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const hypercert::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const hypercert::QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitInvalid;
}
