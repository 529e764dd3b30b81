#include "hypercert/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace hypercert::io {

namespace {

double numberOrNaN(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json finiteOrNull(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

void emit(std::string& out, const json& j, int indent, int level)
{
    const auto newline = [&](int lvl) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * lvl), ' ');
        }
    };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ',';
            }
            first = false;
            newline(level + 1);
            out += json(it.key()).dump();
            out += indent >= 0 ? ": " : ":";
            emit(out, it.value(), indent, level + 1);
        }
        newline(level);
        out += '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                out += ',';
            }
            newline(level + 1);
            emit(out, j[i], indent, level + 1);
        }
        newline(level);
        out += ']';
        return;
    }
    case json::value_t::number_float:
        out += formatDouble(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

}  // namespace

std::string formatDouble(double v)
{
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // keep it a JSON float so that it reads back as one
    if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::string dumpJson(const json& j, int indent)
{
    std::string out;
    emit(out, j, indent, 0);
    return out;
}

json toJson(const certify::SubintervalCertificate& c)
{
    return {
        {"dLo", finiteOrNull(c.dLo)},
        {"dHi", finiteOrNull(c.dHi)},
        {"hLo", finiteOrNull(c.hLo)},
        {"hHi", finiteOrNull(c.hHi)},
        {"sigmaLo", finiteOrNull(c.sigmaLo)},
        {"sigmaHi", finiteOrNull(c.sigmaHi)},
        {"psiLo", finiteOrNull(c.psiLo)},
        {"psiHi", finiteOrNull(c.psiHi)},
        {"wlensLo", finiteOrNull(c.wlensLo)},
        {"wconeLo", finiteOrNull(c.wconeLo)},
        {"phiLo", finiteOrNull(c.phiLo)},
        {"good", c.good},
        {"margins", {finiteOrNull(c.margins[0]), finiteOrNull(c.margins[1]), finiteOrNull(c.margins[2])}},
    };
}

json toJson(const certify::PartitionCertificate& cert)
{
    json cells = json::array();
    for (const auto& c : cert.cells) {
        cells.push_back(toJson(c));
    }
    return {
        {"epsilon", cert.params.epsilon},
        {"R", cert.params.R},
        {"slack", cert.slack},
        {"cells", std::move(cells)},
        {"certifiedC", finiteOrNull(cert.certifiedC)},
        {"cellCount", cert.cells.size()},
    };
}

json toJson(const certify::CertifyFailure& f)
{
    static const char* kinds[] = {"depth-exhausted", "target-exceeds-phi", "too-many-cells"};
    json j = {
        {"kind", kinds[static_cast<int>(f.kind)]},
        {"message", f.message},
        {"depth", f.depth},
        {"worstCell", toJson(f.worstCell)},
    };
    if (f.witnessPoint) {
        j["witnessPoint"] = *f.witnessPoint;
        j["witnessValue"] = *f.witnessValue;
    }
    return j;
}

json toJson(const certify::OptimizeResult& r)
{
    json pts = json::array();
    for (const auto& gp : r.points) {
        json p = {{"R", gp.R}, {"ok", gp.ok}};
        if (gp.ok) {
            p["certifiedC"] = gp.certifiedC;
            p["quotient"] = gp.quotient;
            p["valenceBound"] = gp.valenceBound;
            p["cellCount"] = gp.cellCount;
        } else {
            p["message"] = gp.message;
        }
        pts.push_back(std::move(p));
    }
    json j = {{"epsilon", r.epsilon}, {"bHalfEps", r.bHalfEps}, {"points", std::move(pts)}};
    if (r.best) {
        const auto& b = r.points[*r.best];
        j["best"] = {{"R", b.R}, {"certifiedC", b.certifiedC}, {"valenceBound", b.valenceBound}};
    } else {
        j["best"] = nullptr;
    }
    return j;
}

json toJson(const bounds::RankBoundReport& r)
{
    return {
        {"epsilon", r.epsilon},
        {"R", r.R},
        {"c", r.c},
        {"bHalfEps", r.bHalfEps},
        {"ballR", r.ballR},
        {"ballHalfEps", r.ballHalfEps},
        {"quotient", r.quotient},
        {"valenceBound", r.valenceBound},
        {"rankCoefficient", r.rankCoefficient},
        {"quadratureTolerance", r.quadratureTolerance},
    };
}

json toJson(const mc::CrossCheck& c)
{
    return {
        {"shape", c.shape},
        {"params", c.params},
        {"closedForm", c.closedForm},
        {"mean", c.estimate.mean},
        {"standardError", c.estimate.standardError},
        {"samples", c.estimate.samples},
        {"seed", c.estimate.seed},
        {"hits", c.estimate.hits},
        {"zScore", finiteOrNull(c.zScore)},
        {"withinThreeSigma", c.withinThreeSigma},
    };
}

certify::PartitionCertificate certificateFromJson(const json& j)
{
    certify::PartitionCertificate cert;
    cert.params = {numberOrNaN(j.at("epsilon")), numberOrNaN(j.at("R"))};
    cert.slack = numberOrNaN(j.at("slack"));
    cert.certifiedC = numberOrNaN(j.at("certifiedC"));
    for (const auto& jc : j.at("cells")) {
        certify::SubintervalCertificate c;
        c.dLo = numberOrNaN(jc.at("dLo"));
        c.dHi = numberOrNaN(jc.at("dHi"));
        c.hLo = numberOrNaN(jc.at("hLo"));
        c.hHi = numberOrNaN(jc.at("hHi"));
        c.sigmaLo = numberOrNaN(jc.at("sigmaLo"));
        c.sigmaHi = numberOrNaN(jc.at("sigmaHi"));
        c.psiLo = numberOrNaN(jc.at("psiLo"));
        c.psiHi = numberOrNaN(jc.at("psiHi"));
        c.wlensLo = numberOrNaN(jc.at("wlensLo"));
        c.wconeLo = numberOrNaN(jc.at("wconeLo"));
        c.phiLo = numberOrNaN(jc.at("phiLo"));
        c.good = jc.at("good").get<bool>();
        for (std::size_t k = 0; k < 3; ++k) {
            c.margins[k] = numberOrNaN(jc.at("margins").at(k));
        }
        cert.cells.push_back(c);
    }
    if (j.at("cellCount").get<std::size_t>() != cert.cells.size()) {
        throw std::runtime_error("certificate cellCount does not match its cells");
    }
    return cert;
}

void writeCsv(std::ostream& os, const certify::PartitionCertificate& cert)
{
    os << kCsvHeader << '\n';
    std::size_t i = 0;
    for (const auto& c : cert.cells) {
        const auto f = [](double v) { return std::isfinite(v) ? formatDouble(v) : std::string(); };
        os << ++i << ',' << f(c.dLo) << ',' << f(c.dHi) << ',' << f(c.hLo) << ',' << f(c.hHi) << ','
           << f(c.sigmaLo) << ',' << f(c.sigmaHi) << ',' << f(c.psiLo) << ',' << f(c.psiHi) << ','
           << f(c.wlensLo) << ',' << f(c.wconeLo) << ',' << f(c.phiLo) << ','
           << (c.good ? "true" : "false") << ',' << f(c.margins[0]) << ',' << f(c.margins[1]) << ','
           << f(c.margins[2]) << '\n';
    }
}

}  // namespace hypercert::io
