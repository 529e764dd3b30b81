#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "hypercert/certify.hpp"
#include "hypercert/serialize.hpp"
#include "oracles.hpp"

using namespace hypercert;
using hypercert::io::json;

namespace {

bool sameDouble(double a, double b)
{
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool sameCell(const certify::SubintervalCertificate& a, const certify::SubintervalCertificate& b)
{
    return sameDouble(a.dLo, b.dLo) && sameDouble(a.dHi, b.dHi) && sameDouble(a.hLo, b.hLo)
           && sameDouble(a.hHi, b.hHi) && sameDouble(a.sigmaLo, b.sigmaLo)
           && sameDouble(a.sigmaHi, b.sigmaHi) && sameDouble(a.psiLo, b.psiLo)
           && sameDouble(a.psiHi, b.psiHi) && sameDouble(a.wlensLo, b.wlensLo)
           && sameDouble(a.wconeLo, b.wconeLo) && sameDouble(a.phiLo, b.phiLo) && a.good == b.good
           && sameDouble(a.margins[0], b.margins[0]) && sameDouble(a.margins[1], b.margins[1])
           && sameDouble(a.margins[2], b.margins[2]);
}

double wild(testing::Gen& g)
{
    const double u = g.uniform(0.0, 1.0);
    if (u < 0.1) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double mantissa = g.uniform(-1.0, 1.0);
    return std::ldexp(mantissa, static_cast<int>(g.uniform(-60.0, 60.0)));
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("doubles keep 17 significant digits")
{
    CHECK(io::formatDouble(0.1) == "0.10000000000000001");
    CHECK(io::formatDouble(1.0) == "1.0");
    CHECK(io::formatDouble(std::nan("")) == "null");
    CHECK(io::formatDouble(INFINITY) == "null");
    testing::Gen g(21);
    for (int i = 0; i < 2000; ++i) {
        const double v = wild(g);
        if (std::isnan(v)) {
            continue;
        }
        CHECK(std::stod(io::formatDouble(v)) == v);
    }
    const std::string s = io::dumpJson(json{{"x", std::nan("")}, {"y", 2.5}}, -1);
    CHECK(s == "{\"x\":null,\"y\":2.5}");
}

TEST_CASE("partition certificates round-trip exactly")
{
    const auto paper = certify::paperPartition();
    for (int indent : {-1, 2}) {
        const auto back = io::certificateFromJson(json::parse(io::dumpJson(io::toJson(paper), indent)));
        REQUIRE(back.cells.size() == paper.cells.size());
        CHECK(back.params.epsilon == paper.params.epsilon);
        CHECK(back.params.R == paper.params.R);
        CHECK(back.slack == paper.slack);
        CHECK(back.certifiedC == paper.certifiedC);
        for (std::size_t i = 0; i < back.cells.size(); ++i) {
            CHECK(sameCell(back.cells[i], paper.cells[i]));
        }
    }

    testing::Gen g(22);
    for (int trial = 0; trial < 100; ++trial) {
        certify::PartitionCertificate cert;
        cert.params = {wild(g), wild(g)};
        cert.slack = std::abs(wild(g));
        cert.certifiedC = wild(g);
        const int n = static_cast<int>(g.uniform(0.0, 6.0));
        for (int i = 0; i < n; ++i) {
            certify::SubintervalCertificate c;
            c.dLo = wild(g);
            c.dHi = wild(g);
            c.hLo = wild(g);
            c.hHi = wild(g);
            c.sigmaLo = wild(g);
            c.sigmaHi = wild(g);
            c.psiLo = wild(g);
            c.psiHi = wild(g);
            c.wlensLo = wild(g);
            c.wconeLo = wild(g);
            c.phiLo = wild(g);
            c.good = g.uniform(0.0, 1.0) < 0.5;
            c.margins = {wild(g), wild(g), wild(g)};
            cert.cells.push_back(c);
        }
        const auto back = io::certificateFromJson(json::parse(io::dumpJson(io::toJson(cert))));
        REQUIRE(back.cells.size() == cert.cells.size());
        CHECK(sameDouble(back.certifiedC, cert.certifiedC));
        CHECK(sameDouble(back.params.R, cert.params.R));
        for (std::size_t i = 0; i < back.cells.size(); ++i) {
            CHECK(sameCell(back.cells[i], cert.cells[i]));
        }
    }
}

TEST_CASE("cells that are not good serialize their NaN fields as null")
{
    const auto p = certify::paperParams();
    const auto c = certify::phiLower(p, p.domainLo(), p.domainHi());
    const auto j = io::toJson(c);
    CHECK(j["sigmaLo"].is_null());
    CHECK(j["phiLo"].is_null());
    CHECK(j["good"] == false);
    CHECK(j["hLo"].is_number_float());
}

TEST_CASE("csv")
{
    const auto cert = certify::paperPartition();
    std::ostringstream os;
    io::writeCsv(os, cert);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == io::kCsvHeader);
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        int commas = 0;
        for (char ch : line) {
            commas += ch == ',';
        }
        CHECK(commas == 15);
        CHECK(line.find(",true,") != std::string::npos);
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    }
    CHECK(rows == 47);
}

}  // TEST_SUITE
