// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Replays the golden fixture against the fast library paths.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ybe/solutions.hpp"
#include "ybe/special_functions.hpp"

using namespace ybe;

namespace {

struct Record {
    std::string name;
    std::vector<cd> in;
    cd expected;
    double tol = 0.0;
};

std::vector<Record> load() {
    std::ifstream f(YBE_GOLDEN_FILE);
    REQUIRE(f.good());
    std::vector<Record> out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        Record r;
        size_t n = 0;
        ss >> r.name >> n;
        for (size_t k = 0; k < n; ++k) {
            double re = 0, im = 0;
            ss >> re >> im;
            r.in.emplace_back(re, im);
        }
        double re = 0, im = 0;
        ss >> re >> im >> r.tol;
        r.expected = {re, im};
        REQUIRE_FALSE(ss.fail());
        out.push_back(r);
    }
    return out;
}

Rational to_rational(double x) {
    for (int den = 1; den <= 12; ++den) {
        const double num = x * den;
        if (std::abs(num - std::round(num)) < 1e-12) return Rational(static_cast<std::int64_t>(std::round(num)), den);
    }
    FAIL("characteristic is not a small rational");
    return {};
}

cd evaluate(const Record& r) {
    const auto& in = r.in;
    if (r.name == "theta11") return theta11(in[0], ModularParam(in[1]));
    if (r.name == "theta11_prime0") return theta11_derivative_at_zero(ModularParam(in[0]));
    if (r.name == "kronecker_F") return kronecker_F(in[0], in[1], ModularParam(in[2]));
    if (r.name == "kronecker_F_char") {
        const Characteristic c{to_rational(in[0].real()), to_rational(in[1].real())};
        return kronecker_F_char(c, in[2], in[3], ModularParam(in[4]));
    }
    if (r.name == "weierstrass_zeta") return weierstrass_zeta(in[0], ModularParam(in[1]));
    if (r.name == "weierstrass_p") return weierstrass_p(in[0], ModularParam(in[1]));
    if (r.name == "eta1") return ModularParam(in[0]).eta1();
    if (r.name == "eta2") return ModularParam(in[0]).eta2();
    if (r.name == "zeta_char") {
        const Characteristic c{to_rational(in[0].real()), to_rational(in[1].real())};
        return zeta_char(c, in[2], ModularParam(in[3]));
    }
    if (r.name.rfind("eisenstein_G", 0) == 0) return eisenstein_G(r.name.back() - '0', ModularParam(in[0]));
    if (r.name == "klein_J") return klein_J(ModularParam(in[0]));
    if (r.name == "j_invariant") return j_invariant(ModularParam(in[0]));
    if (r.name.rfind("trig_aybe1_", 0) == 0) {
        const std::string idx = r.name.substr(11);
        const MatrixTensor2 t = eval_aybe(SolutionHandle::trig_aybe1(), in[0], in[1]);
        return t(idx[0] - '0', idx[1] - '0', idx[2] - '0', idx[3] - '0');
    }
    FAIL("unknown fixture record " << r.name);
    return 0.0;
}

}  // namespace

TEST_CASE("golden fixture matches the fast implementations") {
    const auto records = load();
    CHECK(records.size() > 80);
    for (const Record& r : records) {
        CAPTURE(r.name);
        const cd got = evaluate(r);
        const double err = std::abs(got - r.expected) / std::max(1.0, std::abs(r.expected));
        CHECK(err < r.tol);
    }
}
