// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ybe/errors.hpp"
#include "ybe/verification.hpp"

using namespace ybe;

namespace {

const cd I{0.0, 1.0};

MatrixTensor2 hh() {
    const std::vector<cd> h{1.0, 0.0, 0.0, -1.0};
    return MatrixTensor2::outer(2, h, h);
}

MatrixTensor2 random_tensor(int n, std::uint64_t seed, double eps) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    MatrixTensor2 t(n);
    for (cd& z : t.coeffs()) z = eps * cd(g(rng), g(rng));
    return t;
}

const ResidualReport& find(const std::vector<ResidualReport>& reps, const std::string& tag) {
    for (const auto& r : reps)
        if (r.tag == tag) return r;
    FAIL("missing report " << tag);
    return reps.front();
}

}  // namespace

TEST_CASE("scalar Kronecker identity") {
    const auto h = SolutionHandle::scalar_kronecker(I);
    const cd u{0.13, 0.05}, up{-0.21, 0.11}, v{0.3, -0.08}, vp{0.02, 0.19};
    const Residual3 r = aybe_residual_scaled(h, u, up, v, vp);
    CHECK(r.value.max_abs() < 1e-9);
    CHECK(r.relative() < 1e-9);
}

TEST_CASE("elliptic AYBE at seeded quadruples") {
    SamplingConfig cfg;
    cfg.samples = 10;
    const auto rep = aybe_report(SolutionHandle::elliptic_aybe(2, 1, I), cfg);
    CHECK(rep.points.size() == 10);
    CHECK(rep.max_rel < 1e-8);
    CHECK(rep.pass);
}

TEST_CASE("zero tensor has zero residual") {
    const auto h = SolutionHandle::constant(MatrixTensor2(2));
    CHECK(aybe_residual(h, 0.1, 0.2, 0.3, 0.4).max_abs() == 0.0);
}

TEST_CASE("CYBE residuals") {
    CHECK(cybe_residual(SolutionHandle::trig_cybe1(), 0.3, 0.45).max_abs() < 1e-10);
    SamplingConfig cfg;
    const auto rep = cybe_report(SolutionHandle::elliptic_cybe(3, 1, I), cfg);
    CHECK(rep.max_rel < 1e-8);
    CHECK(rep.points.size() == 25);
}

// Printed second sl_2 CYBE matrix; not a solution as printed.
TEST_CASE("printed second sl_2 CYBE matrix solves the CYBE" * doctest::should_fail()) {
    CHECK(cybe_residual(SolutionHandle::trig_cybe2(), cd(0.2, 0.1), 0.33).max_abs() < 1e-10);
}

TEST_CASE("unitarity counterexample") {
    const auto h = SolutionHandle::constant(hh());
    const MatrixTensor2 res = unitarity_residual(h, 0.3, 0.2);
    CHECK((res - 2.0 * hh()).max_abs() == 0.0);
    SamplingConfig cfg;
    CHECK_FALSE(unitarity_report(h, cfg).pass);
}

TEST_CASE("nondegeneracy") {
    const std::vector<std::pair<cd, cd>> pts = {
        {0.13, 0.21}, {cd(0.1, 0.2), -0.17}, {-0.3, cd(0.05, 0.2)}, {cd(0.2, -0.1), 0.31}, {0.07, cd(-0.2, -0.1)}};
    CHECK(nondegeneracy_check(SolutionHandle::elliptic_aybe(2, 1, I), pts).pass);
    CHECK(nondegeneracy_check(SolutionHandle::elliptic_aybe(3, 1, I), pts).pass);
    CHECK(nondegeneracy_check(SolutionHandle::trig_aybe1(), pts).pass);
    CHECK(nondegeneracy_check(SolutionHandle::trig_aybe2(), pts).pass);
    CHECK(nondegeneracy_check(SolutionHandle::elliptic_cybe(3, 1, I), pts).pass);
    const auto bad = nondegeneracy_check(SolutionHandle::constant(MatrixTensor2::identity(2)), pts);
    CHECK_FALSE(bad.pass);
    CHECK(bad.note.find("rank 1") != std::string::npos);
}

TEST_CASE("commutator form before the limit") {
    SamplingConfig cfg;
    for (const auto& h : {SolutionHandle::elliptic_aybe(2, 1, I), SolutionHandle::elliptic_aybe(3, 1, cd(0.5, 0.9)),
                          SolutionHandle::trig_aybe1()}) {
        CHECK(commutator_report(h, cfg).max_rel < 1e-8);
    }
}

TEST_CASE("every shipped solution satisfies its equation") {
    SamplingConfig cfg;
    for (const auto& h : {SolutionHandle::elliptic_aybe(1, 1, I), SolutionHandle::elliptic_aybe(2, 1, cd(0.5, 0.9)),
                          SolutionHandle::elliptic_aybe(3, 2, I), SolutionHandle::trig_aybe1(),
                          SolutionHandle::scalar_kronecker(cd(0.6, 1.1)), SolutionHandle::scalar_trig(),
                          SolutionHandle::scalar_rational(cd(1.0, 0.5), -2.0)}) {
        CAPTURE(family_tag(h.family()));
        CHECK(aybe_report(h, cfg).max_rel < 1e-8);
    }
    for (const auto& h : {SolutionHandle::elliptic_cybe(2, 1, I), SolutionHandle::trig_cybe1()}) {
        CHECK(cybe_report(h, cfg).max_rel < 1e-8);
    }
}

TEST_CASE("printed second sl_2 AYBE matrix solves the AYBE" * doctest::should_fail()) {
    SamplingConfig cfg;
    CHECK(aybe_report(SolutionHandle::trig_aybe2(), cfg).max_rel < 1e-8);
}

TEST_CASE("suites") {
    SamplingConfig cfg;
    for (const auto& h : {SolutionHandle::scalar_kronecker(I), SolutionHandle::scalar_trig()}) {
        for (const auto& rep : run_suite(h, cfg)) {
            CAPTURE(rep.tag);
            CHECK(rep.pass);
        }
    }
    const auto base = SolutionHandle::elliptic_aybe(2, 1, I);
    const auto perturbed = base.with_perturbation(random_tensor(2, 3, 1e-3));
    const auto reps = run_suite(perturbed, cfg);
    CHECK_FALSE(find(reps, "aybe").pass);

    cfg.checks = {"unitarity"};
    const auto only = run_suite(base, cfg);
    CHECK(only.size() == 1);
    CHECK(only.front().tag == "unitarity");
}

TEST_CASE("reports are deterministic in the seed") {
    SamplingConfig cfg;
    const auto h = SolutionHandle::trig_aybe1();
    const auto a = to_json(aybe_report(h, cfg)).dump();
    const auto b = to_json(aybe_report(h, cfg)).dump();
    CHECK(a == b);
    cfg.seed = 7;
    CHECK(to_json(aybe_report(h, cfg)).dump() != a);
}

TEST_CASE("samples avoid the excluded set") {
    SamplingConfig cfg;
    const auto h = SolutionHandle::elliptic_aybe(3, 1, I);
    for (const auto& q : sample_aybe_points(h, cfg, 50)) {
        const cd u = q[0], up = q[1], v = q[2], vp = q[3];
        for (auto [a, b] : {std::pair{-up, v}, {u + up, v + vp}, {u + up, vp}, {u, v}, {u, v + vp}, {up, vp}}) {
            CHECK(h.domain_distance(a, b) >= cfg.reject);
        }
    }
}
