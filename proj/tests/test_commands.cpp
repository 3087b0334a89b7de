// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "ybe/commands.hpp"
#include "ybe/errors.hpp"

using json = nlohmann::json;
using ybe::run_command;

namespace {

std::complex<double> cz(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

}  // namespace

TEST_CASE("eval of the trigonometric CYBE solution") {
    const json out = run_command("eval", {{"handle", {{"family", "trig-cybe1"}}}, {"points", {std::log(2.0)}}});
    REQUIRE(out.at("results").size() == 1);
    const json& t = out["results"][0]["tensor"];
    CHECK(t.at("n") == 2);
    // Leading coefficient at mu = 2.
    CHECK(std::abs(cz(t["coeffs"][0]) - (-0.75)) < 1e-12);
}

TEST_CASE("eval of the rational scalar solution") {
    const json req{{"handle", {{"family", "scalar-rational"}, {"a", {1.0, 0.0}}, {"b", {1.0, 0.0}}}},
                   {"points", {{0.5, 0.2}}}};
    const json out = run_command("eval", req);
    CHECK(std::abs(cz(out["results"][0]["tensor"]["coeffs"][0]) - 7.0) < 1e-12);
}

TEST_CASE("eval reports poles per point") {
    const json req{{"handle", {{"family", "trig-aybe1"}}}, {"points", {{0.0, 0.3}, {0.2, 0.3}}}};
    const json out = run_command("eval", req);
    CHECK(out["results"][0].contains("error"));
    CHECK(out["results"][1].contains("tensor"));
}

TEST_CASE("verify exit status follows the checks") {
    const json good{{"handle", {{"family", "elliptic-aybe"}, {"d", 2}, {"r", 1}, {"tau", {0.0, 1.0}}}},
                    {"samples", 10}};
    CHECK(run_command("verify", good)["status"] == 0);
    json bad = good;
    bad["perturb"] = 1e-3;
    const json out = run_command("verify", bad);
    CHECK(out["status"] == 1);
    CHECK(out["pass"] == false);
    json only = good;
    only["checks"] = {"unitarity"};
    const json u = run_command("verify", only);
    CHECK(u["reports"].size() == 1);
    CHECK(u["status"] == 0);
}

TEST_CASE("verify is deterministic for a fixed seed") {
    const json req{{"handle", {{"family", "trig-aybe1"}}}, {"samples", 6}, {"seed", 11}};
    CHECK(run_command("verify", req).dump() == run_command("verify", req).dump());
}

TEST_CASE("classify attaches modular data to Kronecker handles") {
    const json out = run_command("classify", {{"handle", {{"family", "scalar-kronecker"}, {"tau", {0.0, 2.0}}}}});
    CHECK(out["classification"]["verdict"] == "elliptic-like");
    CHECK(out["modular"]["C_deviation"].get<double>() < 1e-6);
    const json t = run_command("classify", {{"handle", {{"family", "scalar-trig"}}}});
    CHECK(std::abs(cz(t["classification"]["C"]) + 20.0 / 49.0) < 1e-10);
    CHECK_FALSE(t.contains("modular"));
}

TEST_CASE("oracle status and negative control") {
    CHECK(run_command("oracle", {{"case", 1}})["status"] == 0);
    CHECK(run_command("oracle", {{"case", 2}})["status"] == 0);
    const json neg = run_command("oracle", {{"case", 2}, {"trivialization", "constant"}});
    CHECK(neg["status"] == 0);
    CHECK(neg["lambda_mu_dependence_failure"] == true);
    CHECK_THROWS_AS(run_command("oracle", {{"trivialization", "cubic"}}), ybe::InvalidArgument);
}

TEST_CASE("sweep of C approaches the trigonometric value") {
    const json out = run_command("sweep", {{"quantity", "C"}, {"grid", {{"start", {0.0, 1.0}}, {"stop", {0.0, 3.0}}, {"count", 5}}}});
    const json& rows = out["rows"];
    REQUIRE(rows.size() == 5);
    double prev = 1e9;
    for (const json& r : rows) {
        const double d = r["distance_to_trig"].get<double>();
        CHECK(d < prev);
        prev = d;
        CHECK(r["j_deviation"].get<double>() < 1e-6);
    }
}

TEST_CASE("sweep of rank and unitarity") {
    const json h{{"family", "elliptic-aybe"}, {"d", 2}, {"r", 1}, {"tau", {0.0, 1.0}}};
    const json rank = run_command("sweep", {{"quantity", "rank"}, {"handle", h}, {"grid", {0.11, 0.23, {0.2, -0.15}}}});
    for (const json& r : rank["rows"]) CHECK(r["rank"] == 4);
    const json uni = run_command("sweep", {{"quantity", "unitarity"}, {"handle", h}, {"grid", {0.11, 0.23}}});
    for (const json& r : uni["rows"]) CHECK(r["unitarity_residual"].get<double>() < 1e-10);
}

TEST_CASE("malformed requests") {
    CHECK_THROWS_AS(run_command("frobnicate", json::object()), ybe::InvalidArgument);
    CHECK_THROWS_AS(run_command("eval", json::object()), ybe::ParseError);
    CHECK_THROWS_AS(run_command("eval", {{"handle", {{"family", "trig-aybe1"}}}}), ybe::InvalidArgument);
    CHECK_THROWS_AS(run_command("verify", {{"handle", {{"family", "no-such-family"}}}}), ybe::Error);
    CHECK_THROWS_AS(run_command("sweep", {{"quantity", "volume"}, {"grid", {1.0}}}), ybe::InvalidArgument);
    CHECK_THROWS_AS(run_command("eval", {{"handle", {{"family", "trig-aybe1"}}}, {"points", json::array({json{{"x", 1}}})}}),
                    ybe::ParseError);
}
