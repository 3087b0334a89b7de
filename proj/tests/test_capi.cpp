// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "ybe/ybe.h"

namespace {

const ybe_complex kI{0.0, 1.0};

ybe_handle* make(const char* json) {
    ybe_handle* h = nullptr;
    REQUIRE(ybe_handle_from_json(json, &h) == YBE_OK);
    REQUIRE(h != nullptr);
    return h;
}

double cabs(ybe_complex z) { return std::hypot(z.re, z.im); }

}  // namespace

TEST_CASE("version string") { CHECK(std::strlen(ybe_version()) > 0); }

TEST_CASE("special functions") {
    ybe_complex out{};
    CHECK(ybe_theta11({0.0, 0.0}, kI, &out) == YBE_OK);
    CHECK(cabs(out) < 1e-14);
    CHECK(ybe_klein_J(kI, &out) == YBE_OK);
    CHECK(std::abs(out.re - 1.0) < 1e-10);
    CHECK(ybe_j_invariant(kI, &out) == YBE_OK);
    CHECK(std::abs(out.re - 1728.0) < 1e-7);
    CHECK(ybe_eisenstein_G(4, kI, &out) == YBE_OK);
    CHECK(out.re > 0.0);
    CHECK(ybe_kronecker_F({0.2, 0.1}, {0.3, -0.1}, kI, &out) == YBE_OK);
    CHECK(ybe_kronecker_F_char(1, 2, 0, 1, {0.2, 0.1}, {0.3, -0.1}, kI, &out) == YBE_OK);
    CHECK(ybe_weierstrass_p({0.3, 0.2}, kI, &out) == YBE_OK);
    CHECK(ybe_weierstrass_zeta({0.3, 0.2}, kI, &out) == YBE_OK);
}

TEST_CASE("error codes and last error") {
    ybe_complex out{};
    CHECK(ybe_weierstrass_p({0.0, 0.0}, kI, &out) == YBE_ERR_POLE);
    CHECK(std::strlen(ybe_last_error()) > 0);
    CHECK(ybe_theta11({0.1, 0.0}, {0.0, -1.0}, &out) == YBE_ERR_DOMAIN);
    CHECK(ybe_theta11({0.1, 0.0}, kI, nullptr) == YBE_ERR_INVALID_ARGUMENT);
    CHECK(ybe_theta11({0.1, 0.0}, kI, &out) == YBE_OK);
    CHECK(std::strlen(ybe_last_error()) == 0);

    ybe_handle* h = nullptr;
    CHECK(ybe_handle_from_json("{not json", &h) == YBE_ERR_PARSE);
    CHECK(h == nullptr);
    CHECK(ybe_handle_from_json("{\"family\": \"elliptic-aybe\", \"d\": 2, \"r\": 2}", &h) ==
          YBE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("handles evaluate and serialize") {
    ybe_handle* h = make("{\"family\": \"elliptic-aybe\", \"d\": 2, \"r\": 1, \"tau\": [0, 1]}");
    CHECK(ybe_handle_n(h) == 2);
    CHECK(ybe_handle_is_cybe(h) == 0);
    std::vector<ybe_complex> buf(16);
    CHECK(ybe_eval_aybe(h, {0.2, 0.1}, {0.3, -0.05}, buf.data(), buf.size()) == YBE_OK);
    CHECK(ybe_eval_aybe(h, {0.2, 0.1}, {0.3, -0.05}, buf.data(), 15) == YBE_ERR_SIZE_MISMATCH);
    CHECK(ybe_eval_aybe(h, {0.0, 0.0}, {0.3, -0.05}, buf.data(), buf.size()) == YBE_ERR_POLE);
    CHECK(ybe_eval_cybe(h, {0.3, 0.0}, buf.data(), buf.size()) == YBE_ERR_INVALID_ARGUMENT);

    double rel = -1.0;
    CHECK(ybe_aybe_residual(h, {0.21, 0.05}, {-0.13, 0.11}, {0.17, -0.08}, {0.09, 0.14}, &rel) == YBE_OK);
    CHECK(rel >= 0.0);
    CHECK(rel < 1e-8);

    char* text = nullptr;
    REQUIRE(ybe_handle_to_json(h, &text) == YBE_OK);
    ybe_handle* back = make(text);
    std::vector<ybe_complex> buf2(16);
    CHECK(ybe_eval_aybe(back, {0.2, 0.1}, {0.3, -0.05}, buf2.data(), buf2.size()) == YBE_OK);
    for (size_t k = 0; k < 16; ++k) CHECK(cabs({buf[k].re - buf2[k].re, buf[k].im - buf2[k].im}) == 0.0);
    ybe_string_free(text);

    ybe_handle* scaled = nullptr;
    REQUIRE(ybe_handle_rescale(h, {2.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, &scaled) == YBE_OK);
    CHECK(ybe_eval_aybe(scaled, {0.2, 0.1}, {0.3, -0.05}, buf2.data(), buf2.size()) == YBE_OK);
    for (size_t k = 0; k < 16; ++k) CHECK(std::abs(buf2[k].re - 2.0 * buf[k].re) < 1e-12);

    ybe_handle_free(scaled);
    ybe_handle_free(back);
    ybe_handle_free(h);
    ybe_handle_free(nullptr);
}

TEST_CASE("CYBE handles") {
    ybe_handle* h = make("{\"family\": \"trig-cybe1\"}");
    CHECK(ybe_handle_is_cybe(h) == 1);
    std::vector<ybe_complex> buf(16);
    CHECK(ybe_eval_cybe(h, {std::log(2.0), 0.0}, buf.data(), buf.size()) == YBE_OK);
    CHECK(std::abs(buf[0].re + 0.75) < 1e-12);
    double rel = -1.0;
    CHECK(ybe_cybe_residual(h, {0.3, 0.1}, {-0.2, 0.25}, &rel) == YBE_OK);
    CHECK(rel < 1e-10);
    ybe_handle_free(h);
}

TEST_CASE("JSON commands") {
    char* resp = nullptr;
    int code = -1;
    CHECK(ybe_command("classify", "{\"handle\": {\"family\": \"scalar-trig\"}}", &resp, &code) == YBE_OK);
    REQUIRE(resp != nullptr);
    CHECK(code == 0);
    CHECK(std::string(resp).find("trigonometric-like") != std::string::npos);
    ybe_string_free(resp);

    resp = nullptr;
    CHECK(ybe_command("verify", "{\"handle\": {\"family\": \"trig-aybe1\"}, \"perturb\": 0.001, \"samples\": 5}",
                      &resp, &code) == YBE_OK);
    CHECK(code == 1);
    ybe_string_free(resp);

    resp = nullptr;
    CHECK(ybe_command("nope", "{}", &resp, &code) == YBE_ERR_INVALID_ARGUMENT);
    CHECK(resp == nullptr);
    CHECK(ybe_command("eval", "[1, 2", &resp, &code) == YBE_ERR_PARSE);
    CHECK(ybe_command(nullptr, "{}", &resp, &code) == YBE_ERR_INVALID_ARGUMENT);
}
