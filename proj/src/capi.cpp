// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/ybe.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ybe/commands.hpp"
#include "ybe/errors.hpp"
#include "ybe/solutions.hpp"
#include "ybe/special_functions.hpp"
#include "ybe/verification.hpp"

struct ybe_handle {
    ybe::SolutionHandle h;
};

namespace {

thread_local std::string g_last_error;

ybe::cd to_cd(ybe_complex z) { return {z.re, z.im}; }
ybe_complex from_cd(ybe::cd z) { return {z.real(), z.imag()}; }

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
ybe_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return YBE_OK;
    } catch (const ybe::Error& e) {
        g_last_error = e.what();
        return static_cast<ybe_status>(static_cast<int>(e.code()));
    } catch (const nlohmann::json::exception& e) {
        g_last_error = e.what();
        return YBE_ERR_PARSE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return YBE_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return YBE_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (p == nullptr) throw ybe::InvalidArgument(std::string(what) + " must not be null");
}

void copy_tensor(const ybe::MatrixTensor2& t, ybe_complex* coeffs, size_t len) {
    need(coeffs, "coeffs");
    if (len != t.coeffs().size()) throw ybe::SizeMismatch("coefficient buffer must hold n^4 entries");
    for (size_t k = 0; k < len; ++k) coeffs[k] = from_cd(t.coeffs()[k]);
}

}  // namespace

extern "C" {

const char* ybe_version(void) { return "1.0.0"; }

const char* ybe_last_error(void) { return g_last_error.c_str(); }

void ybe_string_free(char* s) { std::free(s); }

ybe_status ybe_theta11(ybe_complex u, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::theta11(to_cd(u), ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_kronecker_F(ybe_complex u, ybe_complex v, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::kronecker_F(to_cd(u), to_cd(v), ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_kronecker_F_char(int64_t p_num, int64_t p_den, int64_t q_num, int64_t q_den, ybe_complex u,
                                ybe_complex v, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        const ybe::Characteristic c{ybe::Rational(p_num, p_den), ybe::Rational(q_num, q_den)};
        *out = from_cd(ybe::kronecker_F_char(c, to_cd(u), to_cd(v), ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_weierstrass_zeta(ybe_complex x, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::weierstrass_zeta(to_cd(x), ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_weierstrass_p(ybe_complex x, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::weierstrass_p(to_cd(x), ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_eisenstein_G(int k, ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::eisenstein_G(k, ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_j_invariant(ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::j_invariant(ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_klein_J(ybe_complex tau, ybe_complex* out) {
    return guarded([&] {
        need(out, "out");
        *out = from_cd(ybe::klein_J(ybe::ModularParam(to_cd(tau))));
    });
}

ybe_status ybe_handle_from_json(const char* descriptor, ybe_handle** out) {
    return guarded([&] {
        need(descriptor, "descriptor");
        need(out, "out");
        *out = nullptr;
        const auto j = nlohmann::json::parse(descriptor);
        *out = new ybe_handle{ybe::handle_from_json(j)};
    });
}

ybe_status ybe_handle_to_json(const ybe_handle* h, char** out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        *out = dup_string(ybe::handle_to_json(h->h).dump());
    });
}

ybe_status ybe_handle_rescale(const ybe_handle* h, ybe_complex c1, ybe_complex c2, ybe_complex c3, ybe_complex c4,
                              ybe_handle** out) {
    return guarded([&] {
        need(h, "handle");
        need(out, "out");
        *out = new ybe_handle{h->h.with_rescale({to_cd(c1), to_cd(c2), to_cd(c3), to_cd(c4)})};
    });
}

void ybe_handle_free(ybe_handle* h) { delete h; }

int ybe_handle_n(const ybe_handle* h) { return h == nullptr ? 0 : h->h.n(); }

int ybe_handle_is_cybe(const ybe_handle* h) { return h != nullptr && h->h.is_cybe() ? 1 : 0; }

ybe_status ybe_eval_aybe(const ybe_handle* h, ybe_complex u, ybe_complex v, ybe_complex* coeffs, size_t len) {
    return guarded([&] {
        need(h, "handle");
        copy_tensor(ybe::eval_aybe(h->h, to_cd(u), to_cd(v)), coeffs, len);
    });
}

ybe_status ybe_eval_cybe(const ybe_handle* h, ybe_complex v, ybe_complex* coeffs, size_t len) {
    return guarded([&] {
        need(h, "handle");
        copy_tensor(ybe::eval_cybe(h->h, to_cd(v)), coeffs, len);
    });
}

ybe_status ybe_aybe_residual(const ybe_handle* h, ybe_complex u, ybe_complex up, ybe_complex v, ybe_complex vp,
                             double* rel) {
    return guarded([&] {
        need(h, "handle");
        need(rel, "rel");
        *rel = ybe::aybe_residual_scaled(h->h, to_cd(u), to_cd(up), to_cd(v), to_cd(vp)).relative();
    });
}

ybe_status ybe_cybe_residual(const ybe_handle* h, ybe_complex v, ybe_complex vp, double* rel) {
    return guarded([&] {
        need(h, "handle");
        need(rel, "rel");
        *rel = ybe::cybe_residual_scaled(h->h, to_cd(v), to_cd(vp)).relative();
    });
}

ybe_status ybe_command(const char* name, const char* request, char** response, int* exit_code) {
    return guarded([&] {
        need(name, "name");
        need(request, "request");
        need(response, "response");
        *response = nullptr;
        const auto req = nlohmann::json::parse(request);
        const auto res = ybe::run_command(name, req);
        if (exit_code != nullptr) *exit_code = res.value("status", 0);
        *response = dup_string(res.dump(2));
    });
}

}  // extern "C"
