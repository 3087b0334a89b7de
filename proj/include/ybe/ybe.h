/*
 * Copyright (c) 2026 The ybe authors
 * SPDX-License-Identifier: MIT
 *
 * C interface to the ybe library. All functions return a ybe_status; on
 * failure a message is available from ybe_last_error() on the same thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with ybe_string_free().
 */
#ifndef YBE_YBE_H
#define YBE_YBE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define YBE_API __declspec(dllexport)
#else
#define YBE_API __attribute__((visibility("default")))
#endif

typedef enum ybe_status {
    YBE_OK = 0,
    YBE_ERR_INVALID_ARGUMENT = 1,
    YBE_ERR_POLE = 2,
    YBE_ERR_DOMAIN = 3,
    YBE_ERR_SIZE_MISMATCH = 4,
    YBE_ERR_NOT_CONVERGENT = 5,
    YBE_ERR_SINGULAR = 6,
    YBE_ERR_PARSE = 7,
    YBE_ERR_INTERNAL = 8
} ybe_status;

typedef struct ybe_complex {
    double re;
    double im;
} ybe_complex;

typedef struct ybe_handle ybe_handle;

YBE_API const char* ybe_version(void);
YBE_API const char* ybe_last_error(void);
YBE_API void ybe_string_free(char* s);

/* Special functions on the lattice Z + Z tau. */
YBE_API ybe_status ybe_theta11(ybe_complex u, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_kronecker_F(ybe_complex u, ybe_complex v, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_kronecker_F_char(int64_t p_num, int64_t p_den, int64_t q_num, int64_t q_den,
                                        ybe_complex u, ybe_complex v, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_weierstrass_zeta(ybe_complex x, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_weierstrass_p(ybe_complex x, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_eisenstein_G(int k, ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_j_invariant(ybe_complex tau, ybe_complex* out);
YBE_API ybe_status ybe_klein_J(ybe_complex tau, ybe_complex* out);

/* Solution handles. `descriptor` is the JSON handle record. */
YBE_API ybe_status ybe_handle_from_json(const char* descriptor, ybe_handle** out);
YBE_API ybe_status ybe_handle_to_json(const ybe_handle* h, char** out);
YBE_API ybe_status ybe_handle_rescale(const ybe_handle* h, ybe_complex c1, ybe_complex c2, ybe_complex c3,
                                      ybe_complex c4, ybe_handle** out);
YBE_API void ybe_handle_free(ybe_handle* h);
YBE_API int ybe_handle_n(const ybe_handle* h);
YBE_API int ybe_handle_is_cybe(const ybe_handle* h);

/* Writes n^4 coefficients in (i, j, i', j') row-major order. */
YBE_API ybe_status ybe_eval_aybe(const ybe_handle* h, ybe_complex u, ybe_complex v, ybe_complex* coeffs,
                                 size_t len);
YBE_API ybe_status ybe_eval_cybe(const ybe_handle* h, ybe_complex v, ybe_complex* coeffs, size_t len);

/* Relative AYBE residual at one quadruple, CYBE residual at one pair. */
YBE_API ybe_status ybe_aybe_residual(const ybe_handle* h, ybe_complex u, ybe_complex up, ybe_complex v,
                                     ybe_complex vp, double* rel);
YBE_API ybe_status ybe_cybe_residual(const ybe_handle* h, ybe_complex v, ybe_complex vp, double* rel);

/*
 * JSON commands: "eval", "verify", "classify", "oracle", "sweep". On success
 * *response holds the JSON result and *exit_code is 0 (all checks passed)
 * or 1 (some check failed).
 */
YBE_API ybe_status ybe_command(const char* name, const char* request, char** response, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* YBE_YBE_H */
