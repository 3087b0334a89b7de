// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Jacobi theta function theta_11, the Kronecker function and its twisted
// variants, Weierstrass zeta and wp for the lattice Z + Z tau, Eisenstein
// series and the j-invariant. Everything is double precision and works in
// lattice-reduced coordinates.

#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace ybe {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cd kTwoPiI{0.0, 2.0 * kPi};

// Tunable numerical knobs. The defaults are what the test suite pins.
struct SpecialConfig {
    double series_tol = 1e-18;  // relative cutoff for theta and q-series terms
    double pole_eps = 1e-6;     // pole guard, in lattice-reduced coordinates
};

const SpecialConfig& special_config();
void set_special_config(const SpecialConfig& cfg);

// Rational number p/q in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool operator==(const Rational&) const = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// A pair of rationals used both as (p,q) in F_{p,q} and (r1,r2) in zeta_{r1,r2}.
struct Characteristic {
    Rational p;
    Rational q;
};

// tau in the upper half-plane together with the constants derived from it.
class ModularParam {
public:
    explicit ModularParam(cd tau);

    cd tau() const { return tau_; }
    cd q() const { return q_; }
    cd eta1() const { return eta1_; }
    cd eta2() const { return eta2_; }
    cd theta_prime0() const { return theta1_0_; }
    // Eisenstein series G_k for k in {2,4,6}.
    cd eisenstein(int k) const;

private:
    cd tau_, q_, eta1_, eta2_, theta1_0_;
    std::array<cd, 3> g_{};
};

// theta_11 and its first three u-derivatives at one point.
struct ThetaDerivs {
    cd t0, t1, t2, t3;
};

cd theta11(cd u, const ModularParam& m);
ThetaDerivs theta11_derivs(cd u, const ModularParam& m);
cd theta11_derivative_at_zero(const ModularParam& m);

cd kronecker_F(cd u, cd v, const ModularParam& m);
cd kronecker_F_char(const Characteristic& c, cd u, cd v, const ModularParam& m);

cd weierstrass_zeta(cd x, const ModularParam& m);
cd weierstrass_p(cd x, const ModularParam& m);
cd zeta_char(const Characteristic& c, cd x, const ModularParam& m);

cd eisenstein_G(int k, const ModularParam& m);
cd g2(const ModularParam& m);
cd g3(const ModularParam& m);
// Standard normalization, j(i) = 1728.
cd j_invariant(const ModularParam& m);
// g2^3 / (g2^3 - 27 g3^2), i.e. j/1728.
cd klein_J(const ModularParam& m);

// Bernoulli numbers B_0..B_n from the recurrence sum_{j<n+1} C(n+1,j) B_j = 0.
double bernoulli(int n);

// Residuals (LHS - RHS) of the distribution and isogeny identities.
cd identity_zeta_distribution(int d, cd x, const ModularParam& m);
cd identity_zeta_distribution_char(int d, int j, cd x, const ModularParam& m);
cd identity_F_zeta(int d, int k, int l, cd x, const ModularParam& m);
// Same identity with the 1/d normalization that makes the residues agree.
cd identity_F_zeta_corrected(int d, int k, int l, cd x, const ModularParam& m);
cd identity_p_distribution(int d, cd x, const ModularParam& m);
cd identity_eta2_isogeny(int d, const ModularParam& m);
// [2 pi i F(x,y) - 1/x] - (zeta(y) - y eta1), evaluated at the given small x.
cd kronecker_weierstrass_limit(cd y, const ModularParam& m, double x = 1e-5);

// Distance from z to the lattice Z + Z tau.
double lattice_distance(cd z, cd tau);

}  // namespace ybe
