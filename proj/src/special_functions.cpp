// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <vector>

#include "ybe/errors.hpp"

namespace ybe {

namespace {

SpecialConfig g_config;
std::mutex g_config_mutex;

void require_finite(cd z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument(std::string(what) + " is not finite");
    }
}

std::string fmt(cd z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// z = z0 + a + b*tau with z0 in the centred period parallelogram.
struct Reduced {
    cd z0;
    double a;
    double b;
};

Reduced reduce(cd z, cd tau) {
    const double b = std::round(z.imag() / tau.imag());
    const cd z1 = z - b * tau;
    const double a = std::round(z1.real());
    return {z1 - a, a, b};
}

void guard_pole(cd z, cd tau, const char* what) {
    if (lattice_distance(z, tau) < special_config().pole_eps) {
        throw PoleError(std::string(what) + " = " + fmt(z) + " is within the pole guard of the lattice");
    }
}

// Paired theta series: theta^(k)(u) = sum_{n>=0} (-1)^n e^{pi i (n+1/2)^2 tau} D_k(w u)
// with w = 2 pi (n+1/2), D_0 = 2i sin, D_1 = 2i w cos, D_2 = -2i w^2 sin,
// D_3 = -2i w^3 cos. Pairing n with -n-1 keeps full relative accuracy near
// the zero at u = 0. Intended for lattice-reduced arguments.
ThetaDerivs theta_paired(cd u, cd tau) {
    const double tol = special_config().series_tol;
    const double it = tau.imag();
    const double ium = std::abs(u.imag());
    ThetaDerivs r{0.0, 0.0, 0.0, 0.0};
    double scale = 0.0;
    const cd two_i{0.0, 2.0};
    for (int n = 0; n < 100000; ++n) {
        const double h = n + 0.5;
        const double w = 2.0 * kPi * h;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const cd nome = sign * std::exp(cd(0.0, kPi) * h * h * tau);
        const cd s = std::sin(w * u);
        const cd c = std::cos(w * u);
        const cd t0 = two_i * nome * s;
        const cd t1 = two_i * w * nome * c;
        const cd t2 = -two_i * w * w * nome * s;
        const cd t3 = -two_i * w * w * w * nome * c;
        r.t0 += t0;
        r.t1 += t1;
        r.t2 += t2;
        r.t3 += t3;
        // Magnitude bound of the n-th term including the largest derivative weight.
        const double mag = std::exp(-kPi * it * h * h + w * ium) * std::max(1.0, w * w * w);
        scale = std::max(scale, mag);
        const bool past_peak = h * it > ium;
        if (past_peak && n >= 2 && mag < tol * scale) break;
    }
    return r;
}

void validate_tau(cd tau) {
    require_finite(tau, "tau");
    if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane, got " + fmt(tau));
}

}  // namespace

const SpecialConfig& special_config() { return g_config; }

void set_special_config(const SpecialConfig& cfg) {
    std::lock_guard<std::mutex> lock(g_config_mutex);
    g_config = cfg;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g ? num / g : 0;
    den_ = g ? den / g : 1;
}

double lattice_distance(cd z, cd tau) {
    const Reduced r = reduce(z, tau);
    double best = std::abs(r.z0);
    for (int b = -1; b <= 1; ++b) {
        for (int a = -2; a <= 2; ++a) {
            best = std::min(best, std::abs(r.z0 - static_cast<double>(a) - static_cast<double>(b) * tau));
        }
    }
    return best;
}

ModularParam::ModularParam(cd tau) : tau_(tau) {
    validate_tau(tau);
    q_ = std::exp(kTwoPiI * tau);
    const ThetaDerivs t = theta_paired(0.0, tau);
    theta1_0_ = t.t1;
    eta1_ = -t.t3 / (3.0 * t.t1);
    eta2_ = eta1_ * tau - kTwoPiI;
    const double tol = special_config().series_tol;
    for (int idx = 0; idx < 3; ++idx) {
        const int k = 2 * (idx + 1);
        const cd constant = -bernoulli(k) / (2.0 * k);
        // sum_{m,n>=1} m^{k-1} q^{mn} = sum_m m^{k-1} q^m / (1 - q^m)
        cd sum = 0.0;
        cd qm = 1.0;
        for (int mi = 1; mi < 1000000; ++mi) {
            qm *= q_;
            const cd term = std::pow(static_cast<double>(mi), k - 1) * qm / (1.0 - qm);
            sum += term;
            if (std::abs(term) < tol * std::max(std::abs(sum), std::abs(constant))) break;
        }
        g_[idx] = constant + sum;
    }
}

cd ModularParam::eisenstein(int k) const {
    if (k != 2 && k != 4 && k != 6) throw InvalidArgument("Eisenstein weight must be 2, 4 or 6");
    return g_[k / 2 - 1];
}

ThetaDerivs theta11_derivs(cd u, const ModularParam& m) {
    require_finite(u, "u");
    return theta_paired(u, m.tau());
}

cd theta11(cd u, const ModularParam& m) {
    require_finite(u, "u");
    const cd tau = m.tau();
    const Reduced r = reduce(u, tau);
    // theta(u0 + a + b tau) = (-1)^{a+b} exp(-pi i b^2 tau - 2 pi i b u0) theta(u0)
    const double parity = (std::fmod(std::abs(r.a + r.b), 2.0) == 0.0) ? 1.0 : -1.0;
    const cd mult = parity * std::exp(cd(0.0, -kPi) * r.b * r.b * tau - kTwoPiI * r.b * r.z0);
    return mult * theta_paired(r.z0, tau).t0;
}

cd theta11_derivative_at_zero(const ModularParam& m) { return m.theta_prime0(); }

cd kronecker_F(cd u, cd v, const ModularParam& m) {
    require_finite(u, "u");
    require_finite(v, "v");
    const cd tau = m.tau();
    guard_pole(u, tau, "u");
    guard_pole(v, tau, "v");
    guard_pole(u + v, tau, "u+v");
    const Reduced ru = reduce(u, tau);
    const Reduced rv = reduce(v, tau);
    // F(u+tau, v) = e^{-2 pi i v} F(u, v); F is 1-periodic in each slot.
    const cd factor = std::exp(-kTwoPiI * (ru.b * v + rv.b * ru.z0));
    const ThetaDerivs tu = theta_paired(ru.z0, tau);
    const ThetaDerivs tv = theta_paired(rv.z0, tau);
    const ThetaDerivs ts = theta_paired(ru.z0 + rv.z0, tau);
    return factor * m.theta_prime0() / kTwoPiI * ts.t0 / (tu.t0 * tv.t0);
}

cd kronecker_F_char(const Characteristic& c, cd u, cd v, const ModularParam& m) {
    const double p = c.p.value();
    const double q = c.q.value();
    const cd tau = m.tau();
    const cd pref = std::exp(kTwoPiI * (p * q * tau + p * v + q * u));
    return pref * kronecker_F(u + p * tau, v + q * tau, m);
}

cd weierstrass_zeta(cd x, const ModularParam& m) {
    require_finite(x, "x");
    const cd tau = m.tau();
    guard_pole(x, tau, "x");
    const Reduced r = reduce(x, tau);
    const ThetaDerivs t = theta_paired(r.z0, tau);
    return m.eta1() * r.z0 + t.t1 / t.t0 + r.a * m.eta1() + r.b * m.eta2();
}

cd weierstrass_p(cd x, const ModularParam& m) {
    require_finite(x, "x");
    const cd tau = m.tau();
    guard_pole(x, tau, "x");
    const Reduced r = reduce(x, tau);
    const ThetaDerivs t = theta_paired(r.z0, tau);
    const cd l1 = t.t1 / t.t0;
    return -m.eta1() - (t.t2 / t.t0 - l1 * l1);
}

cd zeta_char(const Characteristic& c, cd x, const ModularParam& m) {
    const double r1 = c.p.value();
    const double r2 = c.q.value();
    return weierstrass_zeta(x + r1 + r2 * m.tau(), m) - r1 * m.eta1() - r2 * m.eta2();
}

cd eisenstein_G(int k, const ModularParam& m) { return m.eisenstein(k); }

cd g2(const ModularParam& m) { return 20.0 * std::pow(2.0 * kPi, 4) * m.eisenstein(4); }

cd g3(const ModularParam& m) { return -7.0 * std::pow(2.0 * kPi, 6) * m.eisenstein(6) / 3.0; }

cd klein_J(const ModularParam& m) {
    const cd a = g2(m);
    const cd b = g3(m);
    const cd a3 = a * a * a;
    const cd disc = a3 - 27.0 * b * b;
    const double scale = std::max(std::abs(a3), 27.0 * std::norm(b));
    if (std::abs(disc) <= 1e-14 * scale || std::abs(disc) < 1e-300) {
        throw NotConvergent("modular discriminant underflows at tau = " + fmt(m.tau()));
    }
    return a3 / disc;
}

cd j_invariant(const ModularParam& m) { return 1728.0 * klein_J(m); }

double bernoulli(int n) {
    if (n < 0) throw InvalidArgument("Bernoulli index must be non-negative");
    std::vector<double> b(static_cast<size_t>(n) + 1, 0.0);
    b[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        // sum_{j<=k} C(k+1, j) B_j = 0
        double acc = 0.0;
        double binom = 1.0;  // C(k+1, 0)
        for (int j = 0; j < k; ++j) {
            acc += binom * b[j];
            binom = binom * (k + 1 - j) / (j + 1);
        }
        b[k] = -acc / (k + 1);
    }
    return b[n];
}

namespace {

void check_d(int d) {
    if (d < 1) throw InvalidArgument("d must be a positive integer");
}

cd sum_p_at_torsion(int d, const ModularParam& m) {
    cd s = 0.0;
    for (int i = 1; i < d; ++i) s += weierstrass_p(static_cast<double>(i) / d, m);
    return s;
}

cd F_zeta_rhs(int d, int k, int l, cd x, const ModularParam& m) {
    cd rhs = 0.0;
    const cd tau = m.tau();
    for (int j = 0; j < d; ++j) {
        const cd phase = std::exp(-kTwoPiI * static_cast<double>(k * j) / static_cast<double>(d));
        const Characteristic a{Rational(j, d), Rational(l, d)};
        const Characteristic b{Rational(j, d), Rational(0)};
        rhs += phase * (zeta_char(a, x, m) - zeta_char(b, -static_cast<double>(k) * tau / static_cast<double>(d), m));
    }
    return rhs;
}

cd F_zeta_lhs(int d, int k, int l, cd x, const ModularParam& m) {
    check_d(d);
    if (k % d == 0) throw InvalidArgument("k must not be divisible by d");
    const ModularParam md(static_cast<double>(d) * m.tau());
    const Characteristic c{Rational(k, d), Rational(l, d)};
    return kTwoPiI * kronecker_F_char(c, 0.0, static_cast<double>(d) * x, md);
}

}  // namespace

cd identity_zeta_distribution(int d, cd x, const ModularParam& m) {
    return identity_zeta_distribution_char(d, 0, x, m);
}

cd identity_zeta_distribution_char(int d, int j, cd x, const ModularParam& m) {
    check_d(d);
    const double dd = d;
    const ModularParam md(dd * m.tau());
    const cd lhs = zeta_char(Characteristic{Rational(0), Rational(j, d)}, dd * x, md);
    cd rhs = 0.0;
    for (int i = 0; i < d; ++i) rhs += zeta_char(Characteristic{Rational(i, d), Rational(j, d)}, x, m);
    rhs /= dd;
    if (d > 1) rhs += x / dd * sum_p_at_torsion(d, m);
    return lhs - rhs;
}

cd identity_F_zeta(int d, int k, int l, cd x, const ModularParam& m) {
    const cd lhs = F_zeta_lhs(d, k, l, x, m);
    return lhs - F_zeta_rhs(d, k, l, x, m);
}

cd identity_F_zeta_corrected(int d, int k, int l, cd x, const ModularParam& m) {
    const cd lhs = F_zeta_lhs(d, k, l, x, m);
    return lhs - F_zeta_rhs(d, k, l, x, m) / static_cast<double>(d);
}

cd identity_p_distribution(int d, cd x, const ModularParam& m) {
    check_d(d);
    if (d == 1) return 0.0;
    const double dd = d;
    const ModularParam md(dd * m.tau());
    const cd lhs = weierstrass_p(dd * x, md);
    cd rhs = 0.0;
    for (int i = 0; i < d; ++i) rhs += weierstrass_p(x + static_cast<double>(i) / dd, m);
    rhs = (rhs - sum_p_at_torsion(d, m)) / (dd * dd);
    return lhs - rhs;
}

cd identity_eta2_isogeny(int d, const ModularParam& m) {
    check_d(d);
    if (d == 1) return 0.0;
    const double dd = d;
    const ModularParam md(dd * m.tau());
    return md.eta2() - (m.eta2() + m.tau() / dd * sum_p_at_torsion(d, m));
}

cd kronecker_weierstrass_limit(cd y, const ModularParam& m, double x) {
    const cd lhs = kTwoPiI * kronecker_F(x, y, m) - 1.0 / x;
    return lhs - (weierstrass_zeta(y, m) - y * m.eta1());
}

}  // namespace ybe
