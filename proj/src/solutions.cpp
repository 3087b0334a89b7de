// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/solutions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>

#include "ybe/errors.hpp"

namespace ybe {

namespace {

using json = nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<cd> unit_matrix(int n, int i, int j) {
    std::vector<cd> m(static_cast<size_t>(n) * n, 0.0);
    m[static_cast<size_t>(i) * n + j] = 1.0;
    return m;
}

// exp(z) - 1 without cancellation near 0.
cd expm1c(cd z) {
    if (std::abs(z) < 0.5) {
        cd term = z;
        cd sum = z;
        for (int k = 2; k < 40; ++k) {
            term *= z / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::exp(z) - 1.0;
}

// Distance from z to 2 pi i Z.
double dist_2pii(cd z) {
    const double k = std::round(z.imag() / (2.0 * kPi));
    return std::abs(z - cd(0.0, 2.0 * kPi * k));
}

int positive_mod(int a, int d) { return ((a % d) + d) % d; }

// Shortest nonzero vector of Z + Z tau, good enough for pole-free radii.
double shortest_period(cd tau) {
    double best = kInf;
    for (int m = -3; m <= 3; ++m) {
        for (int n = -3; n <= 3; ++n) {
            if (m == 0 && n == 0) continue;
            best = std::min(best, std::abs(cd(m) + static_cast<double>(n) * tau));
        }
    }
    return best;
}

void require_finite(cd z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidArgument(std::string(what) + " is not finite");
    }
}

void check_domain(double dist, const char* what) {
    if (dist < special_config().pole_eps) {
        throw PoleError(std::string(what) + " is within the pole guard of the excluded set");
    }
}

// --- the closed formulas --------------------------------------------------

MatrixTensor2 elliptic_aybe_raw(const SolutionHandle& h, cd u, cd v) {
    const int d = h.d();
    const cd ur = static_cast<double>(h.r()) * u;
    MatrixTensor2 out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int ip = 0; ip < d; ++ip)
                for (int jp = 0; jp < d; ++jp) {
                    if (positive_mod(j - i - (ip - jp), d) != 0) continue;
                    const Characteristic c{Rational(positive_mod(j - i, d), d),
                                           Rational(positive_mod(i - jp, d), d)};
                    out(i, j, ip, jp) = kronecker_F_char(c, static_cast<double>(d) * ur,
                                                         -static_cast<double>(d) * v, h.mp_drt());
                }
    return out;
}

MatrixTensor2 elliptic_cybe_raw(const SolutionHandle& h, cd v) {
    const int d = h.d();
    const cd x = -static_cast<double>(d) * v;
    const ModularParam& m = h.mp_drt();
    MatrixTensor2 out(d);
    std::vector<cd> zk(d);
    cd mean = 0.0;
    for (int k = 0; k < d; ++k) {
        zk[k] = zeta_char({Rational(0), Rational(k, d)}, x, m);
        mean += zk[k];
    }
    mean /= static_cast<double>(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int ip = 0; ip < d; ++ip)
                for (int jp = 0; jp < d; ++jp) {
                    if (positive_mod(j - i - (ip - jp), d) != 0) continue;
                    if (i == j) {
                        if (ip != jp) continue;
                        out(i, i, ip, ip) = (zk[positive_mod(i - ip, d)] - mean) / kTwoPiI;
                    } else {
                        const Characteristic c{Rational(positive_mod(j - i, d), d),
                                               Rational(positive_mod(i - jp, d), d)};
                        out(i, j, ip, jp) = kronecker_F_char(c, 0.0, x, m);
                    }
                }
    return out;
}

MatrixTensor2 trig_aybe1_raw(cd u, cd v) {
    const cd l = std::exp(u), mu = std::exp(v);
    const cd oml = -expm1c(u), omm = -expm1c(v);
    const auto e11 = unit_matrix(2, 0, 0), e12 = unit_matrix(2, 0, 1);
    const auto e21 = unit_matrix(2, 1, 0), e22 = unit_matrix(2, 1, 1);
    auto lin = [](cd a, const std::vector<cd>& x, cd b, const std::vector<cd>& y) {
        std::vector<cd> z(4);
        for (int k = 0; k < 4; ++k) z[k] = a * x[k] + b * y[k];
        return z;
    };
    MatrixTensor2 t = MatrixTensor2::outer(2, lin(mu, e11, -1.0, e22), lin(1.0, e11, l, e22));
    t += MatrixTensor2::outer(2, lin(-l, e11, mu, e22), lin(1.0, e11, 1.0, e22));
    t *= 1.0 / (oml * omm);
    t += (1.0 / omm) * MatrixTensor2::outer(2, e21, e12);
    t += (mu / omm) * MatrixTensor2::outer(2, e12, e21);
    return t;
}

MatrixTensor2 trig_aybe2_raw(cd u, cd v) {
    const cd l = std::exp(u);
    const cd oml = -expm1c(u), omm = -expm1c(v);
    const cd sm = std::exp(v / 2.0);
    const cd slm = std::exp((u + v) / 2.0);
    const auto e11 = unit_matrix(2, 0, 0), e12 = unit_matrix(2, 0, 1);
    const auto e21 = unit_matrix(2, 1, 0), e22 = unit_matrix(2, 1, 1);
    const cd one_minus_lm = -expm1c(u + v);
    MatrixTensor2 t = (one_minus_lm / (oml * omm)) *
                      (MatrixTensor2::outer(2, e11, e11) + MatrixTensor2::outer(2, e22, e22));
    t += (1.0 / oml) * (l * MatrixTensor2::outer(2, e11, e22) + MatrixTensor2::outer(2, e22, e11));
    t += (1.0 / (sm * omm)) * MatrixTensor2::outer(2, e21, e12);
    t += (sm / omm) * MatrixTensor2::outer(2, e12, e21);
    t += (slm - 1.0 / slm) * MatrixTensor2::outer(2, e21, e21);
    return t;
}

MatrixTensor2 trig_cybe_raw(cd v, bool second) {
    const cd mu = std::exp(v);
    const cd omm = -expm1c(v);
    const cd sm = std::exp(v / 2.0);
    const std::vector<cd> hm{1.0, 0.0, 0.0, -1.0};
    const auto e12 = unit_matrix(2, 0, 1), e21 = unit_matrix(2, 1, 0);
    MatrixTensor2 t = ((1.0 + mu) / (4.0 * omm)) * MatrixTensor2::outer(2, hm, hm);
    if (!second) {
        t += (1.0 / omm) * MatrixTensor2::outer(2, e21, e12);
        t += (mu / omm) * MatrixTensor2::outer(2, e12, e21);
    } else {
        t += (1.0 / (sm * omm)) * MatrixTensor2::outer(2, e21, e12);
        t += (sm / omm) * MatrixTensor2::outer(2, e12, e21);
        t += (sm - 1.0 / sm) * MatrixTensor2::outer(2, e21, e21);
    }
    return t;
}

MatrixTensor2 scalar(cd z) {
    MatrixTensor2 t(1);
    t(0, 0, 0, 0) = z;
    return t;
}

MatrixTensor2 base_aybe(const SolutionHandle& h, cd u, cd v) {
    switch (h.family()) {
    case Family::EllipticAYBE: return elliptic_aybe_raw(h, u, v);
    case Family::TrigAYBE1: return trig_aybe1_raw(u, v);
    case Family::TrigAYBE2: return trig_aybe2_raw(u, v);
    case Family::ScalarKronecker: return scalar(kronecker_F(u, v, h.mp_tau()));
    case Family::ScalarTrig: {
        const cd eu = expm1c(u), ev = expm1c(v);
        return scalar((ev - eu) / (eu * ev));
    }
    case Family::ScalarRational: return scalar(h.a() / u + h.b() / v);
    case Family::Constant: return h.constant_tensor();
    default: throw InvalidArgument(family_tag(h.family()) + " is a CYBE family; use eval_cybe");
    }
}

MatrixTensor2 base_cybe(const SolutionHandle& h, cd v) {
    switch (h.family()) {
    case Family::EllipticCYBE: return elliptic_cybe_raw(h, v);
    case Family::TrigCYBE1: return trig_cybe_raw(v, false);
    case Family::TrigCYBE2: return trig_cybe_raw(v, true);
    case Family::Constant: return h.constant_tensor();
    default: throw InvalidArgument(family_tag(h.family()) + " is an AYBE family; use eval_aybe");
    }
}

std::vector<cd> matrix_inverse(const std::vector<cd>& m, int n) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = m[static_cast<size_t>(i) * n + j];
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    if (!lu.isInvertible()) throw SingularError("gauge matrix is singular");
    const Eigen::MatrixXcd inv = lu.inverse();
    std::vector<cd> out(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<size_t>(i) * n + j] = inv(i, j);
    return out;
}

// phi(x2,y1) (x) phi(x1,y2) . r . (phi(x1,y1) (x) phi(x2,y2))^{-1}
// at x1 = u, x2 = 0, y1 = v, y2 = 0.
MatrixTensor2 apply_gauge(const Gauge& g, const MatrixTensor2& t, cd u, cd v) {
    switch (g.kind) {
    case Gauge::Kind::Identity: return t;
    case Gauge::Kind::ScalarExp: return std::exp(-g.c * u * v) * t;
    case Gauge::Kind::ConstantMatrix: {
        const int n = t.n();
        if (g.matrix.size() != static_cast<size_t>(n) * n) {
            throw SizeMismatch("gauge matrix size does not match the tensor");
        }
        const auto inv = matrix_inverse(g.matrix, n);
        return sandwich(t, g.matrix, g.matrix, inv, inv);
    }
    }
    return t;
}

MatrixTensor2 finish(const SolutionHandle& h, MatrixTensor2 t, cd u, cd v) {
    for (const Gauge& g : h.gauges()) t = apply_gauge(g, t, u, v);
    if (h.perturbation()) {
        if (h.perturbation()->n() != t.n()) throw SizeMismatch("perturbation size mismatch");
        t += *h.perturbation();
    }
    return t;
}

json cjson(cd z) { return json::array({z.real(), z.imag()}); }

cd cfrom(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw ParseError("complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

void validate_elliptic(int d, int r) {
    if (d < 1) throw InvalidArgument("d must be >= 1");
    if (r < 1) throw InvalidArgument("r must be >= 1");
    if (std::gcd(d, r) != 1) throw InvalidArgument("gcd(r, d) must be 1");
}

}  // namespace

std::string family_tag(Family f) {
    switch (f) {
    case Family::EllipticAYBE: return "elliptic-aybe";
    case Family::EllipticCYBE: return "elliptic-cybe";
    case Family::TrigAYBE1: return "trig-aybe1";
    case Family::TrigAYBE2: return "trig-aybe2";
    case Family::TrigCYBE1: return "trig-cybe1";
    case Family::TrigCYBE2: return "trig-cybe2";
    case Family::ScalarKronecker: return "scalar-kronecker";
    case Family::ScalarTrig: return "scalar-trig";
    case Family::ScalarRational: return "scalar-rational";
    case Family::Constant: return "constant";
    }
    return "unknown";
}

Family family_from_tag(const std::string& tag) {
    for (Family f : {Family::EllipticAYBE, Family::EllipticCYBE, Family::TrigAYBE1, Family::TrigAYBE2,
                     Family::TrigCYBE1, Family::TrigCYBE2, Family::ScalarKronecker, Family::ScalarTrig,
                     Family::ScalarRational, Family::Constant}) {
        if (family_tag(f) == tag) return f;
    }
    throw ParseError("unknown family tag '" + tag + "'");
}

Rescale compose(const Rescale& inner, const Rescale& outer) {
    // outer(inner(r))(u,v) = d1 e^{d2 uv} c1 e^{c2 d3 d4 uv} r(c3 d3 u, c4 d4 v)
    return {outer.c1 * inner.c1, outer.c2 + inner.c2 * outer.c3 * outer.c4, inner.c3 * outer.c3,
            inner.c4 * outer.c4};
}

SolutionHandle SolutionHandle::elliptic_aybe(int d, int r, cd tau) {
    validate_elliptic(d, r);
    SolutionHandle h;
    h.family_ = Family::EllipticAYBE;
    h.d_ = d;
    h.r_ = r;
    h.tau_ = tau;
    h.mp_tau_ = std::make_shared<const ModularParam>(tau);
    h.mp_rt_ = std::make_shared<const ModularParam>(static_cast<double>(r) * tau);
    h.mp_drt_ = std::make_shared<const ModularParam>(static_cast<double>(d * r) * tau);
    return h;
}

SolutionHandle SolutionHandle::elliptic_cybe(int d, int r, cd tau) {
    SolutionHandle h = elliptic_aybe(d, r, tau);
    h.family_ = Family::EllipticCYBE;
    return h;
}

SolutionHandle SolutionHandle::trig_aybe1() {
    SolutionHandle h;
    h.family_ = Family::TrigAYBE1;
    return h;
}
SolutionHandle SolutionHandle::trig_aybe2() {
    SolutionHandle h;
    h.family_ = Family::TrigAYBE2;
    return h;
}
SolutionHandle SolutionHandle::trig_cybe1() {
    SolutionHandle h;
    h.family_ = Family::TrigCYBE1;
    return h;
}
SolutionHandle SolutionHandle::trig_cybe2() {
    SolutionHandle h;
    h.family_ = Family::TrigCYBE2;
    return h;
}
SolutionHandle SolutionHandle::scalar_kronecker(cd tau) {
    SolutionHandle h;
    h.family_ = Family::ScalarKronecker;
    h.tau_ = tau;
    h.mp_tau_ = std::make_shared<const ModularParam>(tau);
    return h;
}
SolutionHandle SolutionHandle::scalar_trig() {
    SolutionHandle h;
    h.family_ = Family::ScalarTrig;
    return h;
}
SolutionHandle SolutionHandle::scalar_rational(cd a, cd b) {
    require_finite(a, "a");
    require_finite(b, "b");
    SolutionHandle h;
    h.family_ = Family::ScalarRational;
    h.a_ = a;
    h.b_ = b;
    return h;
}
SolutionHandle SolutionHandle::constant(const MatrixTensor2& t) {
    if (t.n() < 1) throw InvalidArgument("constant tensor must have n >= 1");
    SolutionHandle h;
    h.family_ = Family::Constant;
    h.constant_ = t;
    return h;
}

int SolutionHandle::n() const {
    switch (family_) {
    case Family::EllipticAYBE:
    case Family::EllipticCYBE: return d_;
    case Family::TrigAYBE1:
    case Family::TrigAYBE2:
    case Family::TrigCYBE1:
    case Family::TrigCYBE2: return 2;
    case Family::Constant: return constant_.n();
    default: return 1;
    }
}

bool SolutionHandle::is_cybe() const {
    return family_ == Family::EllipticCYBE || family_ == Family::TrigCYBE1 || family_ == Family::TrigCYBE2;
}

bool SolutionHandle::is_scalar() const {
    return family_ == Family::ScalarKronecker || family_ == Family::ScalarTrig ||
           family_ == Family::ScalarRational;
}

SolutionHandle SolutionHandle::with_rescale(const Rescale& outer) const {
    if (outer.c1 == 0.0 || outer.c3 == 0.0 || outer.c4 == 0.0) {
        throw InvalidArgument("rescale constants c1, c3, c4 must be nonzero");
    }
    SolutionHandle h = *this;
    h.rescale_ = compose(rescale_, outer);
    return h;
}

SolutionHandle SolutionHandle::with_gauge(const Gauge& g) const {
    if (g.kind == Gauge::Kind::ConstantMatrix) {
        if (g.matrix.size() != static_cast<size_t>(n()) * n()) {
            throw SizeMismatch("gauge matrix must be n x n");
        }
        (void)matrix_inverse(g.matrix, n());
    }
    SolutionHandle h = *this;
    h.gauges_.push_back(g);
    return h;
}

SolutionHandle SolutionHandle::with_perturbation(const MatrixTensor2& p) const {
    if (p.n() != n()) throw SizeMismatch("perturbation must have the handle's n");
    SolutionHandle h = *this;
    if (h.perturbation_) {
        *h.perturbation_ += p;
    } else {
        h.perturbation_ = p;
    }
    return h;
}

double SolutionHandle::domain_distance(cd u, cd v) const {
    const cd us = rescale_.c3 * u;
    const cd vs = rescale_.c4 * v;
    switch (family_) {
    case Family::EllipticAYBE: {
        const double d = d_;
        const cd rt = mp_rt_->tau();
        return std::min({lattice_distance(d * static_cast<double>(r_) * us, rt),
                         lattice_distance(d * vs, rt),
                         lattice_distance(d * (static_cast<double>(r_) * us - vs), rt)});
    }
    case Family::TrigAYBE1:
    case Family::TrigAYBE2:
    case Family::ScalarTrig: return std::min(dist_2pii(us), dist_2pii(vs));
    case Family::ScalarKronecker:
        return std::min({lattice_distance(us, tau_), lattice_distance(vs, tau_),
                         lattice_distance(us + vs, tau_)});
    case Family::ScalarRational: return std::min(std::abs(us), std::abs(vs));
    case Family::Constant: return kInf;
    default: return domain_distance_cybe(v);
    }
}

double SolutionHandle::domain_distance_cybe(cd v) const {
    const cd vs = rescale_.c4 * v;
    switch (family_) {
    case Family::EllipticAYBE:
    case Family::EllipticCYBE: return lattice_distance(static_cast<double>(d_) * vs, mp_rt_->tau());
    case Family::TrigAYBE1:
    case Family::TrigAYBE2:
    case Family::TrigCYBE1:
    case Family::TrigCYBE2:
    case Family::ScalarTrig: return dist_2pii(vs);
    case Family::ScalarKronecker: return lattice_distance(vs, tau_);
    case Family::ScalarRational: return std::abs(vs);
    case Family::Constant: return kInf;
    }
    return kInf;
}

double SolutionHandle::v_pole_free_radius() const {
    const double s = std::abs(rescale_.c4);
    switch (family_) {
    case Family::EllipticAYBE:
    case Family::EllipticCYBE: return shortest_period(mp_rt_->tau()) / (static_cast<double>(d_) * s);
    case Family::ScalarKronecker: return shortest_period(tau_) / s;
    case Family::TrigAYBE1:
    case Family::TrigAYBE2:
    case Family::TrigCYBE1:
    case Family::TrigCYBE2:
    case Family::ScalarTrig: return 2.0 * kPi / s;
    default: return kInf;
    }
}

MatrixTensor2 eval_aybe(const SolutionHandle& h, cd u, cd v) {
    require_finite(u, "u");
    require_finite(v, "v");
    if (h.is_cybe()) {
        throw InvalidArgument(family_tag(h.family()) + " is a CYBE family; use eval_cybe");
    }
    check_domain(h.domain_distance(u, v), "(u, v)");
    const Rescale& rs = h.rescale();
    MatrixTensor2 t = base_aybe(h, rs.c3 * u, rs.c4 * v);
    t *= rs.c1 * std::exp(rs.c2 * u * v);
    return finish(h, std::move(t), u, v);
}

MatrixTensor2 eval_cybe(const SolutionHandle& h, cd v) {
    require_finite(v, "v");
    if (!h.is_cybe() && h.family() != Family::Constant) {
        throw InvalidArgument(family_tag(h.family()) + " is an AYBE family; use eval_aybe");
    }
    check_domain(h.domain_distance_cybe(v), "v");
    const Rescale& rs = h.rescale();
    MatrixTensor2 t = base_cybe(h, rs.c4 * v);
    t *= rs.c1;
    return finish(h, std::move(t), 0.0, v);
}

MatrixTensor2 eval_cybe_forbis(const SolutionHandle& h, cd v, bool corrected) {
    require_finite(v, "v");
    if (h.family() != Family::EllipticCYBE) {
        throw InvalidArgument("the zeta-only form exists for the elliptic CYBE family only");
    }
    check_domain(h.domain_distance_cybe(v), "v");
    const Rescale& rs = h.rescale();
    const cd x = -rs.c4 * v;
    const int d = h.d();
    const double dd = d;
    const ModularParam& m = h.mp_rt();
    const cd tp = m.tau();
    // zeta_{a/d, b/d}(x) for the grid of characteristics.
    std::vector<cd> z(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) z[static_cast<size_t>(a) * d + b] = zeta_char({Rational(a, d), Rational(b, d)}, x, m);
    cd total = 0.0;
    for (const cd& w : z) total += w;
    const double off_scale = corrected ? 1.0 / dd : 1.0;

    MatrixTensor2 t(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int ip = 0; ip < d; ++ip)
                for (int jp = 0; jp < d; ++jp) {
                    if (positive_mod(j - i - (ip - jp), d) != 0) continue;
                    if (i == j) {
                        if (ip != jp) continue;
                        const int b = positive_mod(i - ip, d);
                        cd row = 0.0;
                        for (int a = 0; a < d; ++a) row += z[static_cast<size_t>(a) * d + b];
                        t(i, i, ip, ip) = (row / dd - total / (dd * dd)) / kTwoPiI;
                    } else {
                        const int b = positive_mod(i - jp, d);
                        const cd shift = static_cast<double>(i - j) * tp / dd;
                        cd acc = 0.0;
                        for (int a = 0; a < d; ++a) {
                            const cd phase = std::exp(-kTwoPiI * static_cast<double>(a * (j - i)) / dd);
                            acc += phase * (z[static_cast<size_t>(a) * d + b] -
                                            zeta_char({Rational(a, d), Rational(0)}, shift, m));
                        }
                        t(i, j, ip, jp) = off_scale * acc / kTwoPiI;
                    }
                }
    t *= rs.c1;
    return finish(h, std::move(t), 0.0, v);
}

std::vector<cd> default_u_seq(cd base) { return {base, base / 2.0, base / 4.0}; }

LimitResult cybe_limit_of_aybe(const SolutionHandle& h, cd v, const std::vector<cd>& u_seq, double tol) {
    if (h.is_cybe()) throw InvalidArgument("limit requires an AYBE family");
    if (u_seq.size() < 3) throw InvalidArgument("u_seq needs at least three points");
    std::vector<MatrixTensor2> f;
    f.reserve(u_seq.size());
    for (const cd& u : u_seq) {
        if (u == 0.0) throw InvalidArgument("u_seq must avoid u = 0");
        f.push_back(project_sl(eval_aybe(h, u, v)));
    }
    // Linear extrapolation to u = 0 through consecutive pairs.
    auto extrap = [&](size_t k) {
        const cd a = u_seq[k], b = u_seq[k + 1];
        return (1.0 / (a - b)) * (a * f[k + 1] - b * f[k]);
    };
    const size_t last = u_seq.size() - 2;
    LimitResult res;
    res.value = extrap(last);
    const MatrixTensor2 prev = extrap(last - 1);
    res.residual = (res.value - prev).max_abs();
    const double d1 = (f[last] - f[last - 1]).max_abs();
    const double d2 = (f[last + 1] - f[last]).max_abs();
    const double ratio = std::abs(u_seq[last - 1] / u_seq[last]);
    res.order = (d1 > 0.0 && d2 > 0.0 && ratio != 1.0) ? std::log(d1 / d2) / std::log(ratio) : kInf;
    if (!(res.residual <= tol * std::max(1.0, res.value.max_abs()))) {
        throw NotConvergent("extrapolants differ by " + std::to_string(res.residual));
    }
    return res;
}

SolutionHandle equivalence_transform(const SolutionHandle& h, const Gauge& g) { return h.with_gauge(g); }

json handle_to_json(const SolutionHandle& h) {
    json j;
    j["family"] = family_tag(h.family());
    j["d"] = h.d();
    j["r"] = h.r();
    j["tau"] = cjson(h.tau());
    j["a"] = cjson(h.a());
    j["b"] = cjson(h.b());
    const Rescale& rs = h.rescale();
    j["rescale"] = {{"c1", cjson(rs.c1)}, {"c2", cjson(rs.c2)}, {"c3", cjson(rs.c3)}, {"c4", cjson(rs.c4)}};
    json gs = json::array();
    for (const Gauge& g : h.gauges()) {
        json e;
        switch (g.kind) {
        case Gauge::Kind::Identity: e["kind"] = "identity"; break;
        case Gauge::Kind::ScalarExp:
            e["kind"] = "scalar-exp";
            e["c"] = cjson(g.c);
            break;
        case Gauge::Kind::ConstantMatrix: {
            e["kind"] = "constant";
            json m = json::array();
            for (const cd& z : g.matrix) m.push_back(cjson(z));
            e["matrix"] = m;
            break;
        }
        }
        gs.push_back(e);
    }
    j["gauge"] = gs;
    if (h.family() == Family::Constant) j["tensor"] = to_json(h.constant_tensor());
    if (h.perturbation()) j["perturbation"] = to_json(*h.perturbation());
    return j;
}

SolutionHandle handle_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("family")) throw ParseError("descriptor needs a 'family' key");
        const Family f = family_from_tag(j.at("family").get<std::string>());
        const int d = j.value("d", 1);
        const int r = j.value("r", 1);
        const cd tau = j.contains("tau") ? cfrom(j.at("tau")) : cd(0.0, 1.0);
        const cd a = j.contains("a") ? cfrom(j.at("a")) : cd(1.0);
        const cd b = j.contains("b") ? cfrom(j.at("b")) : cd(1.0);
        SolutionHandle h = [&] {
            switch (f) {
            case Family::EllipticAYBE: return SolutionHandle::elliptic_aybe(d, r, tau);
            case Family::EllipticCYBE: return SolutionHandle::elliptic_cybe(d, r, tau);
            case Family::TrigAYBE1: return SolutionHandle::trig_aybe1();
            case Family::TrigAYBE2: return SolutionHandle::trig_aybe2();
            case Family::TrigCYBE1: return SolutionHandle::trig_cybe1();
            case Family::TrigCYBE2: return SolutionHandle::trig_cybe2();
            case Family::ScalarKronecker: return SolutionHandle::scalar_kronecker(tau);
            case Family::ScalarTrig: return SolutionHandle::scalar_trig();
            case Family::ScalarRational: return SolutionHandle::scalar_rational(a, b);
            case Family::Constant:
                if (!j.contains("tensor")) throw ParseError("constant family needs a 'tensor'");
                return SolutionHandle::constant(tensor2_from_json(j.at("tensor")));
            }
            throw ParseError("unhandled family");
        }();
        if (j.contains("rescale")) {
            const json& rj = j.at("rescale");
            Rescale rs;
            if (rj.contains("c1")) rs.c1 = cfrom(rj.at("c1"));
            if (rj.contains("c2")) rs.c2 = cfrom(rj.at("c2"));
            if (rj.contains("c3")) rs.c3 = cfrom(rj.at("c3"));
            if (rj.contains("c4")) rs.c4 = cfrom(rj.at("c4"));
            h = h.with_rescale(rs);
        }
        if (j.contains("gauge")) {
            for (const json& e : j.at("gauge")) {
                const std::string kind = e.at("kind").get<std::string>();
                if (kind == "identity") {
                    h = h.with_gauge(Gauge::identity());
                } else if (kind == "scalar-exp") {
                    h = h.with_gauge(Gauge::scalar_exp(cfrom(e.at("c"))));
                } else if (kind == "constant") {
                    std::vector<cd> m;
                    for (const json& z : e.at("matrix")) m.push_back(cfrom(z));
                    h = h.with_gauge(Gauge::constant(std::move(m)));
                } else {
                    throw ParseError("unknown gauge kind '" + kind + "'");
                }
            }
        }
        if (j.contains("perturbation")) h = h.with_perturbation(tensor2_from_json(j.at("perturbation")));
        return h;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed handle descriptor: ") + e.what());
    }
}

}  // namespace ybe
