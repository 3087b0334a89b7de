// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/curve_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "ybe/errors.hpp"
#include "ybe/solutions.hpp"

namespace ybe {

namespace {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

Mat4 to_eigen(const LinearMap4& a) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = a(r, c);
    return m;
}

LinearMap4 from_eigen(const Mat4& m) {
    LinearMap4 a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a(r, c) = m(r, c);
    return a;
}

Mat2 gluing(cd lambda) {
    Mat2 s;
    s << 0.0, lambda, 1.0, 0.0;
    return s;
}

void put_column(LinearMap4& a, int col, const Mat2& m) {
    a(0, col) = m(0, 0);
    a(1, col) = m(0, 1);
    a(2, col) = m(1, 0);
    a(3, col) = m(1, 1);
}

// Coordinates (a, b, c, d) of B = (a 0; b z0 + c z1  d).
std::array<cd, 4> basis(int k) {
    std::array<cd, 4> e{};
    e[k] = 1.0;
    return e;
}

cd trivialization(const BundleParams& p, cd lambda, cd y) {
    if (p.trivialization == Trivialization::Constant) return 1.0;
    return std::exp((std::log(lambda) - std::log(y)) / 2.0);
}

void check_params(const BundleParams& p) {
    if (p.lambda1 == 0.0 || p.lambda2 == 0.0) throw InvalidArgument("lambda must be nonzero");
    if (p.y1 == 0.0 || p.y2 == 0.0) throw InvalidArgument("points must avoid 0");
    if (p.y1 == p.y2) throw InvalidArgument("y1 and y2 must differ");
}

// Case 2: value of a section (al 0; lo_z0 z0 + lo_z1 z1  de) + up e12 in the
// trivialization at y.
Mat2 section_at(const BundleParams& p, cd al, cd lo_z0, cd lo_z1, cd de, cd up, cd y) {
    Mat2 m;
    m << al, up / trivialization(p, p.lambda1, y), trivialization(p, p.lambda2, y) * (lo_z0 + lo_z1 * y), de;
    return m;
}

struct Case2Data {
    cd alpha, beta, delta, t;
};

// Solve B'_0 + t e12 = -y S2^{-1} (B''_inf + t e12) S1 with B'_0 = (alpha 0; beta delta).
Case2Data solve_case2(const BundleParams& p, const std::array<cd, 4>& x) {
    const cd y = p.y1;
    const Mat2 s1 = gluing(p.lambda1);
    const Mat2 s2inv = gluing(p.lambda2).inverse();
    auto residual = [&](const std::array<cd, 4>& z) {
        Mat2 lhs;
        lhs << z[0], z[3], z[1], z[2];
        Mat2 binf;
        binf << x[0], z[3], x[2], x[3];
        const Mat2 diff = lhs + y * s2inv * binf * s1;
        Eigen::Vector4cd r;
        r << diff(0, 0), diff(0, 1), diff(1, 0), diff(1, 1);
        return r;
    };
    const Eigen::Vector4cd r0 = residual({0.0, 0.0, 0.0, 0.0});
    Mat4 jac;
    for (int k = 0; k < 4; ++k) jac.col(k) = residual(basis(k)) - r0;
    Eigen::FullPivLU<Mat4> lu(jac);
    if (!lu.isInvertible()) throw SingularError("case-2 gluing system is singular");
    const Eigen::Vector4cd z = lu.solve(-r0);
    return {z(0), z(1), z(2), z(3)};
}

}  // namespace

double LinearMap4::max_abs() const {
    double m = 0.0;
    for (const cd& z : this->m) m = std::max(m, std::abs(z));
    return m;
}

LinearMap4 operator*(const LinearMap4& a, const LinearMap4& b) { return from_eigen(to_eigen(a) * to_eigen(b)); }

LinearMap4 operator-(const LinearMap4& a, const LinearMap4& b) {
    LinearMap4 c;
    for (size_t k = 0; k < 16; ++k) c.m[k] = a.m[k] - b.m[k];
    return c;
}

LinearMap4 inverse(const LinearMap4& a) {
    Eigen::FullPivLU<Mat4> lu(to_eigen(a));
    if (!lu.isInvertible()) throw SingularError("residue map is singular");
    return from_eigen(lu.inverse());
}

int rank(const LinearMap4& a) {
    Eigen::JacobiSVD<Mat4> svd(to_eigen(a));
    const auto& s = svd.singularValues();
    const double cut = 16.0 * std::numeric_limits<double>::epsilon() * s(0);
    int r = 0;
    for (int k = 0; k < 4; ++k)
        if (s(k) > cut) ++r;
    return r;
}

cd determinant(const LinearMap4& a) { return to_eigen(a).determinant(); }

LinearMap4 residue_map_case1(const BundleParams& p) {
    check_params(p);
    const Mat2 s1 = gluing(p.lambda1);
    const Mat2 s2inv = gluing(p.lambda2).inverse();
    LinearMap4 res;
    for (int k = 0; k < 4; ++k) {
        const auto x = basis(k);
        Mat2 b0, binf;
        b0 << x[0], 0.0, x[1], x[3];
        binf << x[0], 0.0, x[2], x[3];
        put_column(res, k, s2inv * binf * s1 - b0);
    }
    return res;
}

LinearMap4 ev_map_case1(const BundleParams& p) {
    check_params(p);
    const Mat2 s1 = gluing(p.lambda1);
    const Mat2 s2inv = gluing(p.lambda2).inverse();
    const cd y1 = p.y1, y2 = p.y2;
    LinearMap4 ev;
    for (int k = 0; k < 4; ++k) {
        const auto x = basis(k);
        Mat2 b0, binf;
        b0 << x[0], 0.0, x[1], x[3];
        binf << x[0], 0.0, x[2], x[3];
        put_column(ev, k, y1 / (y1 - y2) * b0 + y2 / (y2 - y1) * (s2inv * binf * s1));
    }
    return ev;
}

LinearMap4 composite_case1(const BundleParams& p) { return ev_map_case1(p) * inverse(residue_map_case1(p)); }

LinearMap4 residue_map_case2(const BundleParams& p) {
    check_params(p);
    const cd y = p.y1;
    LinearMap4 res;
    for (int k = 0; k < 4; ++k) {
        const auto x = basis(k);
        const Case2Data c = solve_case2(p, x);
        const Mat2 bp = section_at(p, c.alpha, c.beta, 0.0, c.delta, 0.0, y);
        const Mat2 bpp = section_at(p, x[0], x[1], x[2], x[3], 0.0, y);
        const Mat2 e12 = section_at(p, 0.0, 0.0, 0.0, 0.0, 1.0, y);
        put_column(res, k, bp / y + bpp + c.t / y * e12);
    }
    return res;
}

LinearMap4 ev_map_case2(const BundleParams& p) {
    check_params(p);
    const cd y1 = p.y1, y2 = p.y2;
    const cd fac = p.ev == EvForm::ExpandedMatrix ? y2 / y1 : cd(1.0);
    LinearMap4 ev;
    for (int k = 0; k < 4; ++k) {
        const auto x = basis(k);
        const Case2Data c = solve_case2(p, x);
        const Mat2 bp = section_at(p, c.alpha, c.beta, 0.0, c.delta, 0.0, y2);
        const Mat2 bpp = section_at(p, x[0], x[1], x[2], x[3], 0.0, y2);
        const Mat2 e12 = section_at(p, 0.0, 0.0, 0.0, 0.0, 1.0, y2);
        put_column(ev, k, bp / (y2 - y1) + y2 / (y2 - y1) * bpp + fac * c.t / (y2 - y1) * e12);
    }
    return ev;
}

LinearMap4 composite_case2(const BundleParams& p) { return ev_map_case2(p) * inverse(residue_map_case2(p)); }

MatrixTensor2 map_to_tensor(const LinearMap4& m) {
    MatrixTensor2 t(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int ip = 0; ip < 2; ++ip)
                for (int jp = 0; jp < 2; ++jp) t(i, j, ip, jp) = m(2 * ip + jp, 2 * j + i);
    return t;
}

LinearMap4 tensor_to_map(const MatrixTensor2& t) {
    if (t.n() != 2) throw SizeMismatch("curve maps live on Mat(2)");
    LinearMap4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int ip = 0; ip < 2; ++ip)
                for (int jp = 0; jp < 2; ++jp) m(2 * ip + jp, 2 * j + i) = t(i, j, ip, jp);
    return m;
}

BundleParams additive_params(cd u, cd v) {
    BundleParams p;
    p.lambda1 = std::exp(u);
    p.lambda2 = 1.0;
    p.y1 = std::exp(v);
    p.y2 = 1.0;
    return p;
}

MatrixTensor2 oracle_tensor(int curve_case, cd u, cd v, Trivialization triv, EvForm ev) {
    BundleParams p = additive_params(u, v);
    p.trivialization = triv;
    p.ev = ev;
    if (curve_case == 1) return map_to_tensor(composite_case1(p));
    if (curve_case == 2) return map_to_tensor(composite_case2(p));
    throw InvalidArgument("curve case must be 1 or 2");
}

OracleComparison compare_oracle(int curve_case, int samples, std::uint64_t seed, Trivialization triv, EvForm ev) {
    if (curve_case != 1 && curve_case != 2) throw InvalidArgument("curve case must be 1 or 2");
    if (samples < 1) throw InvalidArgument("samples must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-0.6, 0.6);
    const SolutionHandle closed = curve_case == 1 ? SolutionHandle::trig_aybe1() : SolutionHandle::trig_aybe2();
    auto composite = [&](const BundleParams& p) {
        return curve_case == 1 ? composite_case1(p) : composite_case2(p);
    };
    OracleComparison out;
    out.curve_case = curve_case;
    while (out.samples < samples) {
        // Logarithms of lambda1, lambda2, y1, y2, kept small so principal
        // logarithms add without wrap-around.
        const cd s1(uni(rng), uni(rng)), s2(uni(rng), uni(rng));
        const cd t1(uni(rng), uni(rng)), t2(uni(rng), uni(rng));
        const cd shift_s(uni(rng), uni(rng)), shift_t(uni(rng), uni(rng));
        const cd u = s1 - s2, v = t1 - t2;
        if (std::abs(u) < 0.15 || std::abs(v) < 0.15) continue;
        const bool small_logs = std::abs((s1 + shift_s).imag()) < 2.5 && std::abs((s2 + shift_s).imag()) < 2.5 &&
                                std::abs((t1 + shift_t).imag()) < 2.5 && std::abs((t2 + shift_t).imag()) < 2.5;
        if (!small_logs) continue;
        BundleParams p{std::exp(s1), std::exp(s2), std::exp(t1), std::exp(t2), triv, ev};
        BundleParams q{std::exp(s1 + shift_s), std::exp(s2 + shift_s), std::exp(t1 + shift_t),
                       std::exp(t2 + shift_t), triv, ev};
        const LinearMap4 mp = composite(p);
        const LinearMap4 mq = composite(q);
        const MatrixTensor2 ref = eval_aybe(closed, u, v);
        const double scale = std::max(1.0, ref.max_abs());
        out.max_rel_deviation = std::max(out.max_rel_deviation, (map_to_tensor(mp) - ref).max_abs() / scale);
        out.max_lm_dependence =
            std::max(out.max_lm_dependence, (mp - mq).max_abs() / std::max(1.0, mp.max_abs()));
        ++out.samples;
    }
    out.matches = out.max_rel_deviation < 1e-10;
    out.factors = out.max_lm_dependence < 1e-12;
    return out;
}

nlohmann::json to_json(const OracleComparison& c) {
    return {{"case", c.curve_case},
            {"samples", c.samples},
            {"max_rel_deviation", c.max_rel_deviation},
            {"max_lambda_mu_dependence", c.max_lm_dependence},
            {"matches_closed_form", c.matches},
            {"depends_only_on_lambda_mu", c.factors}};
}

nlohmann::json to_json(const LinearMap4& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ybe
