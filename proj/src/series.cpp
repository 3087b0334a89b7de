// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ybe/errors.hpp"

namespace ybe {

namespace {

using json = nlohmann::json;

void require_scalar(const SolutionHandle& h) {
    if (!h.is_scalar()) throw InvalidArgument("a scalar solution family is required");
}

void require_aybe(const SolutionHandle& h) {
    if (h.is_cybe()) throw InvalidArgument("an AYBE family is required");
}

}  // namespace

MatrixTensor2 LaurentSeries::at(int power) const {
    const int k = power - leading_order;
    if (k < 0 || k >= static_cast<int>(coeffs.size())) {
        return MatrixTensor2(coeffs.empty() ? 1 : coeffs.front().n());
    }
    return coeffs[k];
}

LaurentSeries extract_u_series(const SolutionHandle& h, cd v, int order, const ExtractOptions& opts) {
    require_aybe(h);
    if (order < -1) throw InvalidArgument("order must be >= -1");
    LaurentSeries s = contour_series([&](cd u) { return eval_aybe(h, u, v); }, -2, order, opts);
    const double bound = opts.pole_check * std::max(1.0, s.coeffs[1].max_abs());
    if (s.coeffs[0].max_abs() > bound) {
        throw DomainError("pole of order > 1 at u = 0, or a second pole inside the circle");
    }
    s.coeffs.erase(s.coeffs.begin());
    s.leading_order = -1;
    return s;
}

double radius_consistency(const SolutionHandle& h, cd v, int order, const ExtractOptions& opts) {
    ExtractOptions half = opts;
    half.radius = opts.radius / 2.0;
    const LaurentSeries a = extract_u_series(h, v, order, opts);
    const LaurentSeries b = extract_u_series(h, v, order, half);
    double diff = 0.0;
    for (int p = -1; p <= order; ++p) diff = std::max(diff, (a.at(p) - b.at(p)).max_abs());
    return diff;
}

double scalar_v_radius(const SolutionHandle& h) { return std::min(1.0, 0.5 * h.v_pole_free_radius()); }

LaurentSeries extract_r0_series(const SolutionHandle& h, int order, double radius, const ExtractOptions& uopts) {
    require_aybe(h);
    ExtractOptions vopts;
    vopts.radius = radius > 0.0 ? radius : scalar_v_radius(h);
    return contour_series([&](cd v) { return extract_u_series(h, v, 0, uopts).at(0); }, -1, order, vopts);
}

NormalizedScalar normalize_scalar_r0(const SolutionHandle& h) {
    require_scalar(h);
    NormalizedScalar out;
    const LaurentSeries r0 = extract_r0_series(h, 7);
    const double vr = r0.radius;
    out.residue = extract_u_series(h, cd(0.5 * vr, 0.3 * vr), -1).scalar_at(-1);
    out.v_residue = r0.scalar_at(-1);
    for (int p = -1; p <= 7; ++p) out.raw_r0.push_back(r0.scalar_at(p));
    const double scale = std::max(1.0, std::abs(out.v_residue));
    if (std::abs(out.v_residue) < 1e-12 * scale || std::abs(out.residue) < 1e-14) {
        throw DomainError("r0 has no simple pole at v = 0");
    }
    const cd b = out.v_residue;
    const cd a1 = r0.scalar_at(1);
    out.rescale = Rescale{1.0, -a1 * b, out.residue, b};
    out.c3 = r0.scalar_at(3) * std::pow(b, 3);
    out.c5 = r0.scalar_at(5) * std::pow(b, 5);
    return out;
}

ScalarClassification classify_scalar(const SolutionHandle& h) {
    const NormalizedScalar ns = normalize_scalar_r0(h);
    ScalarClassification c;
    c.c3 = ns.c3;
    c.c5 = ns.c5;
    if (std::abs(c.c3) < 1e-12) {
        if (std::abs(c.c5) > 1e-10) {
            c.infinite = true;
            c.verdict = "elliptic-like";
        } else {
            c.verdict = "rational-like";
        }
        return c;
    }
    const cd C = c.c5 * c.c5 / (c.c3 * c.c3 * c.c3);
    c.C = C;
    const cd trig = -20.0 / 49.0;
    c.verdict = std::abs(C - trig) < 1e-8 * std::max(1.0, std::abs(C)) ? "trigonometric-like" : "elliptic-like";
    return c;
}

json to_json(const ScalarClassification& c) {
    json j{{"c3", {c.c3.real(), c.c3.imag()}}, {"c5", {c.c5.real(), c.c5.imag()}}, {"verdict", c.verdict}};
    if (c.C) {
        j["C"] = {c.C->real(), c.C->imag()};
    } else {
        j["C"] = c.infinite ? json("infinity") : json(nullptr);
    }
    return j;
}

std::pair<cd, cd> scalar_r0_and_derivative(const SolutionHandle& hn, cd v) {
    auto r0 = [&](cd w) { return extract_u_series(hn, w, 0).at(0); };
    const double pole_gap = hn.domain_distance_cybe(v) / std::abs(hn.rescale().c4);
    ExtractOptions dopts;
    dopts.radius = std::min(0.05, 0.25 * pole_gap);
    dopts.initial_nodes = 16;
    const LaurentSeries local = contour_series([&](cd z) { return r0(v + z); }, 0, 1, dopts);
    return {local.scalar_at(0), local.scalar_at(1)};
}

ResidualReport check_r1_relation(const SolutionHandle& h, const std::vector<cd>& pts) {
    require_scalar(h);
    const SolutionHandle hn = h.with_rescale(normalize_scalar_r0(h).rescale);
    ResidualReport rep;
    rep.tag = "r1-relation";
    rep.tolerance = 1e-8;
    for (const cd& v : pts) {
        try {
            const auto [r0, dr0] = scalar_r0_and_derivative(hn, v);
            const cd r1 = extract_u_series(hn, v, 1).scalar_at(1);
            const double res = std::abs(r1 - 0.5 * (dr0 + r0 * r0));
            rep.max_abs = std::max(rep.max_abs, res);
            rep.max_rel = std::max(rep.max_rel, res / std::max({1.0, std::abs(r1), std::norm(r0)}));
            rep.points.push_back({v});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    rep.pass = !rep.points.empty() && rep.max_rel < rep.tolerance;
    return rep;
}

cd check_aux4(const SolutionHandle& h, cd v, cd vp) {
    require_scalar(h);
    const SolutionHandle hn = h.with_rescale(normalize_scalar_r0(h).rescale);
    const auto [a, da] = scalar_r0_and_derivative(hn, v);
    const auto [b, db] = scalar_r0_and_derivative(hn, vp);
    const auto [c, dc] = scalar_r0_and_derivative(hn, v + vp);
    const cd s = a + b - c;
    return s * s + da + db + dc;
}

SolutionHandle normalize_pole(const SolutionHandle& h, cd v_probe) {
    require_aybe(h);
    const MatrixTensor2 rm1 = extract_u_series(h, v_probe, -1).at(-1);
    const cd s = rm1(0, 0, 0, 0);
    if (std::abs(s) < 1e-14) throw DomainError("no simple pole in u at u = 0");
    const MatrixTensor2 expect = s * MatrixTensor2::identity(h.n());
    if ((rm1 - expect).max_abs() > 1e-8 * std::abs(s)) {
        throw DomainError("u-pole coefficient is not a multiple of 1 (x) 1");
    }
    return h.with_rescale(Rescale{1.0 / s, 0.0, 1.0, 1.0});
}

MatrixTensor3 check_aux5(const SolutionHandle& h, cd v, cd vp) {
    const SolutionHandle hn = normalize_pole(h);
    const LaurentSeries sa = extract_u_series(hn, v, 1);
    const LaurentSeries sb = extract_u_series(hn, vp, 1);
    const LaurentSeries sc = extract_u_series(hn, v + vp, 1);
    const MatrixTensor3 a12 = leg_embed(sa.at(0), Legs::L12);
    const MatrixTensor3 c13 = leg_embed(sc.at(0), Legs::L13);
    const MatrixTensor3 b23 = leg_embed(sb.at(0), Legs::L23);
    const MatrixTensor3 lhs = mul3(a12, c13) - mul3(b23, a12) + mul3(c13, b23);
    const MatrixTensor3 rhs =
        leg_embed(sa.at(1), Legs::L12) + leg_embed(sb.at(1), Legs::L23) + leg_embed(sc.at(1), Legs::L13);
    return lhs - rhs;
}

ReconstructionResult reconstruction_residual(const SolutionHandle& h, cd v, cd vp) {
    const SolutionHandle hn = normalize_pole(h);
    // A_a(w) = r_{a-1}(w), a = 0..3
    auto coeffs = [&](cd w) {
        const LaurentSeries s = extract_u_series(hn, w, 2);
        return std::array<MatrixTensor2, 4>{s.at(-1), s.at(0), s.at(1), s.at(2)};
    };
    const auto Av = coeffs(v), Avp = coeffs(vp), Avv = coeffs(v + vp);
    std::array<std::array<MatrixTensor3, 4>, 4> P1, P2, P3;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; a + b < 4; ++b) {
            P1[a][b] = mul3(leg_embed(Av[a], Legs::L12), leg_embed(Avv[b], Legs::L13));
            P2[a][b] = mul3(leg_embed(Avp[a], Legs::L23), leg_embed(Av[b], Legs::L12));
            P3[a][b] = mul3(leg_embed(Avv[a], Legs::L13), leg_embed(Avp[b], Legs::L23));
        }
    const std::array<std::pair<cd, cd>, 3> probes{{{1.0, 0.37}, {1.0, -1.6}, {cd(0.45, 0.2), 1.0}}};
    // Components that vanish identically (rational case) are judged against
    // the overall size of the expansion instead of their own rounding noise.
    double global = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; a + b < 4; ++b)
            global = std::max({global, P1[a][b].frobenius(), P2[a][b].frobenius(), P3[a][b].frobenius()});
    ReconstructionResult res;
    for (int D = 1; D <= 4; ++D) {
        double worst = 0.0;
        for (const auto& [u, up] : probes) {
            MatrixTensor3 t1(hn.n()), t2(hn.n()), t3(hn.n());
            for (int a = 0; a < D; ++a) {
                const int b = D - 1 - a;
                MatrixTensor3 x = P1[a][b];
                x *= -u * std::pow(-up, a) * std::pow(u + up, b);
                t1 += x;
                MatrixTensor3 y = P2[a][b];
                y *= -up * std::pow(u + up, a) * std::pow(u, b);
                t2 += y;
                MatrixTensor3 z = P3[a][b];
                z *= (u + up) * std::pow(u, a) * std::pow(up, b);
                t3 += z;
            }
            const double scale = std::max({t1.frobenius(), t2.frobenius(), t3.frobenius(), 1e-6 * global});
            worst = std::max(worst, (t1 + t2 + t3).frobenius() / scale);
        }
        res.degree_rel.push_back(worst);
        res.max_rel = std::max(res.max_rel, worst);
    }
    return res;
}

ResidualReport check_reconstruction_chain(const SolutionHandle& h, const std::vector<std::pair<cd, cd>>& pts,
                                          double tol) {
    ResidualReport rep;
    rep.tag = "reconstruction";
    rep.tolerance = tol;
    for (const auto& [v, vp] : pts) {
        try {
            const ReconstructionResult r = reconstruction_residual(h, v, vp);
            rep.max_rel = std::max(rep.max_rel, r.max_rel);
            rep.points.push_back({v, vp});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    rep.max_abs = rep.max_rel;
    rep.pass = !rep.points.empty() && rep.max_rel < rep.tolerance;
    return rep;
}

}  // namespace ybe
