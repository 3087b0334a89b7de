// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ybe/errors.hpp"

namespace ybe {

namespace {

using json = nlohmann::json;

bool is_elliptic(const SolutionHandle& h) {
    return h.family() == Family::EllipticAYBE || h.family() == Family::EllipticCYBE ||
           h.family() == Family::ScalarKronecker;
}

cd sample_disc(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double rr = radius * std::sqrt(uni(rng));
    const double th = 2.0 * kPi * uni(rng);
    return std::polar(rr, th);
}

bool wants(const SamplingConfig& cfg, const std::string& check) {
    return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), check) != cfg.checks.end();
}

ResidualReport finish_report(ResidualReport r) {
    r.pass = !r.points.empty() && r.max_rel < r.tolerance;
    if (r.points.empty() && r.note.empty()) r.note = "no usable sample points";
    return r;
}

}  // namespace

json to_json(const ResidualReport& r) {
    json pts = json::array();
    for (const auto& p : r.points) {
        json row = json::array();
        for (const cd& z : p) row.push_back(json::array({z.real(), z.imag()}));
        pts.push_back(row);
    }
    json j{{"tag", r.tag},       {"samples", r.points.size()}, {"skipped", r.skipped},
           {"max_abs", r.max_abs}, {"max_rel", r.max_rel},     {"tolerance", r.tolerance},
           {"pass", r.pass},     {"points", pts}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

double Residual3::relative() const { return scale > 0.0 ? value.max_abs() / scale : value.max_abs(); }

Residual3 aybe_residual_scaled(const SolutionHandle& h, cd u, cd up, cd v, cd vp) {
    const MatrixTensor3 a = mul3(leg_embed(eval_aybe(h, -up, v), Legs::L12),
                                 leg_embed(eval_aybe(h, u + up, v + vp), Legs::L13));
    const MatrixTensor3 b = mul3(leg_embed(eval_aybe(h, u + up, vp), Legs::L23),
                                 leg_embed(eval_aybe(h, u, v), Legs::L12));
    const MatrixTensor3 c = mul3(leg_embed(eval_aybe(h, u, v + vp), Legs::L13),
                                 leg_embed(eval_aybe(h, up, vp), Legs::L23));
    Residual3 r;
    r.value = a - b + c;
    r.scale = std::max({a.frobenius(), b.frobenius(), c.frobenius()});
    return r;
}

MatrixTensor3 aybe_residual(const SolutionHandle& h, cd u, cd up, cd v, cd vp) {
    return aybe_residual_scaled(h, u, up, v, vp).value;
}

Residual3 cybe_residual_scaled(const SolutionHandle& h, cd v, cd vp) {
    // [r12(x), r23(y)] + [r12(x), r13(x+y)] + [r13(x+y), r23(y)] with x = v, y = v'
    const MatrixTensor3 r12 = leg_embed(eval_cybe(h, v), Legs::L12);
    const MatrixTensor3 r13 = leg_embed(eval_cybe(h, v + vp), Legs::L13);
    const MatrixTensor3 r23 = leg_embed(eval_cybe(h, vp), Legs::L23);
    const MatrixTensor3 a = commutator3(r12, r23);
    const MatrixTensor3 b = commutator3(r12, r13);
    const MatrixTensor3 c = commutator3(r13, r23);
    Residual3 r;
    r.value = a + b + c;
    r.scale = std::max({a.frobenius(), b.frobenius(), c.frobenius()});
    return r;
}

MatrixTensor3 cybe_residual(const SolutionHandle& h, cd v, cd vp) { return cybe_residual_scaled(h, v, vp).value; }

Residual3 commutator_form_residual(const SolutionHandle& h, cd u, cd up, cd v, cd vp) {
    const MatrixTensor3 a = commutator3(leg_embed(eval_aybe(h, -up, v), Legs::L12),
                                        leg_embed(eval_aybe(h, u + up, v + vp), Legs::L13));
    const MatrixTensor3 b = commutator3(leg_embed(eval_aybe(h, u + up, vp), Legs::L23),
                                        leg_embed(eval_aybe(h, u, v), Legs::L12));
    const MatrixTensor3 c = commutator3(leg_embed(eval_aybe(h, u, v + vp), Legs::L13),
                                        leg_embed(eval_aybe(h, up, vp), Legs::L23));
    Residual3 r;
    r.value = a - b + c;
    r.scale = std::max({a.frobenius(), b.frobenius(), c.frobenius()});
    return r;
}

MatrixTensor2 unitarity_residual(const SolutionHandle& h, cd u, cd v) {
    return swap_legs(eval_aybe(h, -u, -v)) + eval_aybe(h, u, v);
}

MatrixTensor2 cybe_unitarity_residual(const SolutionHandle& h, cd v) {
    return swap_legs(eval_cybe(h, -v)) + eval_cybe(h, v);
}

ResidualReport nondegeneracy_check(const SolutionHandle& h, const std::vector<std::pair<cd, cd>>& pts) {
    ResidualReport rep;
    rep.tag = "nondegeneracy";
    const int n = h.n();
    // A CYBE tensor lives in sl_n (x) sl_n, so full rank there is n^2 - 1.
    const int target = h.is_cybe() ? n * n - 1 : n * n;
    rep.tolerance = 0.5;
    int worst = target;
    for (const auto& [u, v] : pts) {
        try {
            const MatrixTensor2 t = h.is_cybe() ? eval_cybe(h, v) : eval_aybe(h, u, v);
            const int rk = rank_as_map(t);
            worst = std::min(worst, rk);
            rep.max_abs = std::max(rep.max_abs, static_cast<double>(target - rk));
            rep.points.push_back({u, v});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    rep.max_rel = rep.max_abs;
    rep.note = "minimum rank " + std::to_string(worst) + " of " + std::to_string(target);
    return finish_report(rep);
}

double default_sampling_radius(const SolutionHandle& h) { return is_elliptic(h) ? 0.4 : 1.0; }

std::vector<std::array<cd, 4>> sample_aybe_points(const SolutionHandle& h, const SamplingConfig& cfg, int count) {
    std::mt19937_64 rng(cfg.seed);
    const double radius = cfg.radius > 0.0 ? cfg.radius : default_sampling_radius(h);
    std::vector<std::array<cd, 4>> out;
    for (int attempt = 0; attempt < 200 * count && static_cast<int>(out.size()) < count; ++attempt) {
        const cd u = sample_disc(rng, radius), up = sample_disc(rng, radius);
        const cd v = sample_disc(rng, radius), vp = sample_disc(rng, radius);
        const double dist = std::min({h.domain_distance(-up, v), h.domain_distance(u + up, v + vp),
                                      h.domain_distance(u + up, vp), h.domain_distance(u, v),
                                      h.domain_distance(u, v + vp), h.domain_distance(up, vp)});
        if (dist < cfg.reject) continue;
        out.push_back({u, up, v, vp});
    }
    return out;
}

std::vector<std::array<cd, 2>> sample_cybe_points(const SolutionHandle& h, const SamplingConfig& cfg, int count) {
    std::mt19937_64 rng(cfg.seed);
    const double radius = cfg.radius > 0.0 ? cfg.radius : default_sampling_radius(h);
    std::vector<std::array<cd, 2>> out;
    for (int attempt = 0; attempt < 200 * count && static_cast<int>(out.size()) < count; ++attempt) {
        const cd v = sample_disc(rng, radius), vp = sample_disc(rng, radius);
        const double dist = std::min({h.domain_distance_cybe(v), h.domain_distance_cybe(vp),
                                      h.domain_distance_cybe(v + vp)});
        if (dist < cfg.reject) continue;
        out.push_back({v, vp});
    }
    return out;
}

ResidualReport aybe_report(const SolutionHandle& h, const SamplingConfig& cfg) {
    ResidualReport rep;
    rep.tag = "aybe";
    rep.tolerance = cfg.tol_aybe;
    for (const auto& p : sample_aybe_points(h, cfg, cfg.samples)) {
        try {
            const Residual3 r = aybe_residual_scaled(h, p[0], p[1], p[2], p[3]);
            rep.max_abs = std::max(rep.max_abs, r.value.max_abs());
            rep.max_rel = std::max(rep.max_rel, r.relative());
            rep.points.push_back({p.begin(), p.end()});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    return finish_report(rep);
}

ResidualReport commutator_report(const SolutionHandle& h, const SamplingConfig& cfg) {
    ResidualReport rep;
    rep.tag = "aybe-commutator";
    rep.tolerance = cfg.tol_aybe;
    for (const auto& p : sample_aybe_points(h, cfg, cfg.samples)) {
        try {
            const Residual3 r = commutator_form_residual(h, p[0], p[1], p[2], p[3]);
            rep.max_abs = std::max(rep.max_abs, r.value.max_abs());
            rep.max_rel = std::max(rep.max_rel, r.relative());
            rep.points.push_back({p.begin(), p.end()});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    return finish_report(rep);
}

ResidualReport cybe_report(const SolutionHandle& h, const SamplingConfig& cfg) {
    ResidualReport rep;
    rep.tag = "cybe";
    rep.tolerance = cfg.tol_cybe;
    for (const auto& p : sample_cybe_points(h, cfg, cfg.samples)) {
        try {
            const Residual3 r = cybe_residual_scaled(h, p[0], p[1]);
            rep.max_abs = std::max(rep.max_abs, r.value.max_abs());
            rep.max_rel = std::max(rep.max_rel, r.relative());
            rep.points.push_back({p.begin(), p.end()});
        } catch (const PoleError&) {
            ++rep.skipped;
        }
    }
    return finish_report(rep);
}

ResidualReport unitarity_report(const SolutionHandle& h, const SamplingConfig& cfg) {
    ResidualReport rep;
    rep.tag = "unitarity";
    rep.tolerance = cfg.tol_unitarity;
    if (h.is_cybe()) {
        for (const auto& p : sample_cybe_points(h, cfg, cfg.unitarity_samples)) {
            try {
                const MatrixTensor2 r = cybe_unitarity_residual(h, p[0]);
                const double scale = std::max(1.0, eval_cybe(h, p[0]).max_abs());
                rep.max_abs = std::max(rep.max_abs, r.max_abs());
                rep.max_rel = std::max(rep.max_rel, r.max_abs() / scale);
                rep.points.push_back({p[0]});
            } catch (const PoleError&) {
                ++rep.skipped;
            }
        }
    } else {
        for (const auto& p : sample_aybe_points(h, cfg, cfg.unitarity_samples)) {
            try {
                const MatrixTensor2 r = unitarity_residual(h, p[0], p[2]);
                const double scale = std::max(1.0, eval_aybe(h, p[0], p[2]).max_abs());
                rep.max_abs = std::max(rep.max_abs, r.max_abs());
                rep.max_rel = std::max(rep.max_rel, r.max_abs() / scale);
                rep.points.push_back({p[0], p[2]});
            } catch (const PoleError&) {
                ++rep.skipped;
            }
        }
    }
    return finish_report(rep);
}

std::vector<ResidualReport> run_suite(const SolutionHandle& h, const SamplingConfig& cfg) {
    std::vector<ResidualReport> out;
    if (h.is_cybe()) {
        if (wants(cfg, "cybe")) out.push_back(cybe_report(h, cfg));
    } else {
        if (wants(cfg, "aybe")) out.push_back(aybe_report(h, cfg));
        if (wants(cfg, "commutator")) out.push_back(commutator_report(h, cfg));
    }
    if (wants(cfg, "unitarity")) out.push_back(unitarity_report(h, cfg));
    if (wants(cfg, "nondegeneracy")) {
        std::vector<std::pair<cd, cd>> pts;
        if (h.is_cybe()) {
            for (const auto& p : sample_cybe_points(h, cfg, cfg.nondegeneracy_samples)) pts.emplace_back(0.0, p[0]);
        } else {
            for (const auto& p : sample_aybe_points(h, cfg, cfg.nondegeneracy_samples)) pts.emplace_back(p[0], p[2]);
        }
        out.push_back(nondegeneracy_check(h, pts));
    }
    return out;
}

}  // namespace ybe
