// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Contour-integral Laurent extraction, the scalar normal form and its
// invariant C = c5^2 / c3^3, and the relations between low-order
// coefficients that every AYBE solution must satisfy.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ybe/errors.hpp"
#include "ybe/solutions.hpp"
#include "ybe/verification.hpp"

namespace ybe {

struct LaurentSeries {
    int leading_order = -1;
    std::vector<MatrixTensor2> coeffs;  // coeffs[k] multiplies x^(leading_order + k)
    double radius = 0.0;
    int nodes = 0;

    // Coefficient of x^power; zero tensor when outside the stored range.
    MatrixTensor2 at(int power) const;
    cd scalar_at(int power) const { return at(power)(0, 0, 0, 0); }
};

struct ExtractOptions {
    double radius = 0.05;
    int initial_nodes = 64;
    int max_nodes = 4096;
    double tol = 1e-10;        // agreement between successive node doublings
    double pole_check = 1e-9;  // bound on the u^-2 coefficient
};

// Generic trapezoidal contour extraction of f around 0.
template <class F>
LaurentSeries contour_series(F&& f, int lowest, int highest, const ExtractOptions& opts);

// r(u, v) = sum_k r_k(v) u^k for k = -1..order at fixed v.
LaurentSeries extract_u_series(const SolutionHandle& h, cd v, int order, const ExtractOptions& opts = {});

// Max coefficient deviation between radii rho and rho/2.
double radius_consistency(const SolutionHandle& h, cd v, int order, const ExtractOptions& opts = {});

// Laurent series of the scalar r0(v) around v = 0, from -1 up to `order`.
LaurentSeries extract_r0_series(const SolutionHandle& h, int order, double radius = 0.0,
                                const ExtractOptions& uopts = {});

// Radius used for v-circles in scalar classification.
double scalar_v_radius(const SolutionHandle& h);

struct NormalizedScalar {
    Rescale rescale;             // maps the handle to normal form
    cd residue{1.0};             // raw r_{-1}
    cd v_residue{1.0};           // raw v^{-1} coefficient of r0
    cd c3{0.0};
    cd c5{0.0};
    std::vector<cd> raw_r0;      // raw r0 coefficients of v^-1 .. v^7
};

NormalizedScalar normalize_scalar_r0(const SolutionHandle& h);

struct ScalarClassification {
    cd c3{0.0};
    cd c5{0.0};
    std::optional<cd> C;  // empty means the infinity marker or undefined
    bool infinite = false;
    std::string verdict;  // rational-like, elliptic-like, trigonometric-like
};

ScalarClassification classify_scalar(const SolutionHandle& h);
nlohmann::json to_json(const ScalarClassification& c);

// Residuals evaluated in the scalar normal form.
ResidualReport check_r1_relation(const SolutionHandle& h, const std::vector<cd>& pts);
cd check_aux4(const SolutionHandle& h, cd v, cd vp);

// r0 and its derivative of the normal-form scalar handle at v.
std::pair<cd, cd> scalar_r0_and_derivative(const SolutionHandle& normalized, cd v);

// (aux5): r0 r0 products against r1 sums, after normalizing r_{-1} to 1 (x) 1.
MatrixTensor3 check_aux5(const SolutionHandle& h, cd v, cd vp);

struct ReconstructionResult {
    std::vector<double> degree_rel;  // relative residual of the degree 1..4 components
    double max_rel = 0.0;
};

// Homogeneous components of the AYBE multiplied by u u' (u + u').
ReconstructionResult reconstruction_residual(const SolutionHandle& h, cd v, cd vp);
ResidualReport check_reconstruction_chain(const SolutionHandle& h, const std::vector<std::pair<cd, cd>>& pts,
                                          double tol = 1e-6);

// Handle rescaled by c1 = 1/s where r_{-1} = s (1 (x) 1).
SolutionHandle normalize_pole(const SolutionHandle& h, cd v_probe = cd(0.17, 0.11));

// ---------------------------------------------------------------------------

template <class F>
LaurentSeries contour_series(F&& f, int lowest, int highest, const ExtractOptions& opts) {
    LaurentSeries prev;
    for (int nodes = opts.initial_nodes; nodes <= opts.max_nodes; nodes *= 2) {
        LaurentSeries s;
        s.leading_order = lowest;
        s.radius = opts.radius;
        s.nodes = nodes;
        std::vector<MatrixTensor2> samples;
        samples.reserve(nodes);
        for (int k = 0; k < nodes; ++k) {
            const double th = 2.0 * kPi * k / nodes;
            samples.push_back(f(std::polar(opts.radius, th)));
        }
        const int n = samples.front().n();
        double scale = 0.0;
        for (const auto& t : samples) scale = std::max(scale, t.max_abs());
        for (int p = lowest; p <= highest; ++p) {
            MatrixTensor2 acc(n);
            for (int k = 0; k < nodes; ++k) {
                const double th = 2.0 * kPi * k / nodes;
                acc += std::polar(std::pow(opts.radius, -p), -p * th) * samples[k];
            }
            acc *= 1.0 / nodes;
            s.coeffs.push_back(std::move(acc));
        }
        if (!prev.coeffs.empty()) {
            double diff = 0.0;
            for (size_t i = 0; i < s.coeffs.size(); ++i) {
                const double w = std::pow(opts.radius, lowest + static_cast<int>(i));
                diff = std::max(diff, (s.coeffs[i] - prev.coeffs[i]).max_abs() * w);
            }
            if (diff <= opts.tol * std::max(1.0, scale)) return s;
        }
        prev = std::move(s);
    }
    throw NotConvergent("contour coefficients did not settle within the node budget");
}

}  // namespace ybe
