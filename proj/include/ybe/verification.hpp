// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Residuals of the functional equations and seeded verification suites.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ybe/solutions.hpp"
#include "ybe/tensor.hpp"

namespace ybe {

struct ResidualReport {
    std::string tag;
    std::vector<std::vector<cd>> points;  // sample points actually used
    int skipped = 0;                      // samples rejected by a domain error
    double max_abs = 0.0;
    double max_rel = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

nlohmann::json to_json(const ResidualReport& r);

// A three-leg residual together with the largest Frobenius norm among its terms.
struct Residual3 {
    MatrixTensor3 value;
    double scale = 0.0;
    double relative() const;
};

MatrixTensor3 aybe_residual(const SolutionHandle& h, cd u, cd up, cd v, cd vp);
Residual3 aybe_residual_scaled(const SolutionHandle& h, cd u, cd up, cd v, cd vp);

MatrixTensor3 cybe_residual(const SolutionHandle& h, cd v, cd vp);
Residual3 cybe_residual_scaled(const SolutionHandle& h, cd v, cd vp);

// Commutator form of the AYBE used to derive the CYBE limit.
Residual3 commutator_form_residual(const SolutionHandle& h, cd u, cd up, cd v, cd vp);

MatrixTensor2 unitarity_residual(const SolutionHandle& h, cd u, cd v);
MatrixTensor2 cybe_unitarity_residual(const SolutionHandle& h, cd v);

// For AYBE families each point is (u, v); for CYBE families only v is read.
ResidualReport nondegeneracy_check(const SolutionHandle& h, const std::vector<std::pair<cd, cd>>& pts);

struct SamplingConfig {
    std::uint64_t seed = 20240607;
    int samples = 25;
    int unitarity_samples = 20;
    int nondegeneracy_samples = 5;
    double radius = 0.0;  // 0 selects 0.4 for elliptic families and 1.0 otherwise
    double reject = 1e-3;
    double tol_aybe = 1e-8;
    double tol_cybe = 1e-8;
    double tol_unitarity = 1e-10;
    std::vector<std::string> checks;  // empty runs everything applicable
};

double default_sampling_radius(const SolutionHandle& h);

// Seeded quadruples (u, u', v, v') with all six AYBE arguments in the domain.
std::vector<std::array<cd, 4>> sample_aybe_points(const SolutionHandle& h, const SamplingConfig& cfg, int count);
// Seeded pairs (v, v') with v, v', v + v' in the domain.
std::vector<std::array<cd, 2>> sample_cybe_points(const SolutionHandle& h, const SamplingConfig& cfg, int count);

ResidualReport aybe_report(const SolutionHandle& h, const SamplingConfig& cfg);
ResidualReport cybe_report(const SolutionHandle& h, const SamplingConfig& cfg);
ResidualReport commutator_report(const SolutionHandle& h, const SamplingConfig& cfg);
ResidualReport unitarity_report(const SolutionHandle& h, const SamplingConfig& cfg);

std::vector<ResidualReport> run_suite(const SolutionHandle& h, const SamplingConfig& cfg);

}  // namespace ybe
