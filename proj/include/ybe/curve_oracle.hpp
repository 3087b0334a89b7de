// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Independent derivation of the trigonometric sl2 solutions from rank-2
// bundles on the nodal curve: the residue map Res_{y1}, the evaluation map
// ev_{y2}, and the composite ev o Res^{-1} as a 4x4 matrix.

#pragma once

#include <array>
#include <cstdint>

#include "json.hpp"
#include "ybe/tensor.hpp"

namespace ybe {

// Local trivialization of O(1) at y: f(lambda, y) = lambda^{1/2} y^{-1/2}, or f = 1.
enum class Trivialization { SquareRoot, Constant };

// Case-2 evaluation map. ExpandedMatrix follows the expanded matrix display,
// Structural the first line of the same display (they differ by y2/y1 on
// the t e12 term).
enum class EvForm { ExpandedMatrix, Structural };

struct BundleParams {
    cd lambda1{1.0};
    cd lambda2{1.0};
    cd y1{1.0};
    cd y2{2.0};
    Trivialization trivialization = Trivialization::SquareRoot;
    EvForm ev = EvForm::ExpandedMatrix;
};

// Endomorphism of Mat(2) in the basis (e11, e12, e21, e22); row-major.
struct LinearMap4 {
    std::array<cd, 16> m{};
    cd& operator()(int r, int c) { return m[static_cast<size_t>(r) * 4 + c]; }
    cd operator()(int r, int c) const { return m[static_cast<size_t>(r) * 4 + c]; }
    double max_abs() const;
};

LinearMap4 operator*(const LinearMap4& a, const LinearMap4& b);
LinearMap4 operator-(const LinearMap4& a, const LinearMap4& b);
LinearMap4 inverse(const LinearMap4& a);
int rank(const LinearMap4& a);
cd determinant(const LinearMap4& a);

// Columns are the coordinates (a, b, c, d) of B; rows the image in Mat(2).
LinearMap4 residue_map_case1(const BundleParams& p);
LinearMap4 ev_map_case1(const BundleParams& p);
LinearMap4 composite_case1(const BundleParams& p);

LinearMap4 residue_map_case2(const BundleParams& p);
LinearMap4 ev_map_case2(const BundleParams& p);
LinearMap4 composite_case2(const BundleParams& p);

// Trace-pairing dictionary c_{i j i' j'} = M[(i',j'), (j,i)].
MatrixTensor2 map_to_tensor(const LinearMap4& m);
LinearMap4 tensor_to_map(const MatrixTensor2& t);

// lambda1 = e^u, lambda2 = 1, y1 = e^v, y2 = 1.
BundleParams additive_params(cd u, cd v);
MatrixTensor2 oracle_tensor(int curve_case, cd u, cd v, Trivialization triv = Trivialization::SquareRoot,
                            EvForm ev = EvForm::ExpandedMatrix);

struct OracleComparison {
    int curve_case = 1;
    int samples = 0;
    double max_rel_deviation = 0.0;   // against the closed-form handle
    double max_lm_dependence = 0.0;   // between parameter sets with equal (lambda, mu)
    bool matches = false;             // max_rel_deviation < 1e-10
    bool factors = false;             // max_lm_dependence < 1e-12
};

OracleComparison compare_oracle(int curve_case, int samples, std::uint64_t seed,
                                Trivialization triv = Trivialization::SquareRoot,
                                EvForm ev = EvForm::ExpandedMatrix);

nlohmann::json to_json(const OracleComparison& c);
nlohmann::json to_json(const LinearMap4& m);

}  // namespace ybe
