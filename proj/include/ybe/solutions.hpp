// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Solution families of the associative and classical Yang-Baxter equations,
// wrapped as immutable, cheaply copyable handles.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ybe/special_functions.hpp"
#include "ybe/tensor.hpp"

namespace ybe {

enum class Family {
    EllipticAYBE,
    EllipticCYBE,
    TrigAYBE1,
    TrigAYBE2,
    TrigCYBE1,
    TrigCYBE2,
    ScalarKronecker,
    ScalarTrig,
    ScalarRational,
    Constant,  // fixed tensor, used for negative controls
};

std::string family_tag(Family f);
Family family_from_tag(const std::string& tag);

// r(u,v) -> c1 * exp(c2 u v) * r(c3 u, c4 v). For CYBE families only c1, c4 act.
struct Rescale {
    cd c1{1.0};
    cd c2{0.0};
    cd c3{1.0};
    cd c4{1.0};
};

// Apply `outer` on top of `inner`: outer(inner(r)).
Rescale compose(const Rescale& inner, const Rescale& outer);

// Matrix-valued function phi(x, y) used in the equivalence transform.
struct Gauge {
    enum class Kind { Identity, ConstantMatrix, ScalarExp };
    Kind kind = Kind::Identity;
    std::vector<cd> matrix;  // n x n row-major, ConstantMatrix only
    cd c{0.0};               // ScalarExp: phi(x, y) = exp(c x y)

    static Gauge identity() { return {}; }
    static Gauge constant(std::vector<cd> m) { return {Kind::ConstantMatrix, std::move(m), 0.0}; }
    static Gauge scalar_exp(cd c) { return {Kind::ScalarExp, {}, c}; }
};

class SolutionHandle {
public:
    static SolutionHandle elliptic_aybe(int d, int r, cd tau);
    static SolutionHandle elliptic_cybe(int d, int r, cd tau);
    static SolutionHandle trig_aybe1();
    static SolutionHandle trig_aybe2();
    static SolutionHandle trig_cybe1();
    static SolutionHandle trig_cybe2();
    static SolutionHandle scalar_kronecker(cd tau);
    static SolutionHandle scalar_trig();
    static SolutionHandle scalar_rational(cd a, cd b);
    static SolutionHandle constant(const MatrixTensor2& t);

    Family family() const { return family_; }
    int n() const;
    int d() const { return d_; }
    int r() const { return r_; }
    cd tau() const { return tau_; }
    cd a() const { return a_; }
    cd b() const { return b_; }
    bool is_cybe() const;
    bool is_scalar() const;
    const Rescale& rescale() const { return rescale_; }
    const std::vector<Gauge>& gauges() const { return gauges_; }
    const std::optional<MatrixTensor2>& perturbation() const { return perturbation_; }
    const MatrixTensor2& constant_tensor() const { return constant_; }

    SolutionHandle with_rescale(const Rescale& outer) const;
    SolutionHandle with_gauge(const Gauge& g) const;
    SolutionHandle with_perturbation(const MatrixTensor2& p) const;

    // Distance of (u, v) from the excluded set of the family, measured in the
    // coordinates of the underlying closed formula.
    double domain_distance(cd u, cd v) const;
    double domain_distance_cybe(cd v) const;
    // Radius of the largest punctured disc around v = 0 free of other poles of r0.
    double v_pole_free_radius() const;

    // Modular parameters used by the elliptic formulas: d*r*tau and r*tau.
    const ModularParam& mp_drt() const { return *mp_drt_; }
    const ModularParam& mp_rt() const { return *mp_rt_; }
    const ModularParam& mp_tau() const { return *mp_tau_; }

private:
    SolutionHandle() = default;
    Family family_ = Family::Constant;
    int d_ = 1;
    int r_ = 1;
    cd tau_{0.0, 1.0};
    cd a_{1.0};
    cd b_{1.0};
    Rescale rescale_;
    std::vector<Gauge> gauges_;
    std::optional<MatrixTensor2> perturbation_;
    MatrixTensor2 constant_;
    std::shared_ptr<const ModularParam> mp_drt_, mp_rt_, mp_tau_;
};

MatrixTensor2 eval_aybe(const SolutionHandle& h, cd u, cd v);
MatrixTensor2 eval_cybe(const SolutionHandle& h, cd v);
// Alternative zeta-only form of the elliptic CYBE solution. `corrected`
// inserts the 1/d factor on the off-diagonal part.
MatrixTensor2 eval_cybe_forbis(const SolutionHandle& h, cd v, bool corrected = false);

struct LimitResult {
    MatrixTensor2 value;      // last Richardson extrapolant
    double residual = 0.0;    // max |difference| of the two extrapolants
    double order = 0.0;       // observed convergence order of the raw sequence
};

std::vector<cd> default_u_seq(cd base = 1e-4);
LimitResult cybe_limit_of_aybe(const SolutionHandle& h, cd v, const std::vector<cd>& u_seq,
                               double tol = 1e-6);

SolutionHandle equivalence_transform(const SolutionHandle& h, const Gauge& g);

nlohmann::json handle_to_json(const SolutionHandle& h);
SolutionHandle handle_from_json(const nlohmann::json& j);

}  // namespace ybe
