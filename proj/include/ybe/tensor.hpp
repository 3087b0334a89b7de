// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// Dense tensors in Mat(n) (x) Mat(n) and Mat(n) (x) Mat(n) (x) Mat(n).

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"

namespace ybe {

using cd = std::complex<double>;

// sum c_{i j i' j'} e_{ij} (x) e_{i'j'}, stored row-major in (i, j, i', j').
class MatrixTensor2 {
public:
    MatrixTensor2() = default;
    explicit MatrixTensor2(int n);

    int n() const { return n_; }
    cd& operator()(int i, int j, int ip, int jp) { return c_[index(i, j, ip, jp)]; }
    cd operator()(int i, int j, int ip, int jp) const { return c_[index(i, j, ip, jp)]; }
    const std::vector<cd>& coeffs() const { return c_; }
    std::vector<cd>& coeffs() { return c_; }

    // a (x) b for n x n matrices given row-major.
    static MatrixTensor2 outer(int n, const std::vector<cd>& a, const std::vector<cd>& b);
    static MatrixTensor2 identity(int n);  // 1 (x) 1

    MatrixTensor2& operator+=(const MatrixTensor2& o);
    MatrixTensor2& operator-=(const MatrixTensor2& o);
    MatrixTensor2& operator*=(cd s);
    friend MatrixTensor2 operator+(MatrixTensor2 a, const MatrixTensor2& b) { return a += b; }
    friend MatrixTensor2 operator-(MatrixTensor2 a, const MatrixTensor2& b) { return a -= b; }
    friend MatrixTensor2 operator*(cd s, MatrixTensor2 a) { return a *= s; }
    friend MatrixTensor2 operator*(MatrixTensor2 a, cd s) { return a *= s; }

    double max_abs() const;
    double frobenius() const;

private:
    size_t index(int i, int j, int ip, int jp) const {
        return ((static_cast<size_t>(i) * n_ + j) * n_ + ip) * n_ + jp;
    }
    int n_ = 0;
    std::vector<cd> c_;
};

// Three-leg tensor stored row-major in (i, j, i', j', i'', j'').
class MatrixTensor3 {
public:
    MatrixTensor3() = default;
    explicit MatrixTensor3(int n);

    int n() const { return n_; }
    cd& at(int i, int j, int ip, int jp, int ipp, int jpp) { return c_[index(i, j, ip, jp, ipp, jpp)]; }
    cd at(int i, int j, int ip, int jp, int ipp, int jpp) const { return c_[index(i, j, ip, jp, ipp, jpp)]; }
    const std::vector<cd>& coeffs() const { return c_; }
    std::vector<cd>& coeffs() { return c_; }

    static MatrixTensor3 identity(int n);

    MatrixTensor3& operator+=(const MatrixTensor3& o);
    MatrixTensor3& operator-=(const MatrixTensor3& o);
    MatrixTensor3& operator*=(cd s);
    friend MatrixTensor3 operator+(MatrixTensor3 a, const MatrixTensor3& b) { return a += b; }
    friend MatrixTensor3 operator-(MatrixTensor3 a, const MatrixTensor3& b) { return a -= b; }

    double max_abs() const;
    double frobenius() const;

private:
    size_t index(int i, int j, int ip, int jp, int ipp, int jpp) const {
        const size_t n = static_cast<size_t>(n_);
        return ((((static_cast<size_t>(i) * n + j) * n + ip) * n + jp) * n + ipp) * n + jpp;
    }
    int n_ = 0;
    std::vector<cd> c_;
};

enum class Legs { L12, L13, L23 };

Legs parse_legs(const std::string& s);
MatrixTensor3 leg_embed(const MatrixTensor2& t, Legs legs);
MatrixTensor3 mul3(const MatrixTensor3& x, const MatrixTensor3& y);
MatrixTensor3 commutator3(const MatrixTensor3& x, const MatrixTensor3& y);
MatrixTensor2 mul2(const MatrixTensor2& x, const MatrixTensor2& y);
MatrixTensor2 swap_legs(const MatrixTensor2& t);
MatrixTensor2 project_sl(const MatrixTensor2& t);
// (A (x) B) t (C (x) D) for n x n row-major matrices.
MatrixTensor2 sandwich(const MatrixTensor2& t, const std::vector<cd>& a, const std::vector<cd>& b,
                       const std::vector<cd>& c, const std::vector<cd>& d);
int rank_as_map(const MatrixTensor2& t);
std::vector<double> singular_values(const MatrixTensor2& t);

nlohmann::json to_json(const MatrixTensor2& t);
nlohmann::json to_json(const MatrixTensor3& t);
MatrixTensor2 tensor2_from_json(const nlohmann::json& j);
MatrixTensor3 tensor3_from_json(const nlohmann::json& j);

}  // namespace ybe
