// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT

#include "ybe/tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ybe/errors.hpp"

namespace ybe {

namespace {

using Mat = Eigen::MatrixXcd;

size_t pow_size(int n, int k) {
    size_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<size_t>(n);
    return r;
}

void check_n(int n) {
    if (n < 1) throw InvalidArgument("tensor dimension must be positive");
}

// Operator form on V^{(x)3}: rows (i,i',i''), columns (j,j',j'').
Mat as_operator(const MatrixTensor3& t) {
    const int n = t.n();
    const int n3 = n * n * n;
    Mat m(n3, n3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp)
                    for (int ipp = 0; ipp < n; ++ipp)
                        for (int jpp = 0; jpp < n; ++jpp)
                            m((i * n + ip) * n + ipp, (j * n + jp) * n + jpp) = t.at(i, j, ip, jp, ipp, jpp);
    return m;
}

MatrixTensor3 from_operator(const Mat& m, int n) {
    MatrixTensor3 t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp)
                    for (int ipp = 0; ipp < n; ++ipp)
                        for (int jpp = 0; jpp < n; ++jpp)
                            t.at(i, j, ip, jp, ipp, jpp) = m((i * n + ip) * n + ipp, (j * n + jp) * n + jpp);
    return t;
}

Mat as_operator(const MatrixTensor2& t) {
    const int n = t.n();
    Mat m(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) m(i * n + ip, j * n + jp) = t(i, j, ip, jp);
    return m;
}

MatrixTensor2 from_operator2(const Mat& m, int n) {
    MatrixTensor2 t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) t(i, j, ip, jp) = m(i * n + ip, j * n + jp);
    return t;
}

Mat square(const std::vector<cd>& a, int n) {
    if (a.size() != static_cast<size_t>(n) * n) throw SizeMismatch("matrix has the wrong number of entries");
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = a[static_cast<size_t>(i) * n + j];
    return m;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

template <class T>
double max_abs_of(const std::vector<T>& v) {
    double r = 0.0;
    for (const auto& x : v) r = std::max(r, std::abs(x));
    return r;
}

template <class T>
double frob_of(const std::vector<T>& v) {
    double r = 0.0;
    for (const auto& x : v) r += std::norm(x);
    return std::sqrt(r);
}

nlohmann::json coeff_list(const std::vector<cd>& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cd& z : c) arr.push_back({z.real(), z.imag()});
    return arr;
}

std::vector<cd> parse_coeffs(const nlohmann::json& j, size_t expected) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) throw ParseError("tensor record lacks a coeffs array");
    const auto& arr = j["coeffs"];
    if (arr.size() != expected) throw ParseError("tensor record has the wrong number of coefficients");
    std::vector<cd> out;
    out.reserve(expected);
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ParseError("tensor coefficient must be a [re, im] pair");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

int parse_header(const nlohmann::json& j, int legs) {
    if (!j.is_object() || !j.contains("n") || !j.contains("legs")) throw ParseError("tensor record lacks n or legs");
    const int n = j["n"].get<int>();
    if (n < 1) throw ParseError("tensor record has non-positive n");
    if (j["legs"].get<int>() != legs) throw ParseError("tensor record has the wrong number of legs");
    return n;
}

}  // namespace

MatrixTensor2::MatrixTensor2(int n) : n_(n) {
    check_n(n);
    c_.assign(pow_size(n, 4), cd(0.0));
}

MatrixTensor2 MatrixTensor2::outer(int n, const std::vector<cd>& a, const std::vector<cd>& b) {
    const size_t nn = static_cast<size_t>(n) * n;
    if (a.size() != nn || b.size() != nn) throw SizeMismatch("outer product factors must be n x n");
    MatrixTensor2 t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) t(i, j, ip, jp) = a[i * n + j] * b[ip * n + jp];
    return t;
}

MatrixTensor2 MatrixTensor2::identity(int n) {
    MatrixTensor2 t(n);
    for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) t(i, i, ip, ip) = 1.0;
    return t;
}

MatrixTensor2& MatrixTensor2::operator+=(const MatrixTensor2& o) {
    if (o.n_ != n_) throw SizeMismatch("tensor sizes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

MatrixTensor2& MatrixTensor2::operator-=(const MatrixTensor2& o) {
    if (o.n_ != n_) throw SizeMismatch("tensor sizes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

MatrixTensor2& MatrixTensor2::operator*=(cd s) {
    for (auto& z : c_) z *= s;
    return *this;
}

double MatrixTensor2::max_abs() const { return max_abs_of(c_); }
double MatrixTensor2::frobenius() const { return frob_of(c_); }

MatrixTensor3::MatrixTensor3(int n) : n_(n) {
    check_n(n);
    c_.assign(pow_size(n, 6), cd(0.0));
}

MatrixTensor3 MatrixTensor3::identity(int n) {
    MatrixTensor3 t(n);
    for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip)
            for (int ipp = 0; ipp < n; ++ipp) t.at(i, i, ip, ip, ipp, ipp) = 1.0;
    return t;
}

MatrixTensor3& MatrixTensor3::operator+=(const MatrixTensor3& o) {
    if (o.n_ != n_) throw SizeMismatch("tensor sizes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

MatrixTensor3& MatrixTensor3::operator-=(const MatrixTensor3& o) {
    if (o.n_ != n_) throw SizeMismatch("tensor sizes differ");
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

MatrixTensor3& MatrixTensor3::operator*=(cd s) {
    for (auto& z : c_) z *= s;
    return *this;
}

double MatrixTensor3::max_abs() const { return max_abs_of(c_); }
double MatrixTensor3::frobenius() const { return frob_of(c_); }

Legs parse_legs(const std::string& s) {
    if (s == "12") return Legs::L12;
    if (s == "13") return Legs::L13;
    if (s == "23") return Legs::L23;
    throw InvalidArgument("leg pair must be one of 12, 13, 23; got '" + s + "'");
}

MatrixTensor3 leg_embed(const MatrixTensor2& t, Legs legs) {
    const int n = t.n();
    MatrixTensor3 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) {
                    const cd c = t(i, j, ip, jp);
                    if (c == cd(0.0)) continue;
                    for (int k = 0; k < n; ++k) {
                        switch (legs) {
                            case Legs::L12: out.at(i, j, ip, jp, k, k) += c; break;
                            case Legs::L13: out.at(i, j, k, k, ip, jp) += c; break;
                            case Legs::L23: out.at(k, k, i, j, ip, jp) += c; break;
                        }
                    }
                }
    return out;
}

MatrixTensor3 mul3(const MatrixTensor3& x, const MatrixTensor3& y) {
    if (x.n() != y.n()) throw SizeMismatch("mul3 operands have different n");
    return from_operator(as_operator(x) * as_operator(y), x.n());
}

MatrixTensor3 commutator3(const MatrixTensor3& x, const MatrixTensor3& y) {
    if (x.n() != y.n()) throw SizeMismatch("commutator operands have different n");
    const Mat a = as_operator(x);
    const Mat b = as_operator(y);
    return from_operator(a * b - b * a, x.n());
}

MatrixTensor2 mul2(const MatrixTensor2& x, const MatrixTensor2& y) {
    if (x.n() != y.n()) throw SizeMismatch("mul2 operands have different n");
    return from_operator2(as_operator(x) * as_operator(y), x.n());
}

MatrixTensor2 swap_legs(const MatrixTensor2& t) {
    const int n = t.n();
    MatrixTensor2 out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) out(i, j, ip, jp) = t(ip, jp, i, j);
    return out;
}

MatrixTensor2 project_sl(const MatrixTensor2& t) {
    const int n = t.n();
    const double inv = 1.0 / n;
    MatrixTensor2 out = t;
    // First leg: subtract (tr_1 / n) 1 (x) (.)
    for (int ip = 0; ip < n; ++ip)
        for (int jp = 0; jp < n; ++jp) {
            cd tr = 0.0;
            for (int i = 0; i < n; ++i) tr += out(i, i, ip, jp);
            for (int i = 0; i < n; ++i) out(i, i, ip, jp) -= tr * inv;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cd tr = 0.0;
            for (int ip = 0; ip < n; ++ip) tr += out(i, j, ip, ip);
            for (int ip = 0; ip < n; ++ip) out(i, j, ip, ip) -= tr * inv;
        }
    return out;
}

MatrixTensor2 sandwich(const MatrixTensor2& t, const std::vector<cd>& a, const std::vector<cd>& b,
                       const std::vector<cd>& c, const std::vector<cd>& d) {
    const int n = t.n();
    const Mat left = kron(square(a, n), square(b, n));
    const Mat right = kron(square(c, n), square(d, n));
    return from_operator2(left * as_operator(t) * right, n);
}

std::vector<double> singular_values(const MatrixTensor2& t) {
    const int n = t.n();
    Mat m(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int ip = 0; ip < n; ++ip)
                for (int jp = 0; jp < n; ++jp) m(i * n + j, ip * n + jp) = t(i, j, ip, jp);
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

int rank_as_map(const MatrixTensor2& t) {
    const std::vector<double> s = singular_values(t);
    if (s.empty() || s.front() == 0.0) return 0;
    const double n2 = static_cast<double>(t.n()) * t.n();
    const double cutoff = n2 * std::numeric_limits<double>::epsilon() * s.front();
    return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cutoff; }));
}

nlohmann::json to_json(const MatrixTensor2& t) {
    return {{"n", t.n()}, {"legs", 2}, {"coeffs", coeff_list(t.coeffs())}};
}

nlohmann::json to_json(const MatrixTensor3& t) {
    return {{"n", t.n()}, {"legs", 3}, {"coeffs", coeff_list(t.coeffs())}};
}

MatrixTensor2 tensor2_from_json(const nlohmann::json& j) {
    const int n = parse_header(j, 2);
    MatrixTensor2 t(n);
    t.coeffs() = parse_coeffs(j, pow_size(n, 4));
    return t;
}

MatrixTensor3 tensor3_from_json(const nlohmann::json& j) {
    const int n = parse_header(j, 3);
    MatrixTensor3 t(n);
    t.coeffs() = parse_coeffs(j, pow_size(n, 6));
    return t;
}

}  // namespace ybe
