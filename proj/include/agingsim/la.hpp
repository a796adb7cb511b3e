// SPDX-License-Identifier: Apache-2.0
//
// agingsim: link-level simulator for the massive MIMO downlink under
// channel aging (user mobility and oscillator phase noise)
// Copyright (C) 2026 agingsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AGINGSIM_LA_HPP
#define AGINGSIM_LA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "agingsim/rng.hpp"

namespace agingsim {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense complex matrix, row-major. Only the kernels the simulator needs:
/// products, traces, Hermitian factorizations, PSD square roots and solves.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat zeros(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static CMat scaled_identity(std::size_t n, double s) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = s;
        return m;
    }

    static CMat diag(const std::vector<double>& d) {
        CMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    static CMat diag(const CVec& d) {
        CMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const CVec& data() const { return a_; }

    CMat adjoint() const {
        CMat m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    CMat operator*(const CMat& rhs) const {
        if (cols_ != rhs.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        CMat m(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx v = (*this)(r, k);
                if (v == cplx{})
                    continue;
                for (std::size_t c = 0; c < rhs.cols_; ++c)
                    m(r, c) += v * rhs(k, c);
            }
        }
        return m;
    }

    CVec operator*(const CVec& v) const {
        if (cols_ != v.size())
            throw std::invalid_argument("matrix-vector dimension mismatch");
        CVec out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < cols_; ++c)
                acc += (*this)(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }

    CMat operator+(const CMat& rhs) const {
        check_same_shape(rhs);
        CMat m = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            m.a_[i] += rhs.a_[i];
        return m;
    }

    CMat operator-(const CMat& rhs) const {
        check_same_shape(rhs);
        CMat m = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            m.a_[i] -= rhs.a_[i];
        return m;
    }

    CMat scaled(cplx s) const {
        CMat m = *this;
        for (auto& v : m.a_)
            v *= s;
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            t += (*this)(i, i);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& v : a_)
            s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_)
            m = std::max(m, std::abs(v));
        return m;
    }

    /// max |A(i,j) - conj(A(j,i))| <= tol_rel * max_abs()
    bool is_hermitian(double tol_rel = 1e-12) const {
        if (rows_ != cols_)
            return false;
        const double tol = tol_rel * std::max(max_abs(), 1e-300);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r; c < cols_; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol)
                    return false;
        return true;
    }

  private:
    void check_same_shape(const CMat& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    CVec a_;
};

inline cplx vdot(const CVec& a, const CVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vector dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

inline double norm2(const CVec& a) {
    double s = 0.0;
    for (const auto& v : a)
        s += std::norm(v);
    return s;
}

inline CMat outer(const CVec& a, const CVec& b) {
    CMat m(a.size(), b.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < b.size(); ++c)
            m(r, c) = a[r] * std::conj(b[c]);
    return m;
}

/// Cholesky factor L (lower) of a Hermitian positive semi-definite matrix,
/// A = L L^H. Zero pivots (within pivot_tol relative to the largest diagonal)
/// produce a zero column, so genuinely singular covariances factor cleanly.
/// Throws std::invalid_argument if a pivot is negative beyond tolerance.
inline CMat cholesky_psd(const CMat& a, double pivot_tol = 1e-10) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("cholesky_psd: matrix not square");
    const std::size_t n = a.rows();
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        dmax = std::max(dmax, std::abs(a(i, i).real()));
    const double tol = pivot_tol * std::max(dmax, 1e-300);

    CMat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (d < -tol)
            throw std::invalid_argument("cholesky_psd: matrix is not positive semi-definite");
        if (d <= tol) {
            // singular direction: the remaining column must vanish too,
            // otherwise the matrix has a negative eigenvalue
            for (std::size_t i = j + 1; i < n; ++i) {
                cplx s = a(i, j);
                for (std::size_t k = 0; k < j; ++k)
                    s -= l(i, k) * std::conj(l(j, k));
                if (std::abs(s) > 10.0 * std::sqrt(std::max(d, tol) * std::max(dmax, tol)))
                    throw std::invalid_argument(
                        "cholesky_psd: matrix is not positive semi-definite");
            }
            continue;
        }
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solve A x = b for Hermitian positive definite A via Cholesky.
inline CVec solve_hermitian_pd(const CMat& a, const CVec& b) {
    const std::size_t n = a.rows();
    if (b.size() != n)
        throw std::invalid_argument("solve_hermitian_pd: dimension mismatch");
    CMat l = cholesky_psd(a, 1e-14);
    for (std::size_t i = 0; i < n; ++i)
        if (l(i, i).real() <= 0.0)
            throw std::invalid_argument("solve_hermitian_pd: matrix is singular");
    CVec y(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    CVec x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= std::conj(l(k, ii)) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

/// Solve A X = B columnwise (A Hermitian positive definite).
inline CMat solve_hermitian_pd(const CMat& a, const CMat& b) {
    const std::size_t n = a.rows();
    if (b.rows() != n)
        throw std::invalid_argument("solve_hermitian_pd: dimension mismatch");
    CMat x(n, b.cols());
    CVec col(n);
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t r = 0; r < n; ++r)
            col[r] = b(r, c);
        CVec sol = solve_hermitian_pd(a, col);
        for (std::size_t r = 0; r < n; ++r)
            x(r, c) = sol[r];
    }
    return x;
}

struct HermitianEig {
    std::vector<double> values; // ascending
    CMat vectors;               // columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition for Hermitian matrices. Adequate for the
/// moderate sizes used here (correlation matrices up to a few hundred).
inline HermitianEig eig_hermitian(CMat a, int max_sweeps = 50, double tol = 1e-13) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    if (!a.is_hermitian(1e-10))
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    const std::size_t n = a.rows();
    CMat v = CMat::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c)
                s += std::norm(a(r, c));
        return std::sqrt(2.0 * s);
    };

    const double scale = std::max(a.frobenius(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= tol * scale * 1e-3)
                    continue;
                const cplx omega = apq / r; // a(p,q) = r * omega
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q)
                        continue;
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, q) * std::conj(omega);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                    a(p, i) = std::conj(a(i, p));
                    a(q, i) = std::conj(a(i, q));
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q) * std::conj(omega);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    HermitianEig out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i)
        vals[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });
    out.vectors = CMat(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = vals[order[c]];
        for (std::size_t rr = 0; rr < n; ++rr)
            out.vectors(rr, c) = v(rr, order[c]);
    }
    return out;
}

/// Hermitian square root S of a PSD matrix, S*S = A.
inline CMat hermitian_sqrt(const CMat& a, double tol = 1e-10) {
    HermitianEig e = eig_hermitian(a);
    const double lmax = std::max(std::abs(e.values.back()), 1e-300);
    CMat s(a.rows(), a.rows());
    const CMat vh = e.vectors.adjoint();
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        double lam = e.values[k];
        if (lam < -tol * lmax)
            throw std::invalid_argument("hermitian_sqrt: matrix is not positive semi-definite");
        lam = std::max(lam, 0.0);
        const double root = std::sqrt(lam);
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.rows(); ++c)
                s(r, c) += root * e.vectors(r, k) * vh(k, c);
    }
    return s;
}

/// Draw from CN(0, covariance): L u with L the PSD Cholesky factor and u
/// i.i.d. circularly symmetric unit-variance complex normals.
inline CVec sample_circular_gaussian(RngStream& stream, std::size_t n, const CMat& covariance) {
    if (covariance.rows() != n || covariance.cols() != n)
        throw std::invalid_argument("invalid covariance: wrong dimensions");
    if (!covariance.is_hermitian(1e-10))
        throw std::invalid_argument("invalid covariance: not Hermitian");
    CMat l;
    try {
        l = cholesky_psd(covariance);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("invalid covariance: not positive semi-definite");
    }
    CVec u(n);
    for (auto& z : u)
        z = stream.next_cnormal();
    return l * u;
}

} // namespace agingsim

#endif
