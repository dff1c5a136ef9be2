#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "starnl/errors.hpp"

namespace starnl {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Dimensions stay small (at most 2^10 for a
/// five-source network), so everything is plain O(n^3) arithmetic.
class ComplexMatrix {
  public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
        ComplexMatrix m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            int j = 0;
            for (const auto& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                const cplx* brow = &b.a_[static_cast<size_t>(k) * b.cols_];
                cplx* crow = &c.a_[static_cast<size_t>(i) * c.cols_];
                for (int j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
            }
        }
        return c;
    }

  private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

inline cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Tr[a b] without forming the product.
    cplx t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

// ---- qubit-indexed helpers -------------------------------------------------
//
// A register of N qubits is indexed big-endian: qubit 0 owns the most
// significant bit, so kron(A, B) puts A on qubit 0.

/// Embed `op` (acting on the listed qubits, in list order) into an N-qubit
/// identity environment.
inline ComplexMatrix embed_on_qubits(const ComplexMatrix& op, const std::vector<int>& qubits,
                                     int total_qubits) {
    const int k = static_cast<int>(qubits.size());
    const int dim = 1 << total_qubits;
    const int sub = 1 << k;
    ComplexMatrix out(dim, dim);
    for (int a = 0; a < dim; ++a) {
        int asub = 0;
        for (int q : qubits) asub = (asub << 1) | ((a >> (total_qubits - 1 - q)) & 1);
        for (int bsub = 0; bsub < sub; ++bsub) {
            const cplx v = op(asub, bsub);
            if (v == cplx(0.0)) continue;
            int b = a;
            for (int t = 0; t < k; ++t) {
                const int q = qubits[t];
                const int bit = (bsub >> (k - 1 - t)) & 1;
                const int mask = 1 << (total_qubits - 1 - q);
                b = (b & ~mask) | (bit ? mask : 0);
            }
            out(a, b) += v;
        }
    }
    return out;
}

/// Reorder qubits: perm[t] = source position of the qubit that lands at
/// target position t.
inline ComplexMatrix permute_qubits(const ComplexMatrix& m, const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    const int dim = 1 << n;
    std::vector<int> map(dim);
    for (int idx = 0; idx < dim; ++idx) {
        int src = 0;
        for (int t = 0; t < n; ++t) {
            const int bit = (idx >> (n - 1 - t)) & 1;
            src |= bit << (n - 1 - perm[t]);
        }
        map[idx] = src;
    }
    ComplexMatrix out(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) out(a, b) = m(map[a], map[b]);
    return out;
}

}  // namespace starnl
