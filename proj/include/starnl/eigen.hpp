#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "starnl/complex_matrix.hpp"
#include "starnl/errors.hpp"

namespace starnl {

namespace detail {
constexpr int kMaxSweeps = 500;
constexpr double kJacobiTol = 1e-12;

inline double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}
}  // namespace detail

struct HermitianEig {
    std::vector<double> values;   // descending, ties broken by original index
    ComplexMatrix vectors;        // column k pairs with values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Input Hermiticity is
/// checked to 1e-10; rotations run until the off-diagonal norm falls below
/// 1e-12 times the scale, capped at 500 sweeps.
inline HermitianEig hermitian_eig(const ComplexMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw NotHermitianError("matrix is not square");
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    if (dev > 1e-10) throw NotHermitianError("matrix deviates from Hermitian by " + std::to_string(dev));

    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(max_abs(a), 1e-300);
    for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(a) <= detail::kJacobiTol * scale * n) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= detail::kJacobiTol * scale) continue;
                const cplx w = apq / mag;
                const double ap = a(p, p).real();
                const double aq = a(q, q).real();
                const double tau = (aq - ap) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // columns p,q of a and v
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(w) * akq;
                    a(k, q) = s * w * akp + c * akq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(w) * vkq;
                    v(k, q) = s * w * vkp + c * vkq;
                }
                // rows p,q of a
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * w * aqk;
                    a(q, k) = s * std::conj(w) * apk + c * aqk;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return diag[i] > diag[j]; });

    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eig(m).values;
}

namespace detail {

struct Givens {
    double c;
    cplx s;
};

inline Givens make_givens(cplx f, cplx g) {
    Givens r{};
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        r.c = 1.0;
        r.s = 0.0;
        return r;
    }
    const double d = std::sqrt(af * af + ag * ag);
    if (af == 0.0) {
        r.c = 0.0;
        r.s = std::conj(g) / ag;
        return r;
    }
    r.c = af / d;
    r.s = (f / af) * std::conj(g) / d;
    return r;
}

}  // namespace detail

/// Eigenvalues of a small real matrix (generally non-symmetric), returned
/// unsorted with imaginary parts intact. Shifted QR in complex arithmetic;
/// iteration cap 500.
inline std::vector<cplx> real_matrix_eigenvalues(const ComplexMatrix& m) {
    const int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("real_matrix_eigenvalues: not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(m(i, j).imag()) > 1e-12)
                throw std::invalid_argument("real_matrix_eigenvalues: input has imaginary entries");

    ComplexMatrix h = m;
    const double scale = std::max(max_abs(h), 1e-300);
    const double tol = 1e-14 * scale;
    std::vector<cplx> eigs;
    eigs.reserve(n);
    int active = n;
    int iter = 0;
    int stall = 0;
    while (active > 0 && iter < detail::kMaxSweeps) {
        if (active == 1) {
            eigs.push_back(h(0, 0));
            --active;
            break;
        }
        // deflate any negligible trailing row of the active block
        double off = 0.0;
        for (int j = 0; j < active - 1; ++j) off += std::abs(h(active - 1, j));
        if (off <= tol) {
            eigs.push_back(h(active - 1, active - 1));
            --active;
            stall = 0;
            continue;
        }
        if (active == 2) {
            // closed-form 2x2 spectrum
            const cplx a = h(0, 0), b = h(0, 1), c = h(1, 0), d = h(1, 1);
            const cplx tr = a + d;
            const cplx disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
            eigs.push_back(0.5 * (tr + disc));
            eigs.push_back(0.5 * (tr - disc));
            active = 0;
            break;
        }
        // Wilkinson shift from the trailing 2x2 of the active block
        const cplx a = h(active - 2, active - 2), b = h(active - 2, active - 1);
        const cplx c = h(active - 1, active - 2), d = h(active - 1, active - 1);
        const cplx tr = a + d;
        const cplx disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
        cplx mu1 = 0.5 * (tr + disc), mu2 = 0.5 * (tr - disc);
        cplx mu = (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
        ++stall;
        if (stall > 12) {
            // exceptional shift to break symmetric stalls
            mu += cplx(std::abs(h(active - 1, active - 2)), 0.3 * scale);
            stall = 0;
        }
        for (int i = 0; i < active; ++i) h(i, i) -= mu;
        // QR via Givens on the active block, then RQ
        std::vector<detail::Givens> rots;
        rots.reserve(static_cast<size_t>(active) * (active - 1) / 2);
        std::vector<std::pair<int, int>> rows;
        for (int j = 0; j < active - 1; ++j) {
            for (int i = active - 1; i > j; --i) {
                if (std::abs(h(i, j)) == 0.0) {
                    rots.push_back({1.0, 0.0});
                    rows.emplace_back(i - 1, i);
                    continue;
                }
                auto g = detail::make_givens(h(i - 1, j), h(i, j));
                for (int k = 0; k < active; ++k) {
                    const cplx x = h(i - 1, k), y = h(i, k);
                    h(i - 1, k) = g.c * x + g.s * y;
                    h(i, k) = -std::conj(g.s) * x + g.c * y;
                }
                rots.push_back(g);
                rows.emplace_back(i - 1, i);
            }
        }
        for (size_t r = 0; r < rots.size(); ++r) {
            const auto& g = rots[r];
            const auto [p, q] = rows[r];
            for (int k = 0; k < active; ++k) {
                const cplx x = h(k, p), y = h(k, q);
                h(k, p) = g.c * x + std::conj(g.s) * y;
                h(k, q) = -g.s * x + g.c * y;
            }
        }
        for (int i = 0; i < active; ++i) h(i, i) += mu;
        ++iter;
    }
    if (active > 0) throw std::runtime_error("real_matrix_eigenvalues: QR iteration cap reached");
    return eigs;
}

/// Singular values of a (real) 3x3 matrix, descending. One-sided Jacobi on
/// the columns, so near-zero singular values come out at machine precision
/// rather than sqrt(eps) — the product-state no-go checks depend on that.
inline std::array<double, 3> singular_values_3x3(const ComplexMatrix& r) {
    if (r.rows() != 3 || r.cols() != 3)
        throw std::invalid_argument("singular_values_3x3: expected 3x3");
    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = r(i, j).real();

    for (int sweep = 0; sweep < detail::kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (int i = 0; i < 3; ++i) {
                    app += a[i][p] * a[i][p];
                    aqq += a[i][q] * a[i][q];
                    apq += a[i][p] * a[i][q];
                }
                if (std::abs(apq) <= detail::kJacobiTol * std::sqrt(app * aqq) ||
                    apq == 0.0)
                    continue;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int i = 0; i < 3; ++i) {
                    const double xp = a[i][p], xq = a[i][q];
                    a[i][p] = c * xp - s * xq;
                    a[i][q] = s * xp + c * xq;
                }
                rotated = true;
            }
        }
        if (!rotated) break;
    }
    std::array<double, 3> w{};
    for (int j = 0; j < 3; ++j)
        w[j] = std::sqrt(a[0][j] * a[0][j] + a[1][j] * a[1][j] + a[2][j] * a[2][j]);
    std::sort(w.begin(), w.end(), std::greater<double>());
    return w;
}

}  // namespace starnl
