#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starnl/complex_matrix.hpp"
#include "starnl/eigen.hpp"
#include "starnl/errors.hpp"
#include "starnl/states.hpp"

namespace starnl {

/// A local filtering operation F on k qubits, F^dag F <= I. The operator-norm
/// invariant is enforced at construction.
class FilterOperator {
  public:
    static FilterOperator from_matrix(int qubits, ComplexMatrix m, std::string label) {
        const int dim = 1 << qubits;
        if (m.rows() != dim || m.cols() != dim)
            throw std::invalid_argument("FilterOperator: dimension mismatch");
        ComplexMatrix g = m.adjoint() * m;
        const auto ev = hermitian_eigenvalues(g);
        const double top = std::sqrt(std::max(ev.front(), 0.0));
        if (top > 1.0 + 1e-9)
            throw NormExceededError("filter '" + label + "' has operator norm " +
                                    std::to_string(top));
        return FilterOperator(qubits, std::move(m), std::move(label));
    }

    int qubits() const { return qubits_; }
    const ComplexMatrix& matrix() const { return m_; }
    const std::string& label() const { return label_; }

  private:
    FilterOperator(int q, ComplexMatrix m, std::string label)
        : qubits_(q), m_(std::move(m)), label_(std::move(label)) {}
    int qubits_;
    ComplexMatrix m_;
    std::string label_;
};

/// eps|0><0| + |1><1|.
inline FilterOperator epsilon_filter(double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("epsilon filter parameter outside [0,1]");
    ComplexMatrix m(2, 2);
    m(0, 0) = eps;
    m(1, 1) = 1.0;
    return FilterOperator::from_matrix(1, m, "epsilon(" + std::to_string(eps) + ")");
}

/// 3-qubit non-separable family: one-qubit damping of the last central qubit
/// composed with a rotation of that qubit controlled on the first two being
/// |11>.
inline FilterOperator fns_3qubit(double alpha1, double alpha2) {
    if (alpha1 < 0.0 || alpha1 > 1.0) throw OutOfRangeError("fns3 alpha1 outside [0,1]");
    const double c = std::cos(alpha2 / 2.0), s = std::sin(alpha2 / 2.0);
    ComplexMatrix m(8, 8);
    m(0, 0) = alpha1;
    m(1, 1) = 1.0;
    m(2, 2) = alpha1;
    m(3, 3) = 1.0;
    m(4, 4) = alpha1;
    m(5, 5) = 1.0;
    m(6, 6) = alpha1 * c;
    m(7, 6) = s;
    m(6, 7) = -alpha1 * s;
    m(7, 7) = c;
    return FilterOperator::from_matrix(3, m, "fns3(" + std::to_string(alpha1) + "," +
                                                 std::to_string(alpha2) + ")");
}

/// 2-qubit non-separable family with fixed coefficients 0.9779 / 0.2089.
inline FilterOperator fns_2qubit(double alpha3, double alpha4) {
    if (alpha3 < 0.0 || alpha3 > 1.0 || alpha4 < 0.0 || alpha4 > 1.0)
        throw OutOfRangeError("fns2 alpha outside [0,1]");
    constexpr double a = 0.9779, b = 0.2089;
    ComplexMatrix m(4, 4);
    m(0, 0) = a * alpha3 * alpha4;
    m(3, 0) = -b;
    m(1, 1) = a * alpha3;
    m(2, 1) = b * alpha4;
    m(1, 2) = -b * alpha3;
    m(2, 2) = a * alpha4;
    m(0, 3) = b * alpha3 * alpha4;
    m(3, 3) = a;
    return FilterOperator::from_matrix(2, m, "fns2(" + std::to_string(alpha3) + "," +
                                                 std::to_string(alpha4) + ")");
}

/// (0.8|0><0| + |1><1|) (x) G with G the 2-qubit non-separable block below.
inline FilterOperator fns_g_filter(double alpha5, double alpha6) {
    const double c5 = std::cos(alpha5 / 2.0), s5 = std::sin(alpha5 / 2.0);
    const double c6 = std::cos(alpha6 / 2.0), s6 = std::sin(alpha6 / 2.0);
    ComplexMatrix g(4, 4);
    g(0, 0) = 0.64 * c5 * c6;
    g(1, 0) = 0.8 * s5 * s6;
    g(2, 0) = -0.8 * c5 * s6;
    g(3, 0) = -s5 * c6;
    g(0, 1) = 0.64 * s5 * s6;
    g(1, 1) = 0.8 * c5 * c6;
    g(2, 1) = 0.8 * s5 * c6;
    g(3, 1) = c5 * s6;
    g(0, 2) = 0.64 * c5 * s6;
    g(1, 2) = -0.8 * s5 * c6;
    g(2, 2) = 0.8 * c5 * c6;
    g(3, 2) = -s5 * s6;
    g(0, 3) = 0.64 * s5 * c6;
    g(1, 3) = -0.8 * c5 * s6;
    g(2, 3) = -0.8 * s5 * s6;
    g(3, 3) = c5 * c6;
    ComplexMatrix head(2, 2);
    head(0, 0) = 0.8;
    head(1, 1) = 1.0;
    return FilterOperator::from_matrix(3, kron(head, g), "fnsg(" + std::to_string(alpha5) + "," +
                                                             std::to_string(alpha6) + ")");
}

/// Filter layout of one network run. Edge filters are per-source single-qubit
/// operators; the central party holds a list of blocks, each acting on a
/// disjoint subset of the central qubits (1-based source indices). A fully
/// separable assignment is one whose central blocks are all single-qubit.
struct FilterAssignment {
    std::vector<std::optional<FilterOperator>> edge;  // size n, index = source - 1

    struct CentralBlock {
        FilterOperator op;
        std::vector<int> qubits;  // 1-based central-qubit (= source) indices
    };
    std::vector<CentralBlock> central;

    static FilterAssignment identity(int n) {
        FilterAssignment a;
        a.edge.resize(n);
        return a;
    }

    bool separable() const {
        for (const auto& b : central)
            if (b.qubits.size() != 1) return false;
        return true;
    }

    void validate(int n) const {
        if (static_cast<int>(edge.size()) != n)
            throw std::invalid_argument("assignment: edge list size != n");
        for (const auto& f : edge)
            if (f && f->qubits() != 1)
                throw std::invalid_argument("assignment: edge filters must be single-qubit");
        std::vector<bool> used(n, false);
        for (const auto& b : central) {
            if (static_cast<int>(b.qubits.size()) != b.op.qubits())
                throw std::invalid_argument("assignment: central block arity mismatch");
            for (int q : b.qubits) {
                if (q < 1 || q > n) throw std::invalid_argument("assignment: central qubit out of range");
                if (used[q - 1]) throw std::invalid_argument("assignment: central qubit repeated");
                used[q - 1] = true;
            }
        }
    }

    /// Single-qubit central filter on source j (1-based), or nullopt.
    std::optional<FilterOperator> central_single(int j) const {
        for (const auto& b : central)
            if (b.qubits.size() == 1 && b.qubits[0] == j) return b.op;
        return std::nullopt;
    }
};

/// Filter one source pair: (edge (x) central) rho (edge (x) central)^dag,
/// normalized; returns the state and the success probability.
inline std::pair<TwoQubitState, double> apply_filter_pair(const TwoQubitState& state,
                                                          const FilterOperator& edge,
                                                          const FilterOperator& central) {
    if (edge.qubits() != 1 || central.qubits() != 1)
        throw std::invalid_argument("apply_filter_pair: filters must be single-qubit");
    const ComplexMatrix f = kron(edge.matrix(), central.matrix());
    ComplexMatrix out = f * state.dm() * f.adjoint();
    const double succ = out.trace().real();
    if (succ <= 1e-14) throw ZeroSuccessError("apply_filter_pair: success probability ~ 0");
    out *= cplx(1.0 / succ);
    return {TwoQubitState::from_matrix(out), succ};
}

/// Global qubit layout: [edge_1 .. edge_n, central_1 .. central_n] (0-based
/// positions; edge_i and central_i belong to source i).
inline ComplexMatrix total_filter_operator(const FilterAssignment& assign, int n) {
    const int total = 2 * n;
    ComplexMatrix f = ComplexMatrix::identity(1 << total);
    for (int i = 0; i < n; ++i)
        if (assign.edge[i]) f = embed_on_qubits(assign.edge[i]->matrix(), {i}, total) * f;
    for (const auto& b : assign.central) {
        std::vector<int> slots;
        slots.reserve(b.qubits.size());
        for (int q : b.qubits) slots.push_back(n + q - 1);
        f = embed_on_qubits(b.op.matrix(), slots, total) * f;
    }
    return f;
}

/// Apply a whole assignment to a 2n-qubit state in the global layout.
inline std::pair<ComplexMatrix, double> apply_assignment(const ComplexMatrix& global,
                                                         const FilterAssignment& assign, int n) {
    assign.validate(n);
    const ComplexMatrix f = total_filter_operator(assign, n);
    ComplexMatrix out = f * global * f.adjoint();
    const double succ = out.trace().real();
    if (succ <= 1e-14) throw ZeroSuccessError("apply_assignment: success probability ~ 0");
    out *= cplx(1.0 / succ);
    return {out, succ};
}

}  // namespace starnl
