#pragma once

#include <array>
#include <utility>

#include "starnl/eigen.hpp"
#include "starnl/states.hpp"

namespace starnl {

/// Bloch-form data of a two-qubit state: local vectors, the 3x3 correlation
/// matrix R_jk = Tr[rho sigma_j (x) sigma_k], and R's ordered singular values.
struct BlochDecomposition {
    std::array<double, 3> x{};  // slot-1 (edge) Bloch vector
    std::array<double, 3> y{};  // slot-2 (central) Bloch vector
    std::array<std::array<double, 3>, 3> R{};
    std::array<double, 3> W{};  // W1 >= W2 >= W3 >= 0
};

inline BlochDecomposition decompose(const TwoQubitState& state) {
    BlochDecomposition d;
    const ComplexMatrix& rho = state.dm();
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    for (int a = 1; a <= 3; ++a) {
        d.x[a - 1] = trace_of_product(rho, kron(pauli(a), id2)).real();
        d.y[a - 1] = trace_of_product(rho, kron(id2, pauli(a))).real();
        for (int b = 1; b <= 3; ++b)
            d.R[a - 1][b - 1] = trace_of_product(rho, kron(pauli(a), pauli(b))).real();
    }
    ComplexMatrix r(3, 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r(a, b) = d.R[a][b];
    d.W = singular_values_3x3(r);
    return d;
}

/// The two correlation components the fixed GHZ-basis central measurement
/// couples to: (R11, R22) of the raw, undiagonalized correlation matrix.
inline std::pair<double, double> xy_diagonal(const TwoQubitState& state) {
    const ComplexMatrix& rho = state.dm();
    const double r11 = trace_of_product(rho, kron(pauli(1), pauli(1))).real();
    const double r22 = trace_of_product(rho, kron(pauli(2), pauli(2))).real();
    return {r11, r22};
}

}  // namespace starnl
