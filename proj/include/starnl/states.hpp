#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "starnl/complex_matrix.hpp"
#include "starnl/eigen.hpp"
#include "starnl/errors.hpp"

namespace starnl {

// Qubit slot convention, fixed project-wide: slot 1 (first tensor factor) is
// the edge-party qubit, slot 2 the central-party qubit. Computational basis
// order |00>, |01>, |10>, |11>.

inline const ComplexMatrix& pauli(int k) {
    static const ComplexMatrix sx = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    static const ComplexMatrix sy =
        ComplexMatrix::from_rows({{0, cplx(0, -1)}, {cplx(0, 1), 0}});
    static const ComplexMatrix sz = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
    static const ComplexMatrix id = ComplexMatrix::identity(2);
    switch (k) {
        case 1: return sx;
        case 2: return sy;
        case 3: return sz;
        default: return id;
    }
}

/// Validated 4x4 density matrix of one source pair.
class TwoQubitState {
  public:
    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = -1e-10;

    static TwoQubitState from_matrix(const ComplexMatrix& dm) {
        if (dm.rows() != 4 || dm.cols() != 4)
            throw std::invalid_argument("TwoQubitState: expected 4x4 matrix");
        if (!dm.all_finite()) throw std::invalid_argument("TwoQubitState: non-finite entry");
        if (max_abs_diff(dm, dm.adjoint()) > kHermTol)
            throw NotHermitianError("TwoQubitState: density matrix not Hermitian");
        if (std::abs(dm.trace().real() - 1.0) > kTraceTol || std::abs(dm.trace().imag()) > kTraceTol)
            throw std::invalid_argument("TwoQubitState: trace != 1");
        const auto ev = hermitian_eigenvalues(dm);
        if (ev.back() < kPsdTol)
            throw std::invalid_argument("TwoQubitState: negative eigenvalue " +
                                        std::to_string(ev.back()));
        return TwoQubitState(dm);
    }

    const ComplexMatrix& dm() const { return dm_; }

  private:
    explicit TwoQubitState(ComplexMatrix dm) : dm_(std::move(dm)) {}
    ComplexMatrix dm_;
};

struct BellDiagonalParams {
    double w1, w2, w3, w4;

    BellDiagonalParams(double a, double b, double c, double d) : w1(a), w2(b), w3(c), w4(d) {
        for (double w : {w1, w2, w3, w4})
            if (w < -1e-12 || w > 1.0 + 1e-12)
                throw InvalidWeightsError("bell weight outside [0,1]");
        if (std::abs(w1 + w2 + w3 + w4 - 1.0) > 1e-12)
            throw InvalidWeightsError("bell weights do not sum to 1");
    }
};

struct HorodeckiParams {
    double p;
    double theta;
    bool theta_beyond_quarter_pi;  // family is stated on [0, pi/4]; larger values flagged

    HorodeckiParams(double p_, double theta_) : p(p_), theta(theta_) {
        if (p < 0.0 || p > 1.0) throw OutOfRangeError("horodecki p outside [0,1]");
        if (theta < -1e-12 || theta >= std::numbers::pi / 2)
            throw OutOfRangeError("horodecki theta outside [0, pi/2)");
        theta_beyond_quarter_pi = theta > std::numbers::pi / 4 + 1e-12;
    }
};

struct WernerParam {
    double v;
    explicit WernerParam(double v_) : v(v_) {
        if (v < 0.0 || v > 1.0) throw OutOfRangeError("werner visibility outside [0,1]");
    }
};

struct PureParam {
    double beta;
    explicit PureParam(double beta_) : beta(beta_) {
        if (std::abs(beta) > std::numbers::pi / 4 + 1e-12)
            throw OutOfRangeError("pure-state angle outside [-pi/4, pi/4]");
    }
};

namespace detail {
inline ComplexMatrix ket4(int idx) {
    ComplexMatrix v(4, 1);
    v(idx, 0) = 1.0;
    return v;
}
inline ComplexMatrix projector(const ComplexMatrix& v) {
    return v * v.adjoint();
}
}  // namespace detail

/// w1 |psi+> + w2 |psi-> + w3 |phi+> + w4 |phi->, with psi± on |01>,|10> and
/// phi± on |00>,|11>.
inline TwoQubitState bell_diagonal(const BellDiagonalParams& p) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix psi_p(4, 1), psi_m(4, 1), phi_p(4, 1), phi_m(4, 1);
    psi_p(1, 0) = r;  psi_p(2, 0) = r;
    psi_m(1, 0) = r;  psi_m(2, 0) = -r;
    phi_p(0, 0) = r;  phi_p(3, 0) = r;
    phi_m(0, 0) = r;  phi_m(3, 0) = -r;
    ComplexMatrix dm(4, 4);
    dm += cplx(p.w1) * detail::projector(psi_p);
    dm += cplx(p.w2) * detail::projector(psi_m);
    dm += cplx(p.w3) * detail::projector(phi_p);
    dm += cplx(p.w4) * detail::projector(phi_m);
    return TwoQubitState::from_matrix(dm);
}

/// (1-p) |psi(theta)><psi(theta)| + p |00><00| with
/// |psi(theta)> = sin(theta)|01> + cos(theta)|10> (edge ket first).
inline TwoQubitState horodecki_state(const HorodeckiParams& hp) {
    ComplexMatrix psi(4, 1);
    psi(1, 0) = std::sin(hp.theta);
    psi(2, 0) = std::cos(hp.theta);
    ComplexMatrix dm = cplx(1.0 - hp.p) * detail::projector(psi);
    dm(0, 0) += hp.p;
    return TwoQubitState::from_matrix(dm);
}

/// (1-v)/4 I + v |psi-><psi-|.
inline TwoQubitState werner_state(const WernerParam& wp) {
    ComplexMatrix psi_m(4, 1);
    psi_m(1, 0) = 1.0 / std::sqrt(2.0);
    psi_m(2, 0) = -1.0 / std::sqrt(2.0);
    ComplexMatrix dm = cplx(wp.v) * detail::projector(psi_m);
    for (int i = 0; i < 4; ++i) dm(i, i) += (1.0 - wp.v) / 4.0;
    return TwoQubitState::from_matrix(dm);
}

/// sin(beta)|01> + cos(beta)|10> as a pure state.
inline TwoQubitState pure_state(const PureParam& pp) {
    ComplexMatrix psi(4, 1);
    psi(1, 0) = std::sin(pp.beta);
    psi(2, 0) = std::cos(pp.beta);
    return TwoQubitState::from_matrix(detail::projector(psi));
}

/// |++><++| written out as the uniform 4x4 matrix.
inline TwoQubitState plus_product() {
    ComplexMatrix dm(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dm(i, j) = 0.25;
    return TwoQubitState::from_matrix(dm);
}

/// |0><0| (x) |+><+| — edge qubit |0>, central qubit |+>.
inline TwoQubitState local_product_state() {
    ComplexMatrix dm(4, 4);
    dm(0, 0) = 0.5;
    dm(0, 1) = 0.5;
    dm(1, 0) = 0.5;
    dm(1, 1) = 0.5;
    return TwoQubitState::from_matrix(dm);
}

inline TwoQubitState maximally_mixed() {
    ComplexMatrix dm(4, 4);
    for (int i = 0; i < 4; ++i) dm(i, i) = 0.25;
    return TwoQubitState::from_matrix(dm);
}

/// Amplitude damping with parameter p applied to each qubit independently.
/// Kraus elements per qubit: diag(1, sqrt(1-p)) and sqrt(p)|0><1|.
inline TwoQubitState amplitude_damp_both(const TwoQubitState& state, double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRangeError("damping parameter outside [0,1]");
    ComplexMatrix k0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}});
    ComplexMatrix k1 = ComplexMatrix::from_rows({{0.0, std::sqrt(p)}, {0.0, 0.0}});
    ComplexMatrix out(4, 4);
    const ComplexMatrix* ks[2] = {&k0, &k1};
    for (const auto* a : ks)
        for (const auto* b : ks) {
            const ComplexMatrix op = kron(*a, *b);
            out += op * state.dm() * op.adjoint();
        }
    return TwoQubitState::from_matrix(out);
}

}  // namespace starnl
