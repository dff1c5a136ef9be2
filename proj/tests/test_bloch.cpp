#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starnl/bloch.hpp"
#include "starnl/optimize.hpp"
#include "starnl/states.hpp"

using namespace starnl;

namespace {

ComplexMatrix random_local_unitary(SplitMix64& rng) {
    // product of two single-qubit unitaries built from random Hermitian 2x2s
    auto one = [&]() {
        ComplexMatrix h(2, 2);
        h(0, 0) = 2 * rng.uniform() - 1;
        h(1, 1) = 2 * rng.uniform() - 1;
        const cplx off(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        h(0, 1) = off;
        h(1, 0) = std::conj(off);
        return hermitian_eig(h).vectors;
    };
    return kron(one(), one());
}

TwoQubitState conjugated(const TwoQubitState& s, const ComplexMatrix& u) {
    return TwoQubitState::from_matrix(u * s.dm() * u.adjoint());
}

}  // namespace

TEST_CASE("decompose of maximally mixed and singlet") {
    const auto dm = decompose(maximally_mixed());
    for (int k = 0; k < 3; ++k) {
        CHECK_THAT(dm.x[k], Catch::Matchers::WithinAbs(0.0, 1e-14));
        CHECK_THAT(dm.y[k], Catch::Matchers::WithinAbs(0.0, 1e-14));
        CHECK_THAT(dm.W[k], Catch::Matchers::WithinAbs(0.0, 1e-14));
    }

    const auto ds = decompose(bell_diagonal({0, 1, 0, 0}));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK_THAT(ds.R[a][b], Catch::Matchers::WithinAbs(a == b ? -1.0 : 0.0, 1e-12));
    for (int k = 0; k < 3; ++k) CHECK_THAT(ds.W[k], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("horodecki family correlation matrix is the expected diagonal") {
    for (double p : {0.05, 0.3, 0.7}) {
        for (double theta : {0.2, 0.4585, 0.75}) {
            const auto d = decompose(horodecki_state({p, theta}));
            const double r = (1 - p) * std::sin(2 * theta);
            CHECK_THAT(d.R[0][0], Catch::Matchers::WithinAbs(r, 1e-12));
            CHECK_THAT(d.R[1][1], Catch::Matchers::WithinAbs(r, 1e-12));
            CHECK_THAT(d.R[2][2], Catch::Matchers::WithinAbs(2 * p - 1, 1e-12));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (a != b) CHECK_THAT(d.R[a][b], Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("singular values are invariant under local unitaries") {
    SplitMix64 rng{23};
    const TwoQubitState states[] = {horodecki_state({0.2, 0.5}), werner_state(WernerParam{0.77}),
                                    bell_diagonal({0.4, 0.1, 0.3, 0.2})};
    for (const auto& s : states) {
        const auto w0 = decompose(s).W;
        for (int rep = 0; rep < 6; ++rep) {
            const auto w1 = decompose(conjugated(s, random_local_unitary(rng))).W;
            for (int k = 0; k < 3; ++k) CHECK_THAT(w1[k], Catch::Matchers::WithinAbs(w0[k], 1e-9));
        }
    }
}

TEST_CASE("pure product states have exactly one nonzero singular value") {
    SplitMix64 rng{29};
    for (int rep = 0; rep < 8; ++rep) {
        const auto u = random_local_unitary(rng);
        ComplexMatrix dm(4, 4);
        dm(0, 0) = 1.0;  // |00><00| pushed through a random local unitary
        const auto s = TwoQubitState::from_matrix(u * dm * u.adjoint());
        const auto w = decompose(s).W;
        CHECK_THAT(w[0], Catch::Matchers::WithinAbs(1.0, 1e-9));
        CHECK_THAT(w[1], Catch::Matchers::WithinAbs(0.0, 1e-9));
        CHECK_THAT(w[2], Catch::Matchers::WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("bloch vector and correlation bounds hold on arbitrary mixed states") {
    SplitMix64 rng{31};
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                g(i, j) = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        ComplexMatrix rho = g * g.adjoint();
        rho *= cplx(1.0 / rho.trace().real());
        const auto d = decompose(TwoQubitState::from_matrix(rho));
        const double nx = std::sqrt(d.x[0] * d.x[0] + d.x[1] * d.x[1] + d.x[2] * d.x[2]);
        const double ny = std::sqrt(d.y[0] * d.y[0] + d.y[1] * d.y[1] + d.y[2] * d.y[2]);
        CHECK(nx <= 1.0 + 1e-9);
        CHECK(ny <= 1.0 + 1e-9);
        CHECK(d.W[0] <= 1.0 + 1e-9);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK(std::abs(d.R[a][b]) <= 1.0 + 1e-9);
    }
}

TEST_CASE("xy_diagonal picks the raw x/y components") {
    const auto [sx, sy] = xy_diagonal(bell_diagonal({0, 1, 0, 0}));
    CHECK_THAT(sx, Catch::Matchers::WithinAbs(-1.0, 1e-12));
    CHECK_THAT(sy, Catch::Matchers::WithinAbs(-1.0, 1e-12));

    const auto [px, py] = xy_diagonal(plus_product());
    CHECK_THAT(px, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(py, Catch::Matchers::WithinAbs(0.0, 1e-12));

    for (double beta : {0.3, -0.144}) {
        const auto [bx, by] = xy_diagonal(pure_state(PureParam{beta}));
        CHECK_THAT(bx, Catch::Matchers::WithinAbs(std::sin(2 * beta), 1e-12));
        CHECK_THAT(by, Catch::Matchers::WithinAbs(std::sin(2 * beta), 1e-12));
    }
}
