#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "starnl/filters.hpp"
#include "starnl/network.hpp"
#include "starnl/optimize.hpp"

using namespace starnl;

TEST_CASE("epsilon_filter endpoints and range check") {
    CHECK(max_abs_diff(epsilon_filter(1.0).matrix(), ComplexMatrix::identity(2)) == 0.0);
    const auto proj = epsilon_filter(0.0).matrix();
    CHECK(proj(0, 0) == cplx(0.0));
    CHECK(proj(1, 1) == cplx(1.0));
    CHECK_THROWS_AS(epsilon_filter(1.2), OutOfRangeError);
    CHECK_THROWS_AS(epsilon_filter(-0.1), OutOfRangeError);
    CHECK(epsilon_filter(0.5569).matrix()(0, 0).real() == Catch::Approx(0.5569));
}

TEST_CASE("fns_3qubit is identity at (1, 0) and norm-bounded") {
    CHECK(max_abs_diff(fns_3qubit(1.0, 0.0).matrix(), ComplexMatrix::identity(8)) < 1e-15);
    const auto f = fns_3qubit(0.26, 0.173);
    const auto g = f.matrix().adjoint() * f.matrix();
    CHECK(std::sqrt(hermitian_eigenvalues(g).front()) <= 1.0 + 1e-9);
    // alpha1 outside [0,1] must be rejected before the norm gate
    CHECK_THROWS_AS(fns_3qubit(1.4, 0.0), OutOfRangeError);
}

TEST_CASE("fns_2qubit at corner parameters") {
    // alpha3 = alpha4 = 0 leaves only the parameter-free terms
    const auto z = fns_2qubit(0.0, 0.0).matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == 3 && j == 0)
                CHECK_THAT(z(i, j).real(), Catch::Matchers::WithinAbs(-0.2089, 1e-12));
            else if (i == 3 && j == 3)
                CHECK_THAT(z(i, j).real(), Catch::Matchers::WithinAbs(0.9779, 1e-12));
            else
                CHECK(z(i, j) == cplx(0.0));
        }
    // (1,1): near-isometry, norm <= 1 within tolerance
    const auto f = fns_2qubit(1.0, 1.0);
    const auto ev = hermitian_eigenvalues(f.matrix().adjoint() * f.matrix());
    CHECK(std::sqrt(ev.front()) <= 1.0 + 1e-9);
    CHECK(std::sqrt(ev.back()) >= 0.999);
}

TEST_CASE("fns_g_filter at zero angles is the stated diagonal") {
    const auto f = fns_g_filter(0.0, 0.0).matrix();
    ComplexMatrix head(2, 2);
    head(0, 0) = 0.8;
    head(1, 1) = 1.0;
    ComplexMatrix g(4, 4);
    g(0, 0) = 0.64;
    g(1, 1) = 0.8;
    g(2, 2) = 0.8;
    g(3, 3) = 1.0;
    CHECK(max_abs_diff(f, kron(head, g)) < 1e-15);
}

TEST_CASE("fns_g_filter norm stays below one across the angle grid") {
    for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) {
            const double a5 = -std::numbers::pi + a * (2 * std::numbers::pi / 19);
            const double a6 = -std::numbers::pi + b * (2 * std::numbers::pi / 19);
            const auto f = fns_g_filter(a5, a6);
            const auto ev = hermitian_eigenvalues(f.matrix().adjoint() * f.matrix());
            CHECK(std::sqrt(std::max(ev.front(), 0.0)) <= 1.0 + 1e-9);
        }
}

TEST_CASE("norm gate rejects an amplifying operator") {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 0) = 1.2;
    CHECK_THROWS_AS(FilterOperator::from_matrix(1, m, "bad"), NormExceededError);
}

TEST_CASE("apply_filter_pair identity and zero-success paths") {
    const auto s = horodecki_state({0.3, 0.5});
    const auto id = epsilon_filter(1.0);
    const auto [out, succ] = apply_filter_pair(s, id, id);
    CHECK(max_abs_diff(out.dm(), s.dm()) < 1e-12);
    CHECK_THAT(succ, Catch::Matchers::WithinAbs(1.0, 1e-12));

    ComplexMatrix vac(4, 4);
    vac(0, 0) = 1.0;
    const auto vac_state = TwoQubitState::from_matrix(vac);
    CHECK_THROWS_AS(apply_filter_pair(vac_state, epsilon_filter(0.0), id), ZeroSuccessError);
}

TEST_CASE("filtering the horodecki family stays in the family") {
    const double p = 0.2169, theta = 0.4585, ee = 0.902, ce = 0.5569;
    const auto [f, succ] = apply_filter_pair(horodecki_state({p, theta}), epsilon_filter(ee),
                                             epsilon_filter(ce));
    const double s = std::sin(theta), c = std::cos(theta);
    const double expect_succ = (1 - p) * (s * s * ee * ee + c * c * ce * ce) + p * ee * ee * ce * ce;
    CHECK_THAT(succ, Catch::Matchers::WithinAbs(expect_succ, 1e-12));
    // renormalized state = horodecki(p', theta') with amplitudes scaled per slot
    const double pprime = p * ee * ee * ce * ce / expect_succ;
    const double sp = s * ee / std::sqrt(s * s * ee * ee + c * c * ce * ce);
    const auto expect = horodecki_state({pprime, std::asin(sp)});
    CHECK(max_abs_diff(f.dm(), expect.dm()) < 1e-12);
}

TEST_CASE("assignment application factorizes for separable filters") {
    const std::vector<TwoQubitState> sources = {bell_diagonal({0.05, 0.2456, 0.639, 0.0654}),
                                                horodecki_state({0.042, 0.458}),
                                                horodecki_state({0.2169, 0.458})};
    const int n = 3;
    FilterAssignment assign = FilterAssignment::identity(n);
    assign.edge[0] = epsilon_filter(0.99);
    assign.edge[1] = epsilon_filter(0.902);
    assign.edge[2] = epsilon_filter(0.998);
    assign.central.push_back({epsilon_filter(0.98), {1}});
    assign.central.push_back({epsilon_filter(0.98), {2}});
    assign.central.push_back({epsilon_filter(0.5569), {3}});

    const auto [global, succ] = apply_assignment(build_initial(sources), assign, n);

    // product of per-source filtered states, rearranged to the global layout
    double succ_prod = 1.0;
    std::vector<TwoQubitState> filtered;
    for (int i = 0; i < n; ++i) {
        const auto cen = assign.central_single(i + 1);
        const auto [f, c] = apply_filter_pair(sources[i], *assign.edge[i], *cen);
        filtered.push_back(f);
        succ_prod *= c;
    }
    CHECK_THAT(succ, Catch::Matchers::WithinAbs(succ_prod, 1e-12));
    CHECK(max_abs_diff(global, build_initial(filtered)) < 1e-10);

    // the output is a valid density matrix
    CHECK(max_abs_diff(global, global.adjoint()) < 1e-10);
    CHECK_THAT(global.trace().real(), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK(hermitian_eigenvalues(global).back() >= -1e-10);
}

TEST_CASE("non-separable central block produces a valid state and success") {
    const std::vector<TwoQubitState> sources = {werner_state(WernerParam{0.68}),
                                                werner_state(WernerParam{0.69}),
                                                horodecki_state({0.1, std::numbers::pi / 7})};
    FilterAssignment assign = FilterAssignment::identity(3);
    assign.central.push_back({fns_2qubit(0.88, 0.67), {2, 3}});
    CHECK_FALSE(assign.separable());

    const auto [global, succ] = apply_assignment(build_initial(sources), assign, 3);
    CHECK(succ > 0.0);
    CHECK(succ <= 1.0 + 1e-12);
    CHECK(max_abs_diff(global, global.adjoint()) < 1e-10);
    CHECK_THAT(global.trace().real(), Catch::Matchers::WithinAbs(1.0, 1e-10));
    CHECK(hermitian_eigenvalues(global).back() >= -1e-10);
}

TEST_CASE("assignment validation catches bad central blocks") {
    FilterAssignment a = FilterAssignment::identity(3);
    a.central.push_back({epsilon_filter(0.5), {4}});
    CHECK_THROWS(a.validate(3));
    a.central.clear();
    a.central.push_back({epsilon_filter(0.5), {2}});
    a.central.push_back({fns_2qubit(0.5, 0.5), {2, 3}});
    CHECK_THROWS(a.validate(3));
}
