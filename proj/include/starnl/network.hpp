#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "starnl/bloch.hpp"
#include "starnl/complex_matrix.hpp"
#include "starnl/errors.hpp"
#include "starnl/filters.hpp"
#include "starnl/states.hpp"

namespace starnl {

using Vec3 = std::array<double, 3>;

inline Vec3 direction_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Two projective directions per edge party.
struct MeasurementSettings {
    std::vector<std::array<Vec3, 2>> dirs;  // index = source - 1

    void validate(int n) const {
        if (static_cast<int>(dirs.size()) != n)
            throw std::invalid_argument("settings: need one direction pair per edge party");
        for (const auto& pair : dirs)
            for (const auto& m : pair) {
                const double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
                if (std::abs(norm - 1.0) > 1e-9)
                    throw std::invalid_argument("settings: direction not unit length");
            }
    }

    static MeasurementSettings xy_default(int n) {
        MeasurementSettings s;
        s.dirs.assign(n, {Vec3{1, 0, 0}, Vec3{0, 1, 0}});
        return s;
    }
};

/// One star network: n independent sources plus the filter assignment.
struct NetworkScenario {
    int n;
    std::vector<TwoQubitState> sources;
    FilterAssignment assignment;

    NetworkScenario(std::vector<TwoQubitState> srcs, FilterAssignment assign)
        : n(static_cast<int>(srcs.size())), sources(std::move(srcs)), assignment(std::move(assign)) {
        if (n < 2 || n > 5) throw std::invalid_argument("scenario: n must be in 2..5");
        assignment.validate(n);
    }

    static NetworkScenario unfiltered(std::vector<TwoQubitState> srcs) {
        const int n = static_cast<int>(srcs.size());
        return NetworkScenario(std::move(srcs), FilterAssignment::identity(n));
    }
};

/// rho_initial = (x)_i rho_i rearranged to the global layout
/// [edge_1 .. edge_n, central_1 .. central_n].
inline ComplexMatrix build_initial(const std::vector<TwoQubitState>& sources) {
    const int n = static_cast<int>(sources.size());
    ComplexMatrix nat = sources[0].dm();
    for (int i = 1; i < n; ++i) nat = kron(nat, sources[i].dm());
    // natural order alternates edge_i, central_i; send edge i to slot i,
    // central i to slot n+i
    std::vector<int> perm(2 * n);
    for (int i = 0; i < n; ++i) {
        perm[i] = 2 * i;
        perm[n + i] = 2 * i + 1;
    }
    return permute_qubits(nat, perm);
}

// ---- Table of post-processing masks -----------------------------------------
//
// For every correlator index i: the parity mask over the n raw central bits,
// the constant bit, and the parity mask over the edge inputs x_2..x_{n+1}.

struct CorrelatorSpec {
    unsigned c_mask;
    int c_const;
    unsigned g_mask;
};

inline const std::vector<CorrelatorSpec>& correlator_table(int n) {
    static const std::vector<CorrelatorSpec> t2 = {
        {0b01u, 0, 0b00u},
        {0b11u, 1, 0b11u},
    };
    static const std::vector<CorrelatorSpec> t3 = {
        {0b001u, 0, 0b000u},
        {0b011u, 1, 0b011u},
        {0b101u, 1, 0b101u},
        {0b111u, 1, 0b110u},
    };
    static const std::vector<CorrelatorSpec> t4 = {
        {0b0001u, 0, 0b0000u},
        {0b0011u, 1, 0b0011u},
        {0b0101u, 1, 0b0101u},
        {0b1001u, 1, 0b1001u},
        {0b0111u, 1, 0b0110u},
        {0b1011u, 1, 0b1010u},
        {0b1101u, 1, 0b1100u},
        {0b1111u, 0, 0b1111u},
    };
    switch (n) {
        case 2: return t2;
        case 3: return t3;
        case 4: return t4;
        default: throw UnsupportedNError("post-processing table defined for n in {2,3,4}");
    }
}

/// Post-processed central bit for correlator i (1-based) from the n raw bits.
inline int postprocess(int n, int i, const std::vector<int>& raw) {
    const auto& table = correlator_table(n);
    if (i < 1 || i > static_cast<int>(table.size()))
        throw std::invalid_argument("postprocess: correlator index out of range");
    if (static_cast<int>(raw.size()) != n)
        throw std::invalid_argument("postprocess: expected n raw bits");
    const auto& spec = table[i - 1];
    int bit = spec.c_const;
    for (int k = 0; k < n; ++k)
        if ((spec.c_mask >> k) & 1u) bit ^= (raw[k] & 1);
    return bit;
}

/// GHZ basis |G_b> = (|0, b2..bn> + (-1)^{b1} |1, ~b2..~bn>)/sqrt(2), all n-bit
/// labels in lexicographic order; raw output bits are the label bits.
inline std::vector<std::vector<cplx>> ghz_basis(int n) {
    if (n < 2 || n > 5) throw std::invalid_argument("ghz_basis: n must be in 2..5");
    const int dim = 1 << n;
    std::vector<std::vector<cplx>> basis;
    basis.reserve(dim);
    const double r = 1.0 / std::sqrt(2.0);
    for (int label = 0; label < dim; ++label) {
        std::vector<cplx> v(dim, 0.0);
        const int b1 = (label >> (n - 1)) & 1;
        const int tail = label & ((1 << (n - 1)) - 1);
        const int i0 = tail;                                      // |0, b2..bn>
        const int i1 = (1 << (n - 1)) | (~tail & ((1 << (n - 1)) - 1));  // |1, ~b2..~bn>
        v[i0] += r;
        v[i1] += (b1 ? -r : r);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Central observables E_i = sum_b (-1)^{post(i,b)} |G_b><G_b| on the n
/// central qubits.
inline std::vector<ComplexMatrix> central_correlators(int n) {
    const auto& table = correlator_table(n);
    const auto basis = ghz_basis(n);
    const int dim = 1 << n;
    std::vector<ComplexMatrix> ops;
    ops.reserve(table.size());
    for (const auto& spec : table) {
        ComplexMatrix e(dim, dim);
        for (int label = 0; label < dim; ++label) {
            int parity = spec.c_const;
            for (int k = 0; k < n; ++k)
                if ((spec.c_mask >> k) & 1u) parity ^= (label >> (n - 1 - k)) & 1;
            const double sign = parity ? -1.0 : 1.0;
            const auto& g = basis[label];
            for (int a = 0; a < dim; ++a) {
                if (g[a] == cplx(0.0)) continue;
                for (int b = 0; b < dim; ++b)
                    e(a, b) += sign * g[a] * std::conj(g[b]);
            }
        }
        ops.push_back(std::move(e));
    }
    return ops;
}

// ---- closed-form bounds ------------------------------------------------------

/// 2 sqrt((prod W_i1)^{2/n} + (prod W_i2)^{2/n}) over the two largest
/// correlation singular values of each source.
inline double bound_closed(const std::vector<TwoQubitState>& sources) {
    const int n = static_cast<int>(sources.size());
    double p1 = 1.0, p2 = 1.0;
    for (const auto& s : sources) {
        const auto d = decompose(s);
        p1 *= d.W[0];
        p2 *= d.W[1];
    }
    return 2.0 * std::sqrt(std::pow(p1, 2.0 / n) + std::pow(p2, 2.0 / n));
}

/// Same aggregate over the raw x/y diagonal correlation components — the two
/// axes the fixed GHZ-basis central measurement can actually reach.
inline double bound_closed_xy(const std::vector<TwoQubitState>& sources) {
    const int n = static_cast<int>(sources.size());
    double p1 = 1.0, p2 = 1.0;
    for (const auto& s : sources) {
        const auto [r11, r22] = xy_diagonal(s);
        p1 *= std::abs(r11);
        p2 *= std::abs(r22);
    }
    return 2.0 * std::sqrt(std::pow(p1, 2.0 / n) + std::pow(p2, 2.0 / n));
}

inline double bound_closed(const NetworkScenario& sc) { return bound_closed(sc.sources); }
inline double bound_closed_xy(const NetworkScenario& sc) { return bound_closed_xy(sc.sources); }

/// Per-source filtered states for a fully separable assignment.
inline std::vector<std::pair<TwoQubitState, double>> filtered_sources(const NetworkScenario& sc) {
    if (!sc.assignment.separable())
        throw NonSeparableAssignmentError(
            "assignment has a multi-qubit central block; use the direct evaluator");
    const FilterOperator id = epsilon_filter(1.0);
    std::vector<std::pair<TwoQubitState, double>> out;
    out.reserve(sc.n);
    for (int i = 0; i < sc.n; ++i) {
        const FilterOperator edge = sc.assignment.edge[i] ? *sc.assignment.edge[i] : id;
        const auto cen = sc.assignment.central_single(i + 1);
        out.push_back(apply_filter_pair(sc.sources[i], edge, cen ? *cen : id));
    }
    return out;
}

struct SeqBound {
    double value;
    double success;
};

/// Theorem-style sequential bound: filter each source, then aggregate the two
/// largest filtered singular values; success is the product of per-source
/// filter successes.
inline SeqBound bound_seq_closed(const NetworkScenario& sc) {
    const auto fs = filtered_sources(sc);
    double p1 = 1.0, p2 = 1.0, succ = 1.0;
    for (const auto& [state, c] : fs) {
        const auto d = decompose(state);
        p1 *= d.W[0];
        p2 *= d.W[1];
        succ *= c;
    }
    return {2.0 * std::sqrt(std::pow(p1, 2.0 / sc.n) + std::pow(p2, 2.0 / sc.n)), succ};
}

inline SeqBound bound_seq_closed_xy(const NetworkScenario& sc) {
    const auto fs = filtered_sources(sc);
    double p1 = 1.0, p2 = 1.0, succ = 1.0;
    for (const auto& [state, c] : fs) {
        const auto [r11, r22] = xy_diagonal(state);
        p1 *= std::abs(r11);
        p2 *= std::abs(r22);
        succ *= c;
    }
    return {2.0 * std::sqrt(std::pow(p1, 2.0 / sc.n) + std::pow(p2, 2.0 / sc.n)), succ};
}

/// Normalized post-filter network state and the protocol success N^{-1}.
inline std::pair<ComplexMatrix, double> filtered_global(const NetworkScenario& sc) {
    return apply_assignment(build_initial(sc.sources), sc.assignment, sc.n);
}

inline double scenario_success(const NetworkScenario& sc) {
    return filtered_global(sc).second;
}

struct EvaluationReport {
    std::vector<double> J;            // 2^{n-1} correlators
    double S = 0.0;                   // 2^{3-n} sum |J_i|^{1/n}; classical bound sits at 2
    double success = 1.0;
    double bound_closed = 0.0;
    std::optional<double> bound_seq;  // absent for non-separable assignments
};

/// Precomputed evaluation kernel: the filtered state is contracted once
/// against every (Pauli string (x) E_i) observable, after which a settings
/// evaluation is a cheap tensor contraction. Valid for n in 2..4.
class CorrelationKernel {
  public:
    explicit CorrelationKernel(const NetworkScenario& sc) : n_(sc.n) {
        const auto& table = correlator_table(sc.n);  // throws UnsupportedN for n=5
        const auto [rho, succ] = filtered_global(sc);
        success_ = succ;
        bound_closed_ = bound_closed(sc);
        if (sc.assignment.separable()) bound_seq_ = bound_seq_closed(sc).value;

        const auto eops = central_correlators(n_);
        g_masks_.reserve(table.size());
        for (const auto& spec : table) g_masks_.push_back(spec.g_mask);

        combos_ = 1;
        for (int j = 0; j < n_; ++j) combos_ *= 3;
        t_.assign(table.size() * combos_, 0.0);
        for (size_t i = 0; i < eops.size(); ++i) {
            for (int combo = 0; combo < combos_; ++combo) {
                ComplexMatrix obs = pauli_string(combo);
                obs = kron(obs, eops[i]);
                t_[i * combos_ + combo] = trace_of_product(rho, obs).real();
            }
        }
    }

    int n() const { return n_; }
    double success() const { return success_; }

    EvaluationReport evaluate(const MeasurementSettings& settings) const {
        settings.validate(n_);
        EvaluationReport rep;
        rep.success = success_;
        rep.bound_closed = bound_closed_;
        rep.bound_seq = bound_seq_;
        rep.J.reserve(g_masks_.size());
        for (size_t i = 0; i < g_masks_.size(); ++i) {
            // averaged direction per source: (m0 + m1)/2, or (m0 - m1)/2 when
            // the party's input enters g_i
            std::array<Vec3, 5> u{};
            for (int j = 0; j < n_; ++j) {
                const bool diff = (g_masks_[i] >> j) & 1u;
                for (int a = 0; a < 3; ++a) {
                    const double m0 = settings.dirs[j][0][a], m1 = settings.dirs[j][1][a];
                    u[j][a] = diff ? 0.5 * (m0 - m1) : 0.5 * (m0 + m1);
                }
            }
            double J = 0.0;
            for (int combo = 0; combo < combos_; ++combo) {
                const double t = t_[i * combos_ + combo];
                if (t == 0.0) continue;
                double w = t;
                int c = combo;
                for (int j = n_ - 1; j >= 0; --j) {
                    w *= u[j][c % 3];
                    c /= 3;
                }
                J += w;
            }
            rep.J.push_back(J);
        }
        double s = 0.0;
        for (double J : rep.J) s += (J == 0.0 ? 0.0 : std::pow(std::abs(J), 1.0 / n_));
        rep.S = std::pow(2.0, 3 - n_) * s;
        return rep;
    }

  private:
    ComplexMatrix pauli_string(int combo) const {
        // digits in base 3, most significant digit = source 1
        std::array<int, 5> d{};
        int c = combo;
        for (int j = n_ - 1; j >= 0; --j) {
            d[j] = c % 3;
            c /= 3;
        }
        ComplexMatrix m = pauli(d[0] + 1);
        for (int j = 1; j < n_; ++j) m = kron(m, pauli(d[j] + 1));
        return m;
    }

    int n_;
    int combos_ = 0;
    double success_ = 1.0;
    double bound_closed_ = 0.0;
    std::optional<double> bound_seq_;
    std::vector<unsigned> g_masks_;
    std::vector<double> t_;
};

inline EvaluationReport evaluate(const NetworkScenario& sc, const MeasurementSettings& settings) {
    return CorrelationKernel(sc).evaluate(settings);
}

}  // namespace starnl
