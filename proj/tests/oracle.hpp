// Independent dense-matrix reference: every protocol step is expanded to an
// explicit 2^w x 2^w matrix (unitaries and projectors) and applied to a dense
// vector. Shares only the step descriptions with the library under test; all
// linear algebra is reimplemented here from the matrix definitions.
#pragma once

#include <complex>
#include <vector>

#include "cfc/protocol.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;
using Mat = std::vector<std::vector<cplx>>;  // Mat[i][j] = <i|U|j>

inline Mat identity(size_t dim) {
    Mat m(dim, std::vector<cplx>(dim, 0.0));
    for (size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

inline Vec matvec(const Mat& m, const Vec& v) {
    Vec out(v.size(), 0.0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// <i1|u|j1> for the single-qubit block, written out independently per kind.
inline cplx block(const cfc::GateSpec& g, unsigned i1, unsigned j1) {
    using cfc::GateKind;
    const double c = std::cos(g.angle), s = std::sin(g.angle);
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::Rotation: {
            // columns: |0> -> (c, s), |1> -> (-s, c)
            const double m[2][2] = {{c, -s}, {s, c}};
            return m[i1][j1];
        }
        case GateKind::Hadamard: {
            const double m[2][2] = {{r, r}, {r, -r}};
            return m[i1][j1];
        }
        case GateKind::OracleComputer:
            if (g.answer == 0) return i1 == j1 ? 1.0 : 0.0;
            return i1 != j1 ? 1.0 : 0.0;
        case GateKind::RegisterIncrement:
            return i1 != j1 ? 1.0 : 0.0;
        case GateKind::PhaseOracle:
            if (i1 != j1) return 0.0;
            return (g.answer == 1 && i1 == 1) ? -1.0 : 1.0;
        case GateKind::PhaseShift:
            return 0.0;  // handled separately (diagonal over all qubits)
    }
    return 0.0;
}

inline Mat full_unitary(const cfc::GateSpec& g, int width) {
    const size_t dim = 1ull << width;
    Mat m(dim, std::vector<cplx>(dim, 0.0));
    if (g.kind == cfc::GateKind::PhaseShift) {
        const cplx ph = std::polar(1.0, g.angle);
        for (size_t j = 0; j < dim; ++j)
            m[j][j] = cfc::controls_match(g.controls, static_cast<unsigned>(j)) ? ph : 1.0;
        return m;
    }
    for (size_t j = 0; j < dim; ++j) {
        if (!cfc::controls_match(g.controls, static_cast<unsigned>(j))) {
            m[j][j] = 1.0;
            continue;
        }
        const unsigned j1 = (static_cast<unsigned>(j) >> g.target) & 1u;
        const size_t base = j & ~(1ull << g.target);
        for (unsigned i1 = 0; i1 < 2; ++i1)
            m[base | (static_cast<size_t>(i1) << g.target)][j] = block(g, i1, j1);
    }
    return m;
}

inline Mat projector(int qubit, int value, int width) {
    const size_t dim = 1ull << width;
    Mat m(dim, std::vector<cplx>(dim, 0.0));
    for (size_t i = 0; i < dim; ++i)
        if (static_cast<int>((i >> qubit) & 1ull) == value) m[i][i] = 1.0;
    return m;
}

/// Full post-selected run; returns the dense final vector. Success
/// probability is its squared norm.
inline Vec run_dense(const cfc::Protocol& p) {
    const size_t dim = 1ull << p.width;
    Vec v(dim, 0.0);
    v[0] = 1.0;
    for (const auto& step : p.steps) {
        if (const auto* g = std::get_if<cfc::GateStep>(&step.body))
            v = matvec(full_unitary(g->gate, p.width), v);
        else if (const auto* ms = std::get_if<cfc::MeasureStep>(&step.body))
            v = matvec(projector(ms->qubit, ms->post_select, p.width), v);
    }
    return v;
}

inline double success_probability(const cfc::Protocol& p) {
    double n = 0.0;
    for (const cplx& a : run_dense(p)) n += std::norm(a);
    return n;
}

}  // namespace oracle
