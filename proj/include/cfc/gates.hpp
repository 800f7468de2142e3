#pragma once

#include <array>
#include <vector>

#include "cfc/state.hpp"

namespace cfc {

/// A gate (or phase) fires on a term only when every control matches.
struct Control {
    int qubit;
    int value;
    friend auto operator<=>(const Control&, const Control&) = default;
};

enum class GateKind {
    Rotation,          // |0> -> cos t|0> + sin t|1>,  |1> -> -sin t|0> + cos t|1>
    Hadamard,          // |0> -> (|0>+|1>)/sqrt2,      |1> -> (|0>-|1>)/sqrt2
    OracleComputer,    // X on target iff answer == 1, else identity
    PhaseOracle,       // pi phase on target |1> iff answer == 1
    RegisterIncrement, // X on target (flips a one-qubit counter)
    PhaseShift,        // e^{i angle} on every term matching the controls
};

struct GateSpec {
    GateKind kind;
    int target = -1;  // unused for PhaseShift
    double angle = 0.0;
    int answer = 0;
    std::vector<Control> controls;

    static GateSpec rotation(int target, double angle, std::vector<Control> ctrls = {}) {
        return {GateKind::Rotation, target, angle, 0, std::move(ctrls)};
    }
    static GateSpec hadamard(int target, std::vector<Control> ctrls = {}) {
        return {GateKind::Hadamard, target, 0.0, 0, std::move(ctrls)};
    }
    static GateSpec oracle_computer(int answer, int target, std::vector<Control> ctrls = {}) {
        return {GateKind::OracleComputer, target, 0.0, answer, std::move(ctrls)};
    }
    static GateSpec phase_oracle(int answer, int target, std::vector<Control> ctrls = {}) {
        return {GateKind::PhaseOracle, target, 0.0, answer, std::move(ctrls)};
    }
    static GateSpec register_increment(int target, std::vector<Control> ctrls = {}) {
        return {GateKind::RegisterIncrement, target, 0.0, 0, std::move(ctrls)};
    }
    static GateSpec phase_shift(double angle, std::vector<Control> ctrls) {
        return {GateKind::PhaseShift, -1, angle, 0, std::move(ctrls)};
    }
};

inline bool controls_match(const std::vector<Control>& ctrls, unsigned bits) {
    for (const auto& c : ctrls)
        if (static_cast<int>((bits >> c.qubit) & 1u) != c.value) return false;
    return true;
}

/// Single-qubit matrix as columns: m[j] is the image of |j>, m[j][i] = <i|U|j>.
using Mat2 = std::array<std::array<cplx, 2>, 2>;

inline Mat2 gate_matrix(const GateSpec& g) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::Rotation: {
            double c = std::cos(g.angle), s = std::sin(g.angle);
            return {{{c, s}, {-s, c}}};
        }
        case GateKind::Hadamard:
            return {{{r, r}, {r, -r}}};
        case GateKind::OracleComputer:
        case GateKind::RegisterIncrement:
            if (g.kind == GateKind::OracleComputer && g.answer == 0)
                return {{{1, 0}, {0, 1}}};
            return {{{0, 1}, {1, 0}}};
        case GateKind::PhaseOracle:
            return {{{1, 0}, {0, g.answer ? -1.0 : 1.0}}};
        case GateKind::PhaseShift:
            throw std::invalid_argument("PhaseShift has no single-qubit matrix");
    }
    throw std::invalid_argument("unknown gate kind");
}

/// Unitary image of `state`. Terms failing a control pass through unchanged;
/// the norm is preserved to rounding.
inline StateVector apply_gate(const StateVector& state, const GateSpec& g) {
    if (g.kind == GateKind::PhaseShift) {
        StateVector out;
        out.width = state.width;
        const cplx ph = std::polar(1.0, g.angle);
        for (const auto& [bits, amp] : state.terms)
            out.terms[bits] = controls_match(g.controls, bits) ? amp * ph : amp;
        return out;
    }
    if (g.target < 0 || g.target >= state.width)
        throw std::out_of_range("apply_gate: target qubit out of range");
    for (const auto& c : g.controls)
        if (c.qubit < 0 || c.qubit >= state.width)
            throw std::out_of_range("apply_gate: control qubit out of range");

    const Mat2 m = gate_matrix(g);
    StateVector out;
    out.width = state.width;
    for (const auto& [bits, amp] : state.terms) {
        if (!controls_match(g.controls, bits)) {
            out.add_term(bits, amp);
            continue;
        }
        const unsigned j = (bits >> g.target) & 1u;
        const unsigned b0 = bits & ~(1u << g.target);
        if (std::abs(m[j][0]) > 0.0) out.add_term(b0, amp * m[j][0]);
        if (std::abs(m[j][1]) > 0.0) out.add_term(b0 | (1u << g.target), amp * m[j][1]);
    }
    return out;
}

}  // namespace cfc
