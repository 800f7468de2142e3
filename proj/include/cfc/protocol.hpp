#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cfc/gates.hpp"
#include "cfc/state.hpp"

namespace cfc {

struct GateStep {
    GateSpec gate;
};

/// A (hypothetical) labeling point: reads the listed qubits and emits the
/// tokens registered for the observed bit pattern. Pattern bit i is the value
/// of qubits[i]. Patterns are expanded in descending order so that
/// computer-running branches come first, matching the row order of the
/// published tables.
struct CheckpointStep {
    std::string id;
    std::vector<int> qubits;
    std::map<unsigned, std::vector<std::string>> tokens;
};

/// A real, post-selecting measurement: the non-selected branch's probability
/// is recorded against the detector, then discarded.
struct MeasureStep {
    int qubit;
    int post_select;  // 0 or 1
    std::string detector;
};

struct ProtocolStep {
    std::variant<GateStep, CheckpointStep, MeasureStep> body;
    std::string tag;  // builder annotation, used to locate flux probes
};

struct Protocol {
    int width = 0;
    std::string family;  // "chained" | "simple-cfc" | "eraser" | "zeno"
    std::vector<ProtocolStep> steps;

    StateVector initial_state() const { return make_state(BasisLabel{0, width}); }

    size_t measurement_count() const {
        size_t n = 0;
        for (const auto& s : steps) n += std::holds_alternative<MeasureStep>(s.body);
        return n;
    }

    /// Indices of steps carrying the given tag.
    std::vector<size_t> steps_tagged(const std::string& tag) const {
        std::vector<size_t> out;
        for (size_t i = 0; i < steps.size(); ++i)
            if (steps[i].tag == tag) out.push_back(i);
        return out;
    }
};

struct FinalReport {
    StateVector final_state;                 // post-selected, sub-normalized
    double success_probability = 0.0;        // cumulative post-selection probability
    std::map<std::string, double> detector_clicks;
};

/// Applies the steps in order; checkpoints are no-ops here (they only matter
/// for history enumeration). Width of `initial` must match the protocol.
inline FinalReport run_protocol(const Protocol& p, const StateVector& initial) {
    if (initial.width != p.width)
        throw std::invalid_argument("run_protocol: state width does not match protocol");
    FinalReport rep;
    StateVector st = initial;
    for (const auto& step : p.steps) {
        if (const auto* g = std::get_if<GateStep>(&step.body)) {
            st = apply_gate(st, g->gate);
        } else if (const auto* m = std::get_if<MeasureStep>(&step.body)) {
            StateVector rejected = project(st, m->qubit, 1 - m->post_select);
            rep.detector_clicks[m->detector] += norm_sq(rejected);
            st = project(st, m->qubit, m->post_select);
        }
    }
    st.prune();
    rep.success_probability = norm_sq(st);
    rep.final_state = std::move(st);
    return rep;
}

/// Runs the protocol splitting at every measurement instead of post-selecting:
/// one branch per full outcome assignment, keyed by the outcome bits in
/// measurement order. Zero branches are omitted.
inline std::vector<std::pair<std::vector<int>, StateVector>>
branch_all_outcomes(const Protocol& p) {
    std::vector<std::pair<std::vector<int>, StateVector>> branches;
    branches.emplace_back(std::vector<int>{}, p.initial_state());
    for (const auto& step : p.steps) {
        if (const auto* g = std::get_if<GateStep>(&step.body)) {
            for (auto& [m, st] : branches) st = apply_gate(st, g->gate);
        } else if (const auto* ms = std::get_if<MeasureStep>(&step.body)) {
            std::vector<std::pair<std::vector<int>, StateVector>> next;
            for (auto& [m, st] : branches) {
                for (int v : {0, 1}) {
                    StateVector b = project(st, ms->qubit, v);
                    b.prune();
                    if (b.empty()) continue;
                    auto mv = m;
                    mv.push_back(v);
                    next.emplace_back(std::move(mv), std::move(b));
                }
            }
            branches = std::move(next);
        }
    }
    return branches;
}

namespace detail {

inline std::string controls_str(const std::vector<Control>& cs) {
    std::string s;
    for (const auto& c : cs) {
        if (!s.empty()) s += ',';
        s += std::to_string(c.qubit) + ':' + std::to_string(c.value);
    }
    return s;
}

inline const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::Rotation: return "rotation";
        case GateKind::Hadamard: return "hadamard";
        case GateKind::OracleComputer: return "oracle";
        case GateKind::PhaseOracle: return "phase_oracle";
        case GateKind::RegisterIncrement: return "increment";
        case GateKind::PhaseShift: return "phase";
    }
    return "?";
}

}  // namespace detail

/// Line-oriented text form of a protocol (`--dump-protocol`). One step per
/// line; stable format, documented in the README.
inline std::string dump_protocol(const Protocol& p) {
    std::ostringstream os;
    os.precision(12);
    os << "protocol family=" << p.family << " width=" << p.width
       << " steps=" << p.steps.size() << '\n';
    for (const auto& step : p.steps) {
        if (const auto* g = std::get_if<GateStep>(&step.body)) {
            os << "gate kind=" << detail::kind_name(g->gate.kind);
            if (g->gate.kind != GateKind::PhaseShift) os << " target=" << g->gate.target;
            if (g->gate.kind == GateKind::Rotation || g->gate.kind == GateKind::PhaseShift)
                os << " angle=" << g->gate.angle;
            if (g->gate.kind == GateKind::OracleComputer || g->gate.kind == GateKind::PhaseOracle)
                os << " answer=" << g->gate.answer;
            os << " controls=" << detail::controls_str(g->gate.controls);
        } else if (const auto* c = std::get_if<CheckpointStep>(&step.body)) {
            os << "checkpoint id=" << c->id << " qubits=";
            for (size_t i = 0; i < c->qubits.size(); ++i)
                os << (i ? "," : "") << c->qubits[i];
            os << " tokens=";
            bool first = true;
            for (const auto& [pat, toks] : c->tokens) {
                os << (first ? "" : ";") << pat << ':';
                for (size_t i = 0; i < toks.size(); ++i) os << (i ? "|" : "") << toks[i];
                first = false;
            }
        } else {
            const auto& m = std::get<MeasureStep>(step.body);
            os << "measure qubit=" << m.qubit << " select=" << m.post_select
               << " detector=" << m.detector;
        }
        if (!step.tag.empty()) os << " tag=" << step.tag;
        os << '\n';
    }
    return os.str();
}

}  // namespace cfc
