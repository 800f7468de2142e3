#pragma once

#include <numbers>

#include "cfc/histories.hpp"
#include "cfc/protocol.hpp"

namespace cfc {

// Qubit layout shared by the protocol families (published numbering minus one):
// 0 subroutine/computer switch, 1 computer switch (chained) or input/output
// register (simple), 2 input/output register, 3 optional run counter.

enum class FourthRegister { None, ComputerIncremented, SubroutineIncremented };

struct ChainedZenoParams {
    int N = 2;        // subroutine cycles per routine; theta = pi/2N
    int Nprime = 2;   // routine cycles; theta' = pi/2N'
    int answer = 0;
    FourthRegister fourth_register = FourthRegister::None;
    int cycles = 0;           // routine cycles to emit; 0 means all Nprime
    bool final_readout = false;  // append the switch measurement used for statistics

    double theta() const { return std::numbers::pi / (2.0 * N); }
    double theta_prime() const { return std::numbers::pi / (2.0 * Nprime); }
};

namespace detail {

inline CheckpointStep chained_checkpoint(std::string id) {
    CheckpointStep c;
    c.id = std::move(id);
    c.qubits = {0, 1};
    c.tokens[0b00] = {"f(1)", "f(2)"};
    c.tokens[0b01] = {"n(1)", "f(2)"};  // pattern bit 0 = qubit 0
    c.tokens[0b10] = {"f(1)", "n(2)"};  // unreachable: computer needs the subroutine
    c.tokens[0b11] = {"n(1)", "n(2)"};
    return c;
}

inline std::string d3_name(int N, int j) {
    if (N == 2) return j == 0 ? "D_3a" : "D_3b";
    return "D_3." + std::to_string(j + 1);
}

}  // namespace detail

/// The chained-Zeno protocol: N' routine cycles, each opening with R' on the
/// subroutine switch and containing N subroutine cycles of controlled R,
/// computer insertion, and a post-selected register measurement; the cycle
/// closes with the D_2 measurement of the computer switch.
inline Protocol build_chained_zeno(const ChainedZenoParams& prm) {
    if (prm.N < 1 || prm.Nprime < 1) throw std::invalid_argument("chained-Zeno: N, N' >= 1");
    if (prm.answer != 0 && prm.answer != 1)
        throw std::invalid_argument("chained-Zeno: answer must be a bit");
    const int cycles = prm.cycles > 0 ? prm.cycles : prm.Nprime;
    if (cycles > prm.Nprime) throw std::invalid_argument("chained-Zeno: cycles > N'");

    Protocol p;
    p.family = "chained";
    p.width = prm.fourth_register == FourthRegister::None ? 3 : 4;
    for (int c = 0; c < cycles; ++c) {
        p.steps.push_back({GateStep{GateSpec::rotation(0, prm.theta_prime())}, "routine-entry"});
        if (prm.fourth_register == FourthRegister::SubroutineIncremented)
            p.steps.push_back({GateStep{GateSpec::register_increment(3, {{0, 1}})}, "counter"});
        for (int j = 0; j < prm.N; ++j) {
            p.steps.push_back({GateStep{GateSpec::rotation(1, prm.theta(), {{0, 1}})},
                               j == prm.N - 1 ? "subroutine-exit" : ""});
            p.steps.push_back({detail::chained_checkpoint(
                                   "c" + std::to_string(c + 1) + "." + std::to_string(j + 1)),
                               ""});
            if (prm.fourth_register == FourthRegister::ComputerIncremented)
                p.steps.push_back(
                    {GateStep{GateSpec::register_increment(3, {{0, 1}, {1, 1}})}, "counter"});
            p.steps.push_back(
                {GateStep{GateSpec::oracle_computer(prm.answer, 2, {{0, 1}, {1, 1}})}, "computer"});
            p.steps.push_back({MeasureStep{2, 0, detail::d3_name(prm.N, j)}, ""});
        }
        p.steps.push_back({MeasureStep{1, 0, "D_2"}, ""});
    }
    if (prm.final_readout)
        p.steps.push_back({MeasureStep{0, prm.answer, "D_1"}, "readout"});
    return p;
}

/// Outcome bits for the all-quiet run (no detector ever clicks).
inline std::vector<int> quiet_outcomes(const Protocol& p) {
    std::vector<int> m;
    for (const auto& step : p.steps)
        if (const auto* ms = std::get_if<MeasureStep>(&step.body))
            m.push_back(ms->detector == "D_1" ? ms->post_select : 0);
    return m;
}

struct SimpleCfcParams {
    int answer = 0;
    bool expose_inner_workings = false;
};

/// The original simple CFC protocol. The switch-superposing operation U is
/// the footnote-7 rotation at pi/4, conditional on the register being |0>.
/// This single convention reproduces both published final states
/// (answers 0 and 1); the matrix printed in the appendix text does not, see
/// the README for the documented discrepancy.
inline Protocol build_simple_cfc(const SimpleCfcParams& prm) {
    if (prm.answer != 0 && prm.answer != 1)
        throw std::invalid_argument("simple CFC: answer must be a bit");
    const double q = std::numbers::pi / 4.0;
    Protocol p;
    p.family = "simple-cfc";
    p.width = 2;
    p.steps.push_back({GateStep{GateSpec::rotation(0, q, {{1, 0}})}, "U"});
    if (!prm.expose_inner_workings) {
        CheckpointStep c;
        c.id = "switch";
        c.qubits = {0};
        c.tokens[0] = {"f"};
        c.tokens[1] = {"n"};
        p.steps.push_back({std::move(c), ""});
        p.steps.push_back({GateStep{GateSpec::oracle_computer(prm.answer, 1, {{0, 1}})}, "computer"});
    } else {
        p.steps.push_back({GateStep{GateSpec::hadamard(1, {{0, 1}})}, "computer"});
        p.steps.push_back({GateStep{GateSpec::phase_oracle(prm.answer, 1, {{0, 1}})}, "computer"});
        CheckpointStep c;  // hypothetical mid-computer read of the register
        c.id = "mid";
        c.qubits = {1};
        c.tokens[0] = {"u"};
        c.tokens[1] = {"n"};
        p.steps.push_back({std::move(c), ""});
        p.steps.push_back({GateStep{GateSpec::hadamard(1, {{0, 1}})}, "computer"});
        p.steps.push_back({MeasureStep{1, 0, "D_reg"}, ""});
    }
    p.steps.push_back({GateStep{GateSpec::rotation(0, q, {{1, 0}})}, "U"});
    // The informative outcome is the complement of the answer: switch 0 is the
    // interaction-free "answer is not 0" inference, switch 1 the deterministic
    // answer-0 result (under this convention; see README on the sign choice).
    p.steps.push_back({MeasureStep{0, 1 - prm.answer, "D_1"}, "readout"});
    return p;
}

enum class EraserMode { Interferometer, Direct };

/// The modified gedanken experiment: three paths to detection point S, one
/// through point C. In interferometer mode the two inner paths recombine on a
/// beamsplitter whose output toward the screen is dark (c1 = -c2 required);
/// direct mode injects arbitrary amplitudes and erases all path information
/// before detection, for definition analysis.
struct EraserParams {
    cplx c1{0.0, 0.0};  // History 1, through point C
    cplx c2{0.0, 0.0};  // History 2, the other interferometer arm
    cplx c3{0.0, 0.0};  // History 3, straight to the screen
    EraserMode mode = EraserMode::Direct;
};

namespace detail {

inline void append_path_preparation(Protocol& p, cplx amp_direct, cplx amp_arm0, cplx amp_arm1) {
    const double s2 = std::norm(amp_direct) + std::norm(amp_arm0) + std::norm(amp_arm1);
    if (s2 > 1.0 + 1e-9)
        throw std::invalid_argument("eraser: path amplitudes exceed unit norm");
    const double s = std::sqrt(std::min(s2, 1.0));
    if (p.width == 3) {  // shunt the missing norm onto the loss qubit
        p.steps.push_back({GateStep{GateSpec::rotation(2, std::acos(std::min(s, 1.0)))}, "loss"});
        p.steps.push_back({MeasureStep{2, 0, "loss"}, ""});
    }
    const double inner = std::hypot(std::abs(amp_arm0), std::abs(amp_arm1));
    p.steps.push_back(
        {GateStep{GateSpec::rotation(0, std::atan2(inner, std::abs(amp_direct)))}, "BS1"});
    p.steps.push_back({GateStep{GateSpec::rotation(
                           1, std::atan2(std::abs(amp_arm1), std::abs(amp_arm0)), {{0, 1}})},
                       "BSa"});
    const auto add_phase = [&p](cplx a, std::vector<Control> conds) {
        if (std::abs(a) < kDropEps || std::abs(std::arg(a)) < 1e-15) return;
        p.steps.push_back({GateStep{GateSpec::phase_shift(std::arg(a), std::move(conds))}, ""});
    };
    add_phase(amp_direct, {{0, 0}});
    add_phase(amp_arm0, {{0, 1}, {1, 0}});
    add_phase(amp_arm1, {{0, 1}, {1, 1}});
    CheckpointStep c;
    c.id = "C";
    c.qubits = {0, 1};
    c.tokens[0b00] = {"D"};  // straight path (History 3)
    c.tokens[0b01] = {"A"};  // inner arm avoiding C (History 2)
    c.tokens[0b10] = {"D"};  // unreachable (arm qubit set outside the interferometer)
    c.tokens[0b11] = {"C"};  // through point C (History 1)
    p.steps.push_back({std::move(c), ""});
}

inline Protocol build_eraser_network(const EraserParams& prm, bool enforce_dark) {
    const double s2 = std::norm(prm.c1) + std::norm(prm.c2) + std::norm(prm.c3);
    Protocol p;
    p.family = "eraser";
    p.width = s2 < 1.0 - 1e-12 ? 3 : 2;
    if (prm.mode == EraserMode::Interferometer) {
        if (enforce_dark && std::abs(prm.c1 + prm.c2) > 1e-12)
            throw std::invalid_argument("eraser: interferometer mode requires c1 = -c2");
        // The arm amplitudes are injected so that the history amplitudes at S
        // come out proportional to (c1, c2, c3) after the recombining optics.
        append_path_preparation(p, prm.c3, -prm.c2, prm.c1);
        p.steps.push_back({GateStep{GateSpec::rotation(1, -std::numbers::pi / 4.0, {{0, 1}})},
                           "recombine"});  // dark port: qubit 1 = 1
        p.steps.push_back({GateStep{GateSpec::register_increment(1, {{0, 1}})}, ""});
        p.steps.push_back({GateStep{GateSpec::rotation(0, std::numbers::pi / 4.0, {{1, 0}})},
                           "eraser"});
        p.steps.push_back({MeasureStep{1, 0, "Q"}, ""});
        p.steps.push_back({MeasureStep{0, 0, "S"}, "screen"});
    } else {
        append_path_preparation(p, prm.c3, prm.c2, prm.c1);
        // Erase all path information: every path reaches S with equal weight.
        p.steps.push_back({GateStep{GateSpec::hadamard(0)}, "eraser"});
        p.steps.push_back({GateStep{GateSpec::hadamard(1)}, ""});
        p.steps.push_back({MeasureStep{1, 0, "Q"}, ""});
        p.steps.push_back({MeasureStep{0, 0, "S"}, "screen"});
    }
    return p;
}

}  // namespace detail

inline Protocol build_interferometer(const EraserParams& prm) {
    return detail::build_eraser_network(prm, /*enforce_dark=*/true);
}

/// The plain (unchained) Zeno scheme: N cycles of R on a single switch with
/// the computer and a post-selected register measurement, then the readout.
/// Reads "answer is not 0" from the switch staying at 0.
inline Protocol build_zeno(int N, int answer) {
    if (N < 1) throw std::invalid_argument("zeno: N >= 1");
    Protocol p;
    p.family = "zeno";
    p.width = 2;
    const double theta = std::numbers::pi / (2.0 * N);
    for (int j = 0; j < N; ++j) {
        p.steps.push_back({GateStep{GateSpec::rotation(0, theta)}, ""});
        p.steps.push_back({GateStep{GateSpec::oracle_computer(answer, 1, {{0, 1}})}, "computer"});
        p.steps.push_back({MeasureStep{1, 0, "D"}, ""});
    }
    p.steps.push_back({MeasureStep{0, 0, "switch"}, "readout"});
    return p;
}

}  // namespace cfc
