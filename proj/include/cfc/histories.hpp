#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cfc/protocol.hpp"

namespace cfc {

/// One entry of a history label: either a path token emitted by a checkpoint
/// (n(1), f(2), n, u, ...) or a measurement-outcome token (0_3, 1_1, ...).
struct HistoryToken {
    std::string text;
    bool outcome = false;
    friend auto operator<=>(const HistoryToken&, const HistoryToken&) = default;
};

inline HistoryToken outcome_token(int value, int qubit) {
    return {std::to_string(value) + "_" + std::to_string(qubit + 1), true};
}

/// Renders a token sequence in the published table style:
/// checkpoint tokens run together, a space after each measurement outcome.
/// Example: "n(1)n(2)0_3 n(1)f(2)0_3 0_2".
inline std::string render_label(const std::vector<HistoryToken>& tokens) {
    std::string s;
    for (const auto& t : tokens) {
        s += t.text;
        if (t.outcome) s += ' ';
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

/// A quantum path: its label and the amplitude-weighted vector it contributes
/// to the post-selected final state. Fine-grained histories of the protocols
/// in scope end in a single basis term; coarse-grained rows may carry several.
struct History {
    std::vector<HistoryToken> tokens;
    StateVector vec;

    std::string label() const { return render_label(tokens); }

    std::vector<std::string> path_tokens() const {
        std::vector<std::string> out;
        for (const auto& t : tokens)
            if (!t.outcome) out.push_back(t.text);
        return out;
    }
};

/// All histories sharing one outcome set m. The rows sum to the post-selected
/// branch of run_protocol: histories are a decomposition, not a new theory.
struct HistoryTable {
    std::vector<HistoryToken> outcome;  // the shared m, in measurement order
    std::vector<History> rows;

    std::string outcome_label() const { return render_label(outcome); }
};

inline StateVector total_vector(const HistoryTable& table) {
    StateVector sum;
    for (const auto& row : table.rows) sum = add(sum, row.vec);
    sum.prune();
    return sum;
}

/// Depth-first path expansion over the protocol's checkpoints. `outcomes`
/// gives the required measurement results in step order (one bit per
/// measurement step). Paths that die at a post-selection or fall below
/// kDropEps are discarded.
inline HistoryTable enumerate_histories(const Protocol& p, const std::vector<int>& outcomes) {
    if (outcomes.size() != p.measurement_count())
        throw std::invalid_argument(
            "enumerate_histories: outcome count does not match measurement steps");
    for (int v : outcomes)
        if (v != 0 && v != 1)
            throw std::invalid_argument("enumerate_histories: outcomes must be bits");

    struct Path {
        std::vector<HistoryToken> tokens;
        StateVector state;
    };
    std::vector<Path> paths{{{}, p.initial_state()}};
    HistoryTable table;
    size_t mi = 0;
    for (const auto& step : p.steps) {
        if (const auto* g = std::get_if<GateStep>(&step.body)) {
            for (auto& path : paths) path.state = apply_gate(path.state, g->gate);
        } else if (const auto* c = std::get_if<CheckpointStep>(&step.body)) {
            std::vector<Path> next;
            for (auto& path : paths) {
                // Descending pattern order: running branches before idle ones.
                for (auto it = c->tokens.rbegin(); it != c->tokens.rend(); ++it) {
                    const auto& [pattern, toks] = *it;
                    StateVector branch = path.state;
                    for (size_t i = 0; i < c->qubits.size(); ++i)
                        branch = project(branch, c->qubits[i],
                                         static_cast<int>((pattern >> i) & 1u));
                    branch.prune();
                    if (branch.empty()) continue;
                    Path np{path.tokens, std::move(branch)};
                    for (const auto& t : toks) np.tokens.push_back({t, false});
                    next.push_back(std::move(np));
                }
            }
            paths = std::move(next);
        } else {
            const auto& m = std::get<MeasureStep>(step.body);
            const int want = outcomes[mi++];
            std::vector<Path> next;
            for (auto& path : paths) {
                StateVector branch = project(path.state, m.qubit, want);
                branch.prune();
                if (branch.empty()) continue;
                Path np{path.tokens, std::move(branch)};
                np.tokens.push_back(outcome_token(want, m.qubit));
                next.push_back(std::move(np));
            }
            paths = std::move(next);
        }
    }
    for (size_t i = 0; i < outcomes.size(); ++i) {
        // Reconstruct m from the measurement steps, in order.
        size_t k = 0;
        for (const auto& step : p.steps)
            if (const auto* m = std::get_if<MeasureStep>(&step.body)) {
                if (k++ == i) table.outcome.push_back(outcome_token(outcomes[i], m->qubit));
            }
    }
    for (auto& path : paths) table.rows.push_back({std::move(path.tokens), std::move(path.state)});
    return table;
}

/// One coarse-graining rule: a run of fine path tokens replaced by coarse
/// ones. Rules are tried in order at each position of the (outcome-free)
/// token stream; outcome tokens always pass through unchanged.
struct RelabelRule {
    std::vector<std::string> from;
    std::vector<std::string> to;
};

/// The Mitchison-Jozsa single-variable alphabet for the chained-Zeno tables:
/// only the computer on/off distinction survives.
inline std::vector<RelabelRule> mj_coarse_map() {
    return {{{"n(1)", "n(2)"}, {"n"}},
            {{"n(1)", "f(2)"}, {"f"}},
            {{"f(1)", "f(2)"}, {"f"}}};
}

inline std::vector<HistoryToken> relabel_tokens(const std::vector<HistoryToken>& tokens,
                                                const std::vector<RelabelRule>& rules) {
    std::vector<HistoryToken> out;
    size_t i = 0;
    while (i < tokens.size()) {
        if (tokens[i].outcome) {
            out.push_back(tokens[i++]);
            continue;
        }
        bool matched = false;
        for (const auto& rule : rules) {
            if (i + rule.from.size() > tokens.size()) continue;
            bool ok = true;
            for (size_t j = 0; j < rule.from.size(); ++j)
                ok = ok && !tokens[i + j].outcome && tokens[i + j].text == rule.from[j];
            if (!ok) continue;
            for (const auto& t : rule.to) out.push_back({t, false});
            i += rule.from.size();
            matched = true;
            break;
        }
        if (!matched)
            throw std::invalid_argument("coarse_grain: relabel map not total on token '" +
                                        tokens[i].text + "'");
    }
    return out;
}

/// Merges rows whose relabeled token sequences coincide; merged vectors are
/// summed (and dropped when they cancel to zero). Row order is by first
/// appearance, matching the published coarse tables.
inline HistoryTable coarse_grain(const HistoryTable& table, const std::vector<RelabelRule>& rules) {
    HistoryTable out;
    out.outcome = table.outcome;
    for (const auto& row : table.rows) {
        auto coarse = relabel_tokens(row.tokens, rules);
        auto it = std::find_if(out.rows.begin(), out.rows.end(),
                               [&](const History& r) { return r.tokens == coarse; });
        if (it == out.rows.end())
            out.rows.push_back({std::move(coarse), row.vec});
        else
            it->vec = add(it->vec, row.vec);
    }
    std::erase_if(out.rows, [](const History& r) {
        StateVector v = r.vec;
        v.prune();
        return v.empty();
    });
    return out;
}

/// All minimal nonempty row subsets whose vectors sum to zero (componentwise
/// below kCancelEps relative to the largest row amplitude). Exhaustive over
/// the power set; tables in scope stay small.
inline std::vector<std::vector<size_t>> find_cancelling_subsets(const HistoryTable& table) {
    const size_t n = table.rows.size();
    if (n == 0) throw std::invalid_argument("find_cancelling_subsets: empty table");
    if (n > 20) throw std::invalid_argument("find_cancelling_subsets: table too large");

    double amax = 0.0;
    for (const auto& row : table.rows)
        for (const auto& [bits, amp] : row.vec.terms) amax = std::max(amax, std::abs(amp));
    const double eps = kCancelEps * std::max(amax, 1e-300);

    std::vector<unsigned> zero_masks;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        StateVector sum;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sum = add(sum, table.rows[i].vec);
        bool zero = true;
        for (const auto& [bits, amp] : sum.terms) zero = zero && std::abs(amp) < eps;
        if (zero) zero_masks.push_back(mask);
    }
    std::vector<std::vector<size_t>> minimal;
    for (unsigned m : zero_masks) {
        bool is_minimal = true;
        for (unsigned sub : zero_masks)
            if (sub != m && (sub & m) == sub) is_minimal = false;
        if (!is_minimal) continue;
        std::vector<size_t> rows;
        for (size_t i = 0; i < n; ++i)
            if (m & (1u << i)) rows.push_back(i);
        minimal.push_back(std::move(rows));
    }
    return minimal;
}

/// Every history table of the protocol (one per reachable outcome set),
/// keyed by outcome bits in measurement order.
inline std::vector<std::pair<std::vector<int>, HistoryTable>> all_history_tables(
    const Protocol& p) {
    std::vector<std::pair<std::vector<int>, HistoryTable>> out;
    for (const auto& [m, branch] : branch_all_outcomes(p))
        out.emplace_back(m, enumerate_histories(p, m));
    return out;
}

}  // namespace cfc
