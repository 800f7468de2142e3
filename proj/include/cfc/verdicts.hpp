#pragma once

#include <set>

#include "cfc/builders.hpp"
#include "cfc/histories.hpp"

namespace cfc {

/// Path tokens that mean "the computer (or subroutine) runs".
using RunningPredicate = std::set<std::string>;

enum class Status { Counterfactual, NotCounterfactual, Ambiguous };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Counterfactual: return "counterfactual";
        case Status::NotCounterfactual: return "not_counterfactual";
        case Status::Ambiguous: return "ambiguous";
    }
    return "?";
}

/// One cancellation choice: a maximal collection of pairwise-disjoint minimal
/// cancelling subsets (row indices into the table that was judged).
using CancellationChoice = std::vector<std::vector<size_t>>;

struct Verdict {
    std::string criterion;  // "mj" | "cancellation"
    Status status = Status::NotCounterfactual;
    std::vector<size_t> witnesses;   // rows defeating counterfactuality
    std::vector<size_t> survivors;   // rows left standing when counterfactual
    std::vector<CancellationChoice> cancellation_choices;  // all, when ambiguous
    std::set<int> computer_outputs;  // answers consistent with the outcome set
};

inline bool row_runs(const History& row, const RunningPredicate& running) {
    for (const auto& t : row.path_tokens())
        if (running.count(t)) return true;
    return false;
}

/// Mitchison-Jozsa: the outcome set is computed counterfactually iff exactly
/// one history is associated to it, that history carries no running token,
/// and a single computer output is associated with the outcome set. An empty
/// `outputs` set means the caller vouches for a deterministic inference rule.
inline Verdict mj_verdict(const HistoryTable& table, const RunningPredicate& running,
                          const std::set<int>& outputs = {}) {
    Verdict v;
    v.criterion = "mj";
    v.computer_outputs = outputs;
    if (table.rows.empty()) throw std::invalid_argument("mj_verdict: empty table");
    const bool single_output = outputs.size() <= 1;
    if (table.rows.size() == 1 && !row_runs(table.rows[0], running) && single_output) {
        v.status = Status::Counterfactual;
        v.survivors = {0};
        return v;
    }
    v.status = Status::NotCounterfactual;
    for (size_t i = 0; i < table.rows.size(); ++i)
        if (row_runs(table.rows[i], running)) v.witnesses.push_back(i);
    if (v.witnesses.empty() && table.rows.size() > 1)
        for (size_t i = 0; i < table.rows.size(); ++i) v.witnesses.push_back(i);
    return v;
}

namespace detail {

inline bool disjoint(const std::vector<size_t>& a, const std::vector<size_t>& b) {
    for (size_t x : a)
        for (size_t y : b)
            if (x == y) return false;
    return true;
}

/// All maximal collections of pairwise-disjoint subsets, order-free.
inline std::vector<CancellationChoice> maximal_disjoint_collections(
    const std::vector<std::vector<size_t>>& subsets) {
    std::vector<CancellationChoice> out;
    CancellationChoice current;
    auto extendable = [&](const CancellationChoice& coll) {
        for (const auto& s : subsets) {
            bool ok = true;
            for (const auto& c : coll) ok = ok && disjoint(s, c);
            if (ok) return true;
        }
        return false;
    };
    auto rec = [&](auto&& self, size_t start) -> void {
        bool extended = false;
        for (size_t i = start; i < subsets.size(); ++i) {
            bool ok = true;
            for (const auto& c : current) ok = ok && disjoint(subsets[i], c);
            if (!ok) continue;
            extended = true;
            current.push_back(subsets[i]);
            self(self, i + 1);
            current.pop_back();
        }
        // Maximal iff no subset at all (not just at indices >= start) fits.
        if (!extended && !extendable(current)) out.push_back(current);
    };
    rec(rec, 0);
    if (out.empty()) out.push_back({});  // no cancellations: one trivial choice
    return out;
}

}  // namespace detail

/// The proposed cancellation definition: delete a maximal collection of
/// disjoint zero-sum history subsets, then demand no surviving running token
/// and a single associated computer output. Every maximal deletion choice is
/// evaluated; disagreement between choices is reported as `ambiguous`.
inline Verdict hosten_verdict(const HistoryTable& table, const RunningPredicate& running,
                              const std::set<int>& outputs = {}) {
    Verdict v;
    v.criterion = "cancellation";
    v.computer_outputs = outputs;
    if (table.rows.empty()) throw std::invalid_argument("hosten_verdict: empty table");
    const auto subsets = find_cancelling_subsets(table);
    const auto choices = detail::maximal_disjoint_collections(subsets);
    const bool single_output = outputs.size() <= 1;

    std::vector<Status> statuses;
    std::vector<std::vector<size_t>> survivor_sets;
    for (const auto& choice : choices) {
        std::set<size_t> removed;
        for (const auto& s : choice) removed.insert(s.begin(), s.end());
        std::vector<size_t> survivors;
        bool runs = false;
        for (size_t i = 0; i < table.rows.size(); ++i) {
            if (removed.count(i)) continue;
            survivors.push_back(i);
            runs = runs || row_runs(table.rows[i], running);
        }
        statuses.push_back(!runs && single_output ? Status::Counterfactual
                                                  : Status::NotCounterfactual);
        survivor_sets.push_back(std::move(survivors));
    }
    const bool agree =
        std::all_of(statuses.begin(), statuses.end(), [&](Status s) { return s == statuses[0]; });
    if (!agree) {
        v.status = Status::Ambiguous;
        v.cancellation_choices = choices;
        return v;
    }
    v.status = statuses[0];
    v.cancellation_choices = {choices[0]};
    if (v.status == Status::Counterfactual) {
        v.survivors = survivor_sets[0];
    } else {
        for (size_t i : survivor_sets[0])
            if (row_runs(table.rows[i], running) || !single_output) v.witnesses.push_back(i);
    }
    return v;
}

/// A flux probe: after every protocol step carrying `tag`, measure the
/// magnitude sqrt(sum |amp|^2) of the basis terms matching `region` in the
/// stepwise post-selected state.
struct FluxProbe {
    std::string tag;
    std::vector<Control> region;
};

struct FluxSample {
    size_t step_index;
    double magnitude;
};

struct FluxReport {
    double max_magnitude = 0.0;
    size_t max_step = 0;
    bool pass = true;  // iff max_magnitude < kCancelEps
    std::vector<FluxSample> samples;
};

/// The stepwise dark-port criterion: simulate with post-selection and check
/// that no amplitude ever enters the designated region. This is the
/// basis-dependent, physically grounded notion of "the computer never ran";
/// the basis is the one fixed by the protocol builder.
inline FluxReport flux_verdict(const Protocol& p, const std::vector<FluxProbe>& probes,
                               const StateVector& initial) {
    FluxReport rep;
    StateVector st = initial;
    bool probed = false;
    for (size_t i = 0; i < p.steps.size(); ++i) {
        const auto& step = p.steps[i];
        if (const auto* g = std::get_if<GateStep>(&step.body))
            st = apply_gate(st, g->gate);
        else if (const auto* m = std::get_if<MeasureStep>(&step.body))
            st = project(st, m->qubit, m->post_select);
        for (const auto& probe : probes) {
            if (step.tag != probe.tag) continue;
            probed = true;
            double sq = 0.0;
            for (const auto& [bits, amp] : st.terms)
                if (controls_match(probe.region, bits)) sq += std::norm(amp);
            const double mag = std::sqrt(sq);
            rep.samples.push_back({i, mag});
            if (mag > rep.max_magnitude) {
                rep.max_magnitude = mag;
                rep.max_step = i;
            }
        }
    }
    if (!probed) throw std::invalid_argument("flux_verdict: no step carries a probed tag");
    rep.pass = rep.max_magnitude < kCancelEps;
    return rep;
}

inline FluxReport flux_verdict(const Protocol& p, const std::vector<FluxProbe>& probes) {
    return flux_verdict(p, probes, p.initial_state());
}

/// Canonical flux probes per protocol family.
inline std::vector<FluxProbe> chained_dark_path_probes() {
    // Subroutine-exit dark path: subroutine switch on, computer switch off,
    // sampled after the last R of every subroutine.
    return {{"subroutine-exit", {{0, 1}, {1, 0}}}};
}

inline std::vector<FluxProbe> simple_cfc_probes() {
    // Register carries the computer's mark: qubit 1 = 1 in the branch that
    // survives the final post-selected readout.
    return {{"readout", {{1, 1}}}};
}

inline std::vector<FluxProbe> eraser_probes() {
    // Output port of the recombining beamsplitter that heads to the screen.
    return {{"recombine", {{0, 1}, {1, 1}}}};
}

/// Probability of the exact outcome tuple m under a protocol, ignoring the
/// built-in post-selections (used for computer-output association).
inline double outcome_probability(const Protocol& p, const std::vector<int>& m) {
    for (const auto& [bits, branch] : branch_all_outcomes(p))
        if (bits == m) return norm_sq(branch);
    return 0.0;
}

/// All three criteria evaluated on one scenario, with the judged tables.
struct ScenarioReport {
    std::string family;
    std::vector<int> outcome;  // the outcome set m the verdicts condition on
    HistoryTable fine;
    HistoryTable coarse;
    Verdict mj;      // judged on the coarse table
    Verdict hosten;  // judged on the fine table
    FluxReport flux;
};

/// Chained-Zeno scenario. Histories are judged on a single routine cycle (all
/// N' cycles are identical copies, and the full table grows combinatorially);
/// the flux probe runs over the complete protocol. The computer output
/// associated with the all-quiet outcome is the one the final readout rule
/// infers, which is unique by construction.
inline ScenarioReport verdict_matrix(const ChainedZenoParams& prm) {
    ScenarioReport rep;
    rep.family = "chained";
    ChainedZenoParams one = prm;
    one.cycles = 1;
    one.final_readout = false;
    Protocol cycle = build_chained_zeno(one);
    rep.outcome = quiet_outcomes(cycle);
    rep.fine = enumerate_histories(cycle, rep.outcome);
    rep.coarse = coarse_grain(rep.fine, mj_coarse_map());
    const std::set<int> outputs = {prm.answer};
    rep.mj = mj_verdict(rep.coarse, {"n"}, outputs);
    rep.hosten = hosten_verdict(rep.fine, {"n(2)"}, outputs);
    ChainedZenoParams full = prm;
    full.cycles = 0;
    full.final_readout = false;
    rep.flux = flux_verdict(build_chained_zeno(full), chained_dark_path_probes());
    return rep;
}

/// Simple CFC scenario, judged on the informative final-readout outcome.
/// Computer-output association here is by outcome probability: an answer is
/// associated with m iff m has nonzero probability under that answer.
inline ScenarioReport verdict_matrix(const SimpleCfcParams& prm) {
    ScenarioReport rep;
    rep.family = "simple-cfc";
    Protocol p = build_simple_cfc(prm);
    rep.outcome = quiet_outcomes(p);
    rep.fine = enumerate_histories(p, rep.outcome);
    rep.coarse = rep.fine;  // the n/f/u alphabet is already the MJ granularity
    std::set<int> outputs;
    for (int a : {0, 1}) {
        SimpleCfcParams q = prm;
        q.answer = a;
        if (outcome_probability(build_simple_cfc(q), rep.outcome) > kDropEps) outputs.insert(a);
    }
    rep.mj = mj_verdict(rep.coarse, {"n"}, outputs);
    rep.hosten = hosten_verdict(rep.fine, {"n"}, outputs);
    rep.flux = flux_verdict(p, simple_cfc_probes());
    return rep;
}

/// Interferometer scenario: histories from the information-erasing network,
/// flux from the two-beamsplitter realization. There is no computer, so the
/// output-association condition is vacuous.
inline ScenarioReport verdict_matrix(const EraserParams& prm) {
    ScenarioReport rep;
    rep.family = "eraser";
    EraserParams direct = prm;
    direct.mode = EraserMode::Direct;
    Protocol p = detail::build_eraser_network(direct, /*enforce_dark=*/false);
    rep.outcome = quiet_outcomes(p);
    rep.fine = enumerate_histories(p, rep.outcome);
    rep.coarse = rep.fine;
    rep.mj = mj_verdict(rep.fine, {"C"});
    rep.hosten = hosten_verdict(rep.fine, {"C"});
    EraserParams ifm = prm;
    ifm.mode = EraserMode::Interferometer;
    rep.flux = flux_verdict(detail::build_eraser_network(ifm, /*enforce_dark=*/false),
                            eraser_probes());
    return rep;
}

}  // namespace cfc
