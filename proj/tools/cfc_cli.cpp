// Command-line front end: emits the history tables, interferometer reports,
// verdict matrices, and Zeno probability scans as CSV or JSON.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "cfc/cfc.hpp"

namespace {

using namespace cfc;

struct GlobalOpts {
    std::string format = "csv";
    bool dump = false;
};

/// Internal consistency gate: the history decomposition must reproduce the
/// simulator branch, and outcome probabilities must be complete. A violation
/// is a bug, reported via nonzero exit.
void check_invariants(const Protocol& p, const std::vector<int>& m, const HistoryTable& table) {
    StateVector branch;
    double total = 0.0;
    for (const auto& [bits, st] : branch_all_outcomes(p)) {
        total += norm_sq(st);
        if (bits == m) branch = st;
    }
    if (max_diff(total_vector(table), branch) > 1e-12)
        throw std::runtime_error("invariant violation: history sum != simulator branch");
    if (std::abs(total - 1.0) > 1e-9)
        throw std::runtime_error("invariant violation: outcome probabilities do not sum to 1");
}

void emit_table_cmd(const GlobalOpts& g, const Protocol& p, const HistoryTable& table,
                    const std::vector<int>& m, const std::vector<SymbolicForm>& forms) {
    check_invariants(p, m, table);
    if (g.dump) {
        std::cout << dump_protocol(p);
        return;
    }
    if (g.format == "json")
        std::cout << table_to_json(table, forms).dump(2) << '\n';
    else
        std::cout << table_to_csv(table, forms);
}

std::vector<SymbolicForm> chained_forms(double tp) {
    return {{"cos(th')", std::cos(tp)},
            {"sin(th')/2", std::sin(tp) / 2},
            {"-sin(th')/2", -std::sin(tp) / 2},
            {"sin(th')", std::sin(tp)},
            {"-sin(th')", -std::sin(tp)}};
}

std::vector<SymbolicForm> simple_forms() {
    return {{"1/2", 0.5}, {"-1/2", -0.5}, {"1/4", 0.25}, {"-1/4", -0.25},
            {"3/4", 0.75}, {"-3/4", -0.75}, {"1/sqrt(2)", 1 / std::sqrt(2.0)}};
}

cplx parse_amp(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

void emit_verdicts(const GlobalOpts& g, const ScenarioReport& rep, const Protocol& judged) {
    check_invariants(judged, rep.outcome, rep.fine);
    if (g.dump) {
        std::cout << dump_protocol(judged);
        return;
    }
    if (g.format == "json") {
        std::cout << scenario_to_json(rep).dump(2) << '\n';
        return;
    }
    std::cout << "# fine table (" << rep.fine.outcome_label() << ")\n"
              << table_to_csv(rep.fine) << "# coarse table\n"
              << table_to_csv(rep.coarse) << "criterion,status\n"
              << "mj," << status_name(rep.mj.status) << '\n'
              << "cancellation," << status_name(rep.hosten.status) << '\n'
              << "flux," << (rep.flux.pass ? "pass" : "fail") << '\n';
}

}  // namespace

int main(int argc, char** argv) try {
    CLI::App app{"Counterfactual-computation protocol simulator and analyzer"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --format/--dump-protocol after the subcommand too
    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--dump-protocol", g.dump, "Print the protocol step listing and exit");

    int N = 2, Nprime = 2, answer = 0, maxN = 16, maxNprime = 16;
    bool exposed = false;
    std::string scheme = "chained", family = "chained", fourth = "none";
    std::string c1 = "0.5", c2 = "-0.5", c3 = "0.5";

    auto* t1 = app.add_subcommand("table1", "Chained-Zeno single-cycle fine histories");
    auto* t2 = app.add_subcommand("table2", "The same table under MJ coarse-graining");
    auto* t3 = app.add_subcommand("table3", "Fine histories with the run-counter register");
    for (auto* t : {t1, t2, t3}) {
        t->add_option("--N", N, "Subroutine cycles")->capture_default_str();
        t->add_option("--Nprime", Nprime, "Routine cycles")->capture_default_str();
    }
    auto* t4a = app.add_subcommand("table4a", "Simple CFC, answer 1, black box");
    auto* t4b = app.add_subcommand("table4b", "Simple CFC, answer 0, exposed inner workings");
    auto* fig8 = app.add_subcommand("fig8", "Three-path eraser experiment report");
    fig8->add_option("--c1", c1, "Amplitude through point C (re[,im])")->capture_default_str();
    fig8->add_option("--c2", c2, "Other interferometer arm amplitude")->capture_default_str();
    fig8->add_option("--c3", c3, "Straight-path amplitude")->capture_default_str();
    auto* zeno = app.add_subcommand("zeno", "Plain Zeno scheme probabilities");
    zeno->add_option("--N", N, "Cycles")->capture_default_str();
    auto* chained = app.add_subcommand("chained", "Full chained-Zeno run report");
    chained->add_option("--N", N)->capture_default_str();
    chained->add_option("--Nprime", Nprime)->capture_default_str();
    chained->add_option("--answer", answer)->check(CLI::Range(0, 1))->capture_default_str();
    auto* scan = app.add_subcommand("scan", "Probability scan over (N, N')");
    scan->add_option("--scheme", scheme)->check(CLI::IsMember({"zeno", "chained"}));
    scan->add_option("--max-N", maxN)->capture_default_str();
    scan->add_option("--max-Nprime", maxNprime)->capture_default_str();
    auto* verd = app.add_subcommand("verdicts", "All three criteria for one scenario");
    verd->add_option("--protocol", family)
        ->check(CLI::IsMember({"chained", "simple-cfc", "eraser"}))
        ->capture_default_str();
    verd->add_option("--N", N)->capture_default_str();
    verd->add_option("--Nprime", Nprime)->capture_default_str();
    verd->add_option("--answer", answer)->check(CLI::Range(0, 1))->capture_default_str();
    verd->add_option("--fourth-register", fourth)
        ->check(CLI::IsMember({"none", "computer", "subroutine"}))
        ->capture_default_str();
    verd->add_flag("--exposed", exposed, "Expose the simple computer's inner workings");
    verd->add_option("--c1", c1)->capture_default_str();
    verd->add_option("--c2", c2)->capture_default_str();
    verd->add_option("--c3", c3)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const auto fourth_mode = fourth == "computer"    ? FourthRegister::ComputerIncremented
                             : fourth == "subroutine" ? FourthRegister::SubroutineIncremented
                                                      : FourthRegister::None;

    if (t1->parsed() || t2->parsed() || t3->parsed()) {
        ChainedZenoParams prm;
        prm.N = N;
        prm.Nprime = Nprime;
        prm.cycles = 1;
        if (t3->parsed()) prm.fourth_register = FourthRegister::SubroutineIncremented;
        const Protocol p = build_chained_zeno(prm);
        const auto m = quiet_outcomes(p);
        HistoryTable table = enumerate_histories(p, m);
        if (t2->parsed()) table = coarse_grain(table, mj_coarse_map());
        // Invariants are checked on the fine decomposition.
        check_invariants(p, m, enumerate_histories(p, m));
        if (g.dump) {
            std::cout << dump_protocol(p);
        } else if (g.format == "json") {
            std::cout << table_to_json(table, chained_forms(prm.theta_prime())).dump(2) << '\n';
        } else {
            std::cout << table_to_csv(table, chained_forms(prm.theta_prime()));
        }
    } else if (t4a->parsed() || t4b->parsed()) {
        SimpleCfcParams prm;
        prm.answer = t4a->parsed() ? 1 : 0;
        prm.expose_inner_workings = t4b->parsed();
        const Protocol p = build_simple_cfc(prm);
        const auto m = quiet_outcomes(p);
        emit_table_cmd(g, p, enumerate_histories(p, m), m, simple_forms());
    } else if (fig8->parsed()) {
        EraserParams prm{parse_amp(c1), parse_amp(c2), parse_amp(c3), EraserMode::Direct};
        const ScenarioReport rep = verdict_matrix(prm);
        EraserParams direct = prm;
        emit_verdicts(g, rep, detail::build_eraser_network(direct, false));
    } else if (zeno->parsed()) {
        const ZenoStats st = zeno_probabilities(N);
        if (g.dump)
            std::cout << dump_protocol(build_zeno(N, 1));
        else if (g.format == "json")
            std::cout << stats_to_json(st).dump(2) << '\n';
        else
            std::cout << "N,Nprime,p0,p1,sum\n" << stats_to_csv_line(st);
    } else if (chained->parsed()) {
        ChainedZenoParams prm;
        prm.N = N;
        prm.Nprime = Nprime;
        prm.answer = answer;
        prm.final_readout = true;
        const Protocol p = build_chained_zeno(prm);
        if (g.dump) {
            std::cout << dump_protocol(p);
        } else {
            const FinalReport rep = run_protocol(p, p.initial_state());
            json j = {{"scheme", "chained"},
                      {"N", N},
                      {"Nprime", Nprime},
                      {"answer", answer},
                      {"success_probability", rep.success_probability},
                      {"detectors", rep.detector_clicks}};
            if (g.format == "json") {
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "N,Nprime,answer,success_probability\n"
                          << N << ',' << Nprime << ',' << answer << ','
                          << format_number(rep.success_probability) << '\n';
            }
        }
    } else if (scan->parsed()) {
        if (g.format == "json") {
            json rows = json::array();
            if (scheme == "zeno")
                for (int n = 1; n <= maxN; ++n) rows.push_back(stats_to_json(zeno_probabilities(n)));
            else
                for (int n = 1; n <= maxN; ++n)
                    for (int np = 1; np <= maxNprime; ++np)
                        rows.push_back(stats_to_json(chained_probabilities(n, np)));
            std::cout << rows.dump(2) << '\n';
        } else {
            std::cout << "N,Nprime,p0,p1,sum\n";
            if (scheme == "zeno")
                for (int n = 1; n <= maxN; ++n) std::cout << stats_to_csv_line(zeno_probabilities(n));
            else
                for (int n = 1; n <= maxN; ++n)
                    for (int np = 1; np <= maxNprime; ++np)
                        std::cout << stats_to_csv_line(chained_probabilities(n, np));
        }
    } else if (verd->parsed()) {
        if (family == "chained") {
            ChainedZenoParams prm;
            prm.N = N;
            prm.Nprime = Nprime;
            prm.answer = answer;
            prm.fourth_register = fourth_mode;
            ChainedZenoParams one = prm;
            one.cycles = 1;
            emit_verdicts(g, verdict_matrix(prm), build_chained_zeno(one));
        } else if (family == "simple-cfc") {
            SimpleCfcParams prm{answer, exposed};
            emit_verdicts(g, verdict_matrix(prm), build_simple_cfc(prm));
        } else {
            EraserParams prm{parse_amp(c1), parse_amp(c2), parse_amp(c3), EraserMode::Direct};
            emit_verdicts(g, verdict_matrix(prm), detail::build_eraser_network(prm, false));
        }
    }
    return 0;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
}
