#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <sstream>

#include "cfc/cfc.hpp"

using namespace cfc;
using std::numbers::pi;

namespace {

HistoryTable table1() {
    ChainedZenoParams prm;
    prm.N = 2;
    prm.Nprime = 2;
    prm.cycles = 1;
    const Protocol p = build_chained_zeno(prm);
    return enumerate_histories(p, quiet_outcomes(p));
}

// Parse the CSV back into (row, basis, amplitude) triplets.
struct CsvTerm {
    int row;
    std::string basis;
    cplx amp;
};

std::vector<CsvTerm> parse_csv(const std::string& csv) {
    std::vector<CsvTerm> out;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        CsvTerm t;
        const auto q1 = line.find('"'), q2 = line.find('"', q1 + 1);
        t.row = std::stoi(line.substr(0, q1 - 1));
        std::string rest = line.substr(q2 + 2);
        std::istringstream fields(rest);
        std::string basis, re, im;
        std::getline(fields, basis, ',');
        std::getline(fields, re, ',');
        std::getline(fields, im, ',');
        t.basis = basis;
        t.amp = {std::stod(re), std::stod(im)};
        out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("CSV round-trip preserves the decomposition") {
    const HistoryTable t = table1();
    const auto terms = parse_csv(table_to_csv(t));
    REQUIRE(terms.size() == 3);
    StateVector sum;
    sum.width = 3;
    for (const auto& term : terms) sum.add_term(BasisLabel::parse(term.basis).bits, term.amp);
    sum.prune();
    ChainedZenoParams prm;
    prm.N = 2;
    prm.Nprime = 2;
    prm.cycles = 1;
    const Protocol p = build_chained_zeno(prm);
    const FinalReport rep = run_protocol(p, p.initial_state());
    CHECK(max_diff(sum, rep.final_state) < 1e-9);
}

TEST_CASE("CSV carries symbolic annotations when a form matches") {
    const double tp = pi / 4;
    const std::vector<SymbolicForm> forms = {{"cos(th')", std::cos(tp)},
                                             {"-sin(th')/2", -std::sin(tp) / 2},
                                             {"sin(th')/2", std::sin(tp) / 2}};
    const std::string csv = table_to_csv(table1(), forms);
    CHECK(csv.find(",-sin(th')/2") != std::string::npos);
    CHECK(csv.find(",cos(th')") != std::string::npos);
    CHECK(csv.find("row,label,basis,re,im,symbolic") == 0);
}

TEST_CASE("table JSON structure and 12-digit rendering") {
    const json j = table_to_json(table1());
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["outcome"] == "0_3 0_3 0_2");
    CHECK(j["rows"][0]["row"] == 1);
    CHECK(j["rows"][0]["label"] == "n(1)n(2)0_3 n(1)f(2)0_3 0_2");
    CHECK(j["rows"][0]["terms"][0]["basis"] == "100");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("verdict JSON uses 1-based rows and stable keys") {
    EraserParams prm{{0.5, 0}, {-0.5, 0}, {0.5, 0}, EraserMode::Direct};
    const ScenarioReport rep = verdict_matrix(prm);
    const json j = verdict_to_json(rep.hosten);
    CHECK(j["criterion"] == "cancellation");
    CHECK(j["status"] == "ambiguous");
    REQUIRE(j["cancellation_choices"].size() == 2);
    CHECK(j["cancellation_choices"][0][0] == json::array({1, 2}));
    CHECK(j["cancellation_choices"][1][0] == json::array({2, 3}));
    CHECK(j.contains("witnesses"));
    CHECK(j.contains("computer_outputs"));

    const json f = flux_to_json(rep.flux);
    CHECK(f["status"] == "pass");

    const json s = scenario_to_json(rep);
    for (const char* key : {"family", "fine_table", "coarse_table", "mj", "cancellation", "flux"})
        CHECK(s.contains(key));
}

TEST_CASE("stats serialization") {
    const ZenoStats st = chained_probabilities(2, 2);
    const json j = stats_to_json(st);
    CHECK(j["p0"] == Catch::Approx(0.25));
    CHECK(j["scheme"] == "chained");
    CHECK(j["Nprime"] == 2);
    CHECK(stats_to_csv_line(st).starts_with("2,2,0.25,"));
}
