#pragma once

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cfc/stats.hpp"
#include "cfc/verdicts.hpp"

namespace cfc {

using json = nlohmann::json;

inline std::string format_number(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

/// A symbolic rendering candidate for table amplitudes ("-sin(th')/2", ...).
struct SymbolicForm {
    std::string text;
    double value;
};

inline std::string symbolic_match(double value, const std::vector<SymbolicForm>& forms) {
    for (const auto& f : forms)
        if (std::abs(value - f.value) < 1e-9) return f.text;
    return "";
}

/// CSV: one line per (row, basis term); columns
/// row,label,basis,re,im[,symbolic]. Row indices are 1-based to match the
/// published history numbering.
inline std::string table_to_csv(const HistoryTable& table,
                                const std::vector<SymbolicForm>& forms = {}) {
    std::ostringstream os;
    os << "row,label,basis,re,im" << (forms.empty() ? "" : ",symbolic") << '\n';
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (const auto& [bits, amp] : row.vec.terms) {
            os << (r + 1) << ",\"" << row.label() << "\","
               << BasisLabel(bits, row.vec.width).str() << ',' << format_number(amp.real()) << ','
               << format_number(amp.imag());
            if (!forms.empty()) {
                std::string sym = std::abs(amp.imag()) < kDropEps
                                      ? symbolic_match(amp.real(), forms)
                                      : "";
                os << ',' << sym;
            }
            os << '\n';
        }
    }
    return os.str();
}

inline json table_to_json(const HistoryTable& table, const std::vector<SymbolicForm>& forms = {}) {
    json rows = json::array();
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        json terms = json::array();
        for (const auto& [bits, amp] : row.vec.terms) {
            json t = {{"basis", BasisLabel(bits, row.vec.width).str()},
                      {"re", amp.real()},
                      {"im", amp.imag()}};
            if (!forms.empty() && std::abs(amp.imag()) < kDropEps) {
                const std::string sym = symbolic_match(amp.real(), forms);
                if (!sym.empty()) t["symbolic"] = sym;
            }
            terms.push_back(std::move(t));
        }
        rows.push_back({{"row", r + 1}, {"label", row.label()}, {"terms", std::move(terms)}});
    }
    return {{"outcome", table.outcome_label()}, {"rows", std::move(rows)}};
}

/// Verdict JSON: { criterion, status, witnesses, cancellation_choices,
/// computer_outputs } with 1-based row indices.
inline json verdict_to_json(const Verdict& v) {
    auto bump = [](const std::vector<size_t>& xs) {
        json a = json::array();
        for (size_t x : xs) a.push_back(x + 1);
        return a;
    };
    json choices = json::array();
    for (const auto& choice : v.cancellation_choices) {
        json c = json::array();
        for (const auto& subset : choice) c.push_back(bump(subset));
        choices.push_back(std::move(c));
    }
    return {{"criterion", v.criterion},
            {"status", status_name(v.status)},
            {"witnesses", bump(v.witnesses)},
            {"survivors", bump(v.survivors)},
            {"cancellation_choices", std::move(choices)},
            {"computer_outputs", v.computer_outputs}};
}

inline json flux_to_json(const FluxReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"step", s.step_index}, {"magnitude", s.magnitude}});
    return {{"criterion", "flux"},
            {"status", r.pass ? "pass" : "fail"},
            {"max_magnitude", r.max_magnitude},
            {"max_step", r.max_step},
            {"samples", std::move(samples)}};
}

inline json scenario_to_json(const ScenarioReport& rep) {
    return {{"family", rep.family},
            {"outcome", rep.fine.outcome_label()},
            {"fine_table", table_to_json(rep.fine)},
            {"coarse_table", table_to_json(rep.coarse)},
            {"mj", verdict_to_json(rep.mj)},
            {"cancellation", verdict_to_json(rep.hosten)},
            {"flux", flux_to_json(rep.flux)}};
}

inline json stats_to_json(const ZenoStats& st) {
    json j = {{"scheme", st.scheme}, {"N", st.N}, {"p0", st.p0}, {"p1", st.p1},
              {"sum", st.p0 + st.p1}};
    if (st.scheme == "chained") j["Nprime"] = st.Nprime;
    return j;
}

inline std::string stats_to_csv_line(const ZenoStats& st) {
    std::ostringstream os;
    os << st.N << ',' << st.Nprime << ',' << format_number(st.p0) << ',' << format_number(st.p1)
       << ',' << format_number(st.p0 + st.p1) << '\n';
    return os.str();
}

}  // namespace cfc
