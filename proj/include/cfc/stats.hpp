#pragma once

#include "cfc/builders.hpp"

namespace cfc {

/// Success probabilities of inferring each answer counterfactually: the run
/// completes with every detector quiet and the final readout pointing at the
/// answer. For the plain Zeno scheme p0 = 0 by construction: when the answer
/// is 0 the amplitude traverses the computer, so that outcome is never
/// obtained counterfactually.
struct ZenoStats {
    std::string scheme;  // "zeno" | "chained"
    int N = 0;
    int Nprime = 0;  // 0 for the plain scheme
    double p0 = 0.0;
    double p1 = 0.0;
};

inline ZenoStats zeno_probabilities(int N) {
    if (N < 1) throw std::invalid_argument("zeno_probabilities: N >= 1");
    ZenoStats st;
    st.scheme = "zeno";
    st.N = N;
    st.p0 = 0.0;
    const Protocol p = build_zeno(N, /*answer=*/1);
    st.p1 = run_protocol(p, p.initial_state()).success_probability;
    return st;
}

inline ZenoStats chained_probabilities(int N, int Nprime) {
    ZenoStats st;
    st.scheme = "chained";
    st.N = N;
    st.Nprime = Nprime;
    for (int answer : {0, 1}) {
        ChainedZenoParams prm;
        prm.N = N;
        prm.Nprime = Nprime;
        prm.answer = answer;
        prm.final_readout = true;
        const Protocol p = build_chained_zeno(prm);
        const double prob = run_protocol(p, p.initial_state()).success_probability;
        (answer == 0 ? st.p0 : st.p1) = prob;
    }
    return st;
}

}  // namespace cfc
