#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfc {

using cplx = std::complex<double>;

/// Terms with |amplitude| below this are treated as exact zeros and removed.
inline constexpr double kDropEps = 1e-12;

/// Relative threshold for destructive-cancellation detection (see histories.hpp).
inline constexpr double kCancelEps = 1e-9;

/// A computational basis state over 2-4 qubits. Qubit 0 is the first qubit of
/// the protocol (e.g. the subroutine switch), stored in bit 0 of `bits`.
struct BasisLabel {
    unsigned bits = 0;
    int width = 0;

    BasisLabel() = default;
    BasisLabel(unsigned b, int w) : bits(b), width(w) {}

    int bit(int qubit) const { return (bits >> qubit) & 1u; }

    BasisLabel with_bit(int qubit, int value) const {
        unsigned b = bits & ~(1u << qubit);
        if (value) b |= 1u << qubit;
        return {b, width};
    }

    /// "100" means qubit 0 = 1, qubit 1 = 0, qubit 2 = 0 (leftmost bit first).
    std::string str() const {
        std::string s(static_cast<size_t>(width), '0');
        for (int q = 0; q < width; ++q)
            if (bit(q)) s[static_cast<size_t>(q)] = '1';
        return s;
    }

    static BasisLabel parse(std::string_view s) {
        if (s.size() < 2 || s.size() > 4)
            throw std::invalid_argument("basis label must have 2-4 qubits");
        BasisLabel l{0, static_cast<int>(s.size())};
        for (size_t q = 0; q < s.size(); ++q) {
            if (s[q] == '1')
                l.bits |= 1u << q;
            else if (s[q] != '0')
                throw std::invalid_argument("basis label digits must be 0 or 1");
        }
        return l;
    }

    friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
};

/// Sparse complex state over a fixed-width labeled basis. May be
/// sub-normalized after post-selection; never holds a term below kDropEps.
struct StateVector {
    int width = 0;
    std::map<unsigned, cplx> terms;

    bool empty() const { return terms.empty(); }

    void add_term(unsigned bits, cplx amp) {
        auto [it, inserted] = terms.try_emplace(bits, amp);
        if (!inserted) it->second += amp;
        if (std::abs(it->second) < kDropEps) terms.erase(it);
    }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = std::abs(it->second) < kDropEps ? terms.erase(it) : std::next(it);
    }
};

inline StateVector make_state(const BasisLabel& label) {
    StateVector s;
    s.width = label.width;
    s.terms[label.bits] = cplx{1.0, 0.0};
    return s;
}

inline cplx amplitude(const StateVector& s, const BasisLabel& label) {
    auto it = s.terms.find(label.bits);
    return it == s.terms.end() ? cplx{0.0, 0.0} : it->second;
}

inline double norm_sq(const StateVector& s) {
    double n = 0.0;
    for (const auto& [bits, amp] : s.terms) n += std::norm(amp);
    return n;
}

/// Sub-normalized branch with the given qubit value; its squared norm is the
/// branch probability. An empty result is a valid zero vector.
inline StateVector project(const StateVector& s, int qubit, int value) {
    if (qubit < 0 || qubit >= s.width)
        throw std::out_of_range("project: qubit index out of range");
    StateVector out;
    out.width = s.width;
    for (const auto& [bits, amp] : s.terms)
        if (static_cast<int>((bits >> qubit) & 1u) == value) out.terms[bits] = amp;
    return out;
}

inline StateVector add(const StateVector& a, const StateVector& b) {
    if (a.width != b.width && !a.terms.empty() && !b.terms.empty())
        throw std::invalid_argument("add: width mismatch");
    StateVector out = a.terms.empty() ? b : a;
    if (a.terms.empty() || b.terms.empty()) return out;
    out = a;
    for (const auto& [bits, amp] : b.terms) out.add_term(bits, amp);
    return out;
}

inline StateVector scale(const StateVector& s, cplx factor) {
    StateVector out;
    out.width = s.width;
    for (const auto& [bits, amp] : s.terms) out.terms[bits] = amp * factor;
    out.prune();
    return out;
}

/// Componentwise max |a - b|; treats missing terms as zero.
inline double max_diff(const StateVector& a, const StateVector& b) {
    double d = 0.0;
    for (const auto& [bits, amp] : a.terms) {
        auto it = b.terms.find(bits);
        d = std::max(d, std::abs(amp - (it == b.terms.end() ? cplx{} : it->second)));
    }
    for (const auto& [bits, amp] : b.terms)
        if (!a.terms.count(bits)) d = std::max(d, std::abs(amp));
    return d;
}

}  // namespace cfc
