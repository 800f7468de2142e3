#include <catch2/catch_amalgamated.hpp>
#include <numbers>
#include <random>

#include "cfc/cfc.hpp"

using namespace cfc;
using std::numbers::pi;

namespace {

StateVector random_state(std::mt19937& rng, int width) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    StateVector s;
    s.width = width;
    for (unsigned b = 0; b < (1u << width); ++b) s.terms[b] = cplx{u(rng), u(rng)};
    double n = std::sqrt(norm_sq(s));
    for (auto& [bits, amp] : s.terms) amp /= n;
    return s;
}

}  // namespace

TEST_CASE("basis labels parse and render in protocol order") {
    const BasisLabel l = BasisLabel::parse("100");
    CHECK(l.bit(0) == 1);
    CHECK(l.bit(1) == 0);
    CHECK(l.bit(2) == 0);
    CHECK(l.str() == "100");
    CHECK(l.with_bit(1, 1).str() == "110");
    CHECK_THROWS_AS(BasisLabel::parse("10101"), std::invalid_argument);
    CHECK_THROWS_AS(BasisLabel::parse("1x"), std::invalid_argument);
}

TEST_CASE("make_state yields a single unit term") {
    for (const char* l : {"000", "00", "0000"}) {
        const StateVector s = make_state(BasisLabel::parse(l));
        REQUIRE(s.terms.size() == 1);
        CHECK(amplitude(s, BasisLabel::parse(l)) == cplx{1.0, 0.0});
        CHECK(norm_sq(s) == Catch::Approx(1.0));
    }
}

TEST_CASE("rotation acts as the real beamsplitter matrix") {
    const StateVector s0 = make_state(BasisLabel::parse("000"));
    const StateVector s = apply_gate(s0, GateSpec::rotation(0, pi / 4));
    CHECK(std::abs(amplitude(s, BasisLabel::parse("000")) - 1 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(amplitude(s, BasisLabel::parse("100")) - 1 / std::sqrt(2.0)) < 1e-12);

    SECTION("zero angle is the identity") {
        const StateVector t = apply_gate(s, GateSpec::rotation(1, 0.0));
        CHECK(max_diff(t, s) < 1e-15);
    }
    SECTION("two quarter rotations flip the qubit") {
        StateVector t = make_state(BasisLabel::parse("00"));
        t = apply_gate(t, GateSpec::rotation(1, pi / 4));
        t = apply_gate(t, GateSpec::rotation(1, pi / 4));
        CHECK(std::abs(amplitude(t, BasisLabel::parse("01")) - 1.0) < 1e-12);
        CHECK(std::abs(amplitude(t, BasisLabel::parse("00"))) < 1e-12);
    }
}

TEST_CASE("answer-0 computer leaves the state untouched") {
    const double tp = pi / 4;
    StateVector s;
    s.width = 3;
    s.terms[BasisLabel::parse("000").bits] = std::cos(tp);
    s.terms[BasisLabel::parse("100").bits] = std::sin(tp) / std::sqrt(2.0);
    s.terms[BasisLabel::parse("110").bits] = std::sin(tp) / std::sqrt(2.0);
    const StateVector t = apply_gate(s, GateSpec::oracle_computer(0, 2, {{0, 1}, {1, 1}}));
    CHECK(max_diff(t, s) < 1e-15);
}

TEST_CASE("projection returns the sub-normalized branch") {
    const double tp = pi / 4;
    StateVector s;
    s.width = 3;
    s.terms[BasisLabel::parse("000").bits] = std::cos(tp);
    s.terms[BasisLabel::parse("110").bits] = std::sin(tp);
    const StateVector b = project(s, 1, 0);
    REQUIRE(b.terms.size() == 1);
    CHECK(std::abs(amplitude(b, BasisLabel::parse("000")) - std::cos(tp)) < 1e-12);

    CHECK(project(make_state(BasisLabel::parse("000")), 2, 1).empty());

    StateVector bell;
    bell.width = 2;
    bell.terms[0b00] = 1 / std::sqrt(2.0);
    bell.terms[0b11] = 1 / std::sqrt(2.0);
    const StateVector half = project(bell, 0, 1);
    CHECK(norm_sq(half) == Catch::Approx(0.5));
    CHECK_THROWS_AS(project(bell, 5, 0), std::out_of_range);
}

TEST_CASE("unitarity, projection completeness, composition, controls") {
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> ang(0.0, pi);
    for (int trial = 0; trial < 50; ++trial) {
        const int width = 2 + trial % 3;
        const StateVector s = random_state(rng, width);
        std::vector<GateSpec> gates = {
            GateSpec::rotation(trial % width, ang(rng)),
            GateSpec::hadamard((trial + 1) % width),
            GateSpec::oracle_computer(trial % 2, trial % width, {{(trial + 1) % width, 1}}),
            GateSpec::phase_oracle(trial % 2, trial % width),
            GateSpec::register_increment(trial % width),
            GateSpec::phase_shift(ang(rng), {{trial % width, 0}}),
        };
        for (const auto& g : gates)
            CHECK(norm_sq(apply_gate(s, g)) == Catch::Approx(norm_sq(s)).margin(1e-12));

        const int q = trial % width;
        CHECK(norm_sq(project(s, q, 0)) + norm_sq(project(s, q, 1)) ==
              Catch::Approx(norm_sq(s)).margin(1e-12));

        const double t1 = ang(rng), t2 = ang(rng);
        StateVector a = apply_gate(apply_gate(s, GateSpec::rotation(q, t1)),
                                   GateSpec::rotation(q, t2));
        StateVector b = apply_gate(s, GateSpec::rotation(q, t1 + t2));
        CHECK(max_diff(a, b) < 1e-12);

        // A controlled gate is the identity on every violating term.
        const GateSpec cg = GateSpec::rotation(q, t1, {{(q + 1) % width, 1}});
        const StateVector off = project(s, (q + 1) % width, 0);
        CHECK(max_diff(apply_gate(off, cg), off) == 0.0);
    }
}

TEST_CASE("add, scale, max_diff behave linearly") {
    StateVector a = make_state(BasisLabel::parse("00"));
    StateVector b = make_state(BasisLabel::parse("10"));
    StateVector sum = add(scale(a, 0.6), scale(b, 0.8));
    CHECK(norm_sq(sum) == Catch::Approx(1.0));
    CHECK(max_diff(sum, sum) == 0.0);
    CHECK(max_diff(sum, a) > 0.3);
    // Cancellation: a + (-a) prunes to nothing.
    StateVector z = add(a, scale(a, -1.0));
    z.prune();
    CHECK(z.empty());
}
