#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "qpc/elements.hpp"

using namespace qpc;
using Catch::Approx;

namespace {
const ModeId m1{"1"}, m2{"2"}, m2x{"2x"}, m2a{"2a"}, m2b{"2b"}, loss{"loss0"}, out{"out"}, blk{"blk"};

PhotonicState pbs_on_pair(const JonesVector& in, const JonesVector& anc) {
    auto psi = tensor(single_photon(m1, in), single_photon(m2, anc));
    return apply_slot_map(psi, pbs_map(Pbs{m1, m2, m1, m2}));
}
} // namespace

TEST_CASE("pbs transmits H and reflects V with coefficient +1") {
    auto h1 = single_photon(m1, JonesVector{1.0, 0.0});
    auto t = apply_element(h1, Pbs{m1, m2, m1, m2});
    REQUIRE(t.amplitude(BasisKet({Slot{m1, Pol::H}})) == Complex(1.0, 0.0));

    auto v2 = single_photon(m2, JonesVector{0.0, 1.0});
    auto r = apply_element(v2, Pbs{m1, m2, m1, m2});
    REQUIRE(r.amplitude(BasisKet({Slot{m1, Pol::V}})) == Complex(1.0, 0.0));
}

TEST_CASE("pbs reproduces the parity-check superposition term by term") {
    const double a = std::sqrt(3.0) / 2.0, b = 0.5;
    const double r2 = std::sqrt(2.0);
    auto st = pbs_on_pair(JonesVector{a, b}, JonesVector{1.0 / r2, 1.0 / r2});
    REQUIRE(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m2, Pol::H}})).real() == Approx(a / r2));
    REQUIRE(st.amplitude(BasisKet({Slot{m1, Pol::V}, Slot{m2, Pol::V}})).real() == Approx(b / r2));
    REQUIRE(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m1, Pol::V}})).real() == Approx(a / r2));
    REQUIRE(st.amplitude(BasisKet({Slot{m2, Pol::H}, Slot{m2, Pol::V}})).real() == Approx(b / r2));
}

TEST_CASE("pbs output amplitudes match the hand-derived coefficients for random inputs") {
    RngStream rng(11);
    const double r2 = std::sqrt(2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const JonesVector j = oracle::random_jones(rng);
        auto st = pbs_on_pair(j, JonesVector{1.0 / r2, 1.0 / r2});
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m2, Pol::H}})) - j.alpha / r2) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::V}, Slot{m2, Pol::V}})) - j.beta / r2) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m1, Pol::V}})) - j.alpha / r2) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m2, Pol::H}, Slot{m2, Pol::V}})) - j.beta / r2) <
                1e-12);
        REQUIRE(st.amplitudes().size() == 4);
    }
}

TEST_CASE("pbs applied twice restores the input") {
    RngStream rng(12);
    std::vector<Slot> slots{{m1, Pol::H}, {m1, Pol::V}, {m2, Pol::H}, {m2, Pol::V}};
    auto st = oracle::random_two_photon_state(slots, rng);
    auto twice = apply_element(apply_element(st, Pbs{m1, m2, m1, m2}), Pbs{m1, m2, m1, m2});
    REQUIRE(oracle::amp_distance(st, twice) < 1e-14);
}

TEST_CASE("pbs rejects ill-defined aliasing") {
    REQUIRE_THROWS_AS(pbs_map(Pbs{m1, m1, m2a, m2b}), ValidationError);
    REQUIRE_THROWS_AS(pbs_map(Pbs{m1, m2, m2, m2b}), ValidationError); // partial alias
}

TEST_CASE("hwp matrix at reference angles") {
    auto h = single_photon(m1, JonesVector{1.0, 0.0});
    auto v = single_photon(m1, JonesVector{0.0, 1.0});

    // theta = 0: H -> H, V -> -V
    auto v0 = apply_element(v, Hwp{m1, 0.0});
    REQUIRE(v0.amplitude(BasisKet({Slot{m1, Pol::V}})).real() == Approx(-1.0));

    // theta = 22.5 deg: the ancilla preparation |H> -> (|H>+|V>)/sqrt2
    auto plus = apply_element(h, Hwp{m1, 22.5});
    REQUIRE(plus.amplitude(BasisKet({Slot{m1, Pol::H}})).real() == Approx(1.0 / std::sqrt(2.0)));
    REQUIRE(plus.amplitude(BasisKet({Slot{m1, Pol::V}})).real() == Approx(1.0 / std::sqrt(2.0)));

    // theta = 45 deg: bit flip
    auto flipped = apply_element(h, Hwp{m1, 45.0});
    REQUIRE(flipped.amplitude(BasisKet({Slot{m1, Pol::V}})).real() == Approx(1.0));
}

TEST_CASE("hwp is self-inverse at every angle") {
    RngStream rng(13);
    for (double theta : {0.0, 10.0, 22.5, 30.0, 45.0, 77.3, 160.0}) {
        auto st = single_photon(m1, oracle::random_jones(rng));
        auto twice = apply_element(apply_element(st, Hwp{m1, theta}), Hwp{m1, theta});
        REQUIRE(oracle::amp_distance(st, twice) < 1e-14);
    }
}

TEST_CASE("pockels cell applies a pi phase on H when on") {
    auto st = single_photon(m1, JonesVector::linear_deg(30.0));
    REQUIRE(oracle::amp_distance(apply_element(st, Pockels{m1, false}), st) == 0.0);

    // -a|H> + b|V| corrected back: fidelity 1 with a|H> + b|V> (phase is global)
    auto wrong = single_photon(m1, JonesVector{-std::sqrt(3.0) / 2.0, 0.5});
    auto corrected = apply_element(wrong, Pockels{m1, true});
    REQUIRE(fidelity(corrected, st) == Approx(1.0).margin(1e-12));
    REQUIRE(corrected.amplitude(BasisKet({Slot{m1, Pol::H}})).real() == Approx(std::sqrt(3.0) / 2.0));
    REQUIRE(corrected.amplitude(BasisKet({Slot{m1, Pol::V}})).real() == Approx(0.5));

    auto twice = apply_element(apply_element(st, Pockels{m1, true}), Pockels{m1, true});
    REQUIRE(oracle::amp_distance(st, twice) < 1e-15);
}

TEST_CASE("fiber delay couples to the loss mode with sqrt(eta)") {
    auto st = single_photon(m1, JonesVector::linear_deg(30.0));

    auto ideal = apply_element(st, FiberDelay{m1, 1.0, 100.0, loss});
    REQUIRE(oracle::amp_distance(ideal, st) < 1e-15);

    auto half = apply_element(st, FiberDelay{m1, 0.5, 100.0, loss});
    double survived = 0.0;
    for (const auto& [k, amp] : half.amplitudes())
        if (k.slots().front().mode == m1) survived += std::norm(amp);
    REQUIRE(survived == Approx(0.5).margin(1e-12));
    REQUIRE(norm_sq(half) == Approx(1.0).margin(1e-12)); // loss is unitary bookkeeping

    REQUIRE_THROWS_AS(fiber_map(FiberDelay{m1, 1.7, 100.0, loss}), ValidationError);
}

TEST_CASE("fiber delay accumulates time of flight on the mode") {
    Circuit c;
    c.register_mode(m1);
    c.register_mode(loss, true);
    c.add(FiberDelay{m1, 0.5, 100.0, loss});
    REQUIRE(c.accumulated_delay_ns(m1) == Approx(100.0));
    REQUIRE(c.accumulated_delay_ns(loss) == 0.0);
}

TEST_CASE("analyzer routes the theta component to the pass mode") {
    auto h = single_photon(m1, JonesVector{1.0, 0.0});
    auto routed = apply_element(h, Analyzer{m1, 0.0, out, blk});
    REQUIRE(routed.amplitude(BasisKet({Slot{out, Pol::H}})) == Complex(1.0, 0.0));

    auto st30 = single_photon(m1, JonesVector::linear_deg(30.0));
    auto at30 = apply_element(st30, Analyzer{m1, 30.0, out, blk});
    REQUIRE(std::norm(at30.amplitude(BasisKet({Slot{out, Pol::H}}))) == Approx(1.0).margin(1e-12));

    auto at120 = apply_element(st30, Analyzer{m1, 120.0, out, blk});
    REQUIRE(std::norm(at120.amplitude(BasisKet({Slot{out, Pol::H}}))) == Approx(0.0).margin(1e-12));
}

TEST_CASE("every element map is unitary over its slot set") {
    // SlotMap construction validates unitarity; these must simply not throw.
    REQUIRE_NOTHROW(pbs_map(Pbs{m1, m2, m1, m2}));
    REQUIRE_NOTHROW(pbs_map(Pbs{m2, m2x, m2a, m2b}));
    REQUIRE_NOTHROW(hwp_map(Hwp{m1, 17.3}));
    REQUIRE_NOTHROW(pockels_map(Pockels{m1, true}));
    REQUIRE_NOTHROW(fiber_map(FiberDelay{m1, 0.37, 55.0, loss, 4.0}));
    REQUIRE_NOTHROW(analyzer_map(Analyzer{m1, 62.0, out, blk}));
}

TEST_CASE("measurement basis HWP(22.5)+PBS' exposes the +-alpha, beta structure") {
    RngStream rng(14);
    const double r2 = std::sqrt(2.0);
    for (int trial = 0; trial < 25; ++trial) {
        const JonesVector j = oracle::random_jones(rng);
        auto st = pbs_on_pair(j, JonesVector{1.0 / r2, 1.0 / r2});
        st = apply_element(st, Hwp{m2, 22.5});
        st = apply_element(st, Pbs{m2, m2x, m2a, m2b});

        // D2a branch carries (alpha, beta); D2b branch (alpha, -beta) = -(-alpha, beta).
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m2a, Pol::H}})) - j.alpha * 0.5) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::V}, Slot{m2a, Pol::H}})) - j.beta * 0.5) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m2b, Pol::V}})) - j.alpha * 0.5) <
                1e-12);
        REQUIRE(std::abs(st.amplitude(BasisKet({Slot{m1, Pol::V}, Slot{m2b, Pol::V}})) + j.beta * 0.5) <
                1e-12);

        // Branch states are the identity and Z images of the input qubit.
        PhotonicState::AmplitudeMap d2b;
        d2b[BasisKet({Slot{m1, Pol::H}})] = st.amplitude(BasisKet({Slot{m1, Pol::H}, Slot{m2b, Pol::V}}));
        d2b[BasisKet({Slot{m1, Pol::V}})] = st.amplitude(BasisKet({Slot{m1, Pol::V}, Slot{m2b, Pol::V}}));
        auto branch = PhotonicState::from_amplitudes(std::move(d2b)).normalized();
        auto z_in = single_photon(m1, JonesVector{-j.alpha, j.beta});
        REQUIRE(fidelity(branch, z_in) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("circuit rejects unregistered and unreserved special modes") {
    Circuit c;
    c.register_mode(m1);
    REQUIRE_THROWS_AS(c.add(Hwp{m2, 22.5}), ValidationError);

    c.register_mode(m2);
    c.register_mode(loss); // not reserved
    REQUIRE_THROWS_AS(c.add(FiberDelay{m1, 0.5, 100.0, loss}), ValidationError);

    Circuit c2;
    c2.register_mode(m1);
    REQUIRE_THROWS_AS(c2.register_mode(m1), ValidationError);
}
