#pragma once

#include <cmath>

#include "qpc/detection.hpp"
#include "qpc/elements.hpp"

namespace qpc {

/// Nanosecond latencies of the classical chain. Defaults are the measured values
/// of the experiment's commercially available components; they sum to 100 ns.
struct LatencyBudget {
    double detector_edge_ns = 18.0;   // leading edge of the detector TTL pulse
    double pockels_chain_ns = 38.0;   // Pockels cell, driver amplifiers, triax cables
    double logic_board_ns = 18.0;     // TTL logic board
    double cabling_ns = 26.0;         // miscellaneous coax
    double ttl_pulse_width_ns = 33.0; // detector output pulse width

    void validate() const {
        if (detector_edge_ns < 0 || pockels_chain_ns < 0 || logic_board_ns < 0 || cabling_ns < 0 ||
            ttl_pulse_width_ns < 0)
            throw ValidationError("latency budget: all components must be >= 0");
    }
};

/// Storage delay and voltage-window shape. Time origin is the moment the ancilla
/// photon hits its detector; the photon reaches the Pockels cell at fiber_delay_ns.
struct TimingConfig {
    double fiber_delay_ns = 100.0;
    double extra_electronic_delay_ns = 0.0;
    double edge_sigma_ns = 3.0;
    double hold_ns = 33.0; // defaults to the TTL pulse width (the driver follows its input)

    void validate() const {
        if (fiber_delay_ns < 0) throw ValidationError("timing: fiber_delay_ns must be >= 0");
        if (!(hold_ns > 0)) throw ValidationError("timing: hold_ns must be > 0");
        if (edge_sigma_ns < 0) throw ValidationError("timing: edge_sigma_ns must be >= 0");
    }
};

/// Single-qubit correction selected by the ancilla detection (Eq.-style I/Z pair).
enum class Correction { Identity, ZCorrection };

/// D2a click -> Identity; D2b click -> Z. Only defined for OR-gate-accepted outcomes.
inline Correction correction_for(const DetectionOutcome& outcome,
                                 const std::string& d2a_id = "D2a",
                                 const std::string& d2b_id = "D2b") {
    if (!accept(outcome, AcceptPolicy::OrGate, d2a_id, d2b_id))
        throw ValidationError("correction_for: no correction defined for non-accepted outcome " +
                              outcome.str());
    return outcome.count(d2a_id) == 1 ? Correction::Identity : Correction::ZCorrection;
}

/// Total classical processing delay tau_z (detector edge + Pockels chain + logic + cables).
inline double total_system_delay(const LatencyBudget& b) {
    b.validate();
    return b.detector_edge_ns + b.pockels_chain_ns + b.logic_board_ns + b.cabling_ns;
}

struct VoltageWindow {
    double t_on_ns = 0.0;
    double t_off_ns = 0.0;
    double mid() const { return 0.5 * (t_on_ns + t_off_ns); }
};

/// Interval during which the half-wave voltage is on the Pockels cell.
inline VoltageWindow voltage_window(const LatencyBudget& b, const TimingConfig& t) {
    t.validate();
    const double on = total_system_delay(b) + t.extra_electronic_delay_ns;
    return VoltageWindow{on, on + t.hold_ns};
}

/// Probability that the correction voltage is on when the photon traverses the cell.
/// Rectangular window smoothed by Gaussian-error-function edges of width sigma;
/// sigma = 0 recovers the hard indicator of [t_on, t_off].
inline double applied_probability(double photon_arrival_ns, const VoltageWindow& w, double edge_sigma_ns) {
    if (edge_sigma_ns < 0) throw ValidationError("applied_probability: edge sigma must be >= 0");
    if (edge_sigma_ns == 0.0)
        return (photon_arrival_ns >= w.t_on_ns && photon_arrival_ns <= w.t_off_ns) ? 1.0 : 0.0;
    const double inv = 1.0 / (edge_sigma_ns * std::sqrt(2.0));
    const auto edge = [&](double x) { return 0.5 * std::erfc(-x * inv); };
    return edge(photon_arrival_ns - w.t_on_ns) * edge(w.t_off_ns - photon_arrival_ns);
}

/// Applies the selected correction to the stored output photon. A needed but
/// not-applied Z correction leaves the wrong (sign-flipped) state behind.
inline PhotonicState apply_feedforward(const PhotonicState& state, Correction c, bool applied,
                                       const ModeId& out_mode) {
    if (c == Correction::ZCorrection && applied)
        return apply_element(state, Pockels{out_mode, true});
    return state;
}

} // namespace qpc
