#pragma once

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qpc/feedforward.hpp"
#include "qpc/imperfections.hpp"

namespace qpc {

enum class ControlPolicy { Passive, OrGate, OrGateNoCorrection };
enum class SweepKind { Analyzer, Delay, Overlap };
enum class OverlapVariable { V, RelativeDelay };

inline const char* to_string(ControlPolicy p) {
    switch (p) {
        case ControlPolicy::Passive: return "Passive";
        case ControlPolicy::OrGate: return "OrGate";
        case ControlPolicy::OrGateNoCorrection: return "OrGateNoCorrection";
    }
    return "?";
}

inline const char* to_string(SweepKind k) {
    switch (k) {
        case SweepKind::Analyzer: return "analyzer";
        case SweepKind::Delay: return "delay";
        case SweepKind::Overlap: return "overlap";
    }
    return "?";
}

inline const char* to_string(OverlapVariable v) {
    return v == OverlapVariable::V ? "v" : "relative_delay";
}

struct SourceConfig {
    double input_theta_deg = 30.0;           // used when no explicit Jones vector is given
    std::optional<JonesVector> input_jones;  // explicit (alpha, beta) preparation
    bool ancilla_on = true;                  // half-wave plate preparing (|H>+|V>)/sqrt(2)
    double pair_rate_per_min = 440.0;

    JonesVector input_state() const {
        return input_jones ? *input_jones : JonesVector::linear_deg(input_theta_deg);
    }

    bool operator==(const SourceConfig& o) const {
        return input_theta_deg == o.input_theta_deg && input_jones == o.input_jones &&
               ancilla_on == o.ancilla_on && pair_rate_per_min == o.pair_rate_per_min;
    }
};

struct CircuitConfig {
    double coupling_eta = 0.5;
    double fiber_delay_ns = 100.0;
    double residual_rotation_deg = 0.0;

    bool operator==(const CircuitConfig& o) const {
        return coupling_eta == o.coupling_eta && fiber_delay_ns == o.fiber_delay_ns &&
               residual_rotation_deg == o.residual_rotation_deg;
    }
};

struct ControlConfig {
    ControlPolicy policy = ControlPolicy::Passive;
    LatencyBudget budget{};
    double extra_electronic_delay_ns = 0.0;
    double edge_sigma_ns = 3.0;
    double hold_ns = 33.0; // resolved at parse time: defaults to ttl_pulse_width_ns

    bool operator==(const ControlConfig& o) const {
        return policy == o.policy && budget.detector_edge_ns == o.budget.detector_edge_ns &&
               budget.pockels_chain_ns == o.budget.pockels_chain_ns &&
               budget.logic_board_ns == o.budget.logic_board_ns &&
               budget.cabling_ns == o.budget.cabling_ns &&
               budget.ttl_pulse_width_ns == o.budget.ttl_pulse_width_ns &&
               extra_electronic_delay_ns == o.extra_electronic_delay_ns &&
               edge_sigma_ns == o.edge_sigma_ns && hold_ns == o.hold_ns;
    }
};

struct ImperfectionConfig {
    double overlap_v = 1.0;
    double relative_delay_ns = 0.0;
    double coherence_time_ns = kDefaultCoherenceTimeNs; // resolved from the filter unless overridden
    double wavelength_nm = 702.2;
    double filter_fwhm_nm = 10.0;
    double eff_d1 = 1.0;
    double eff_d2a = 1.0;
    double eff_d2b = 1.0;

    bool operator==(const ImperfectionConfig& o) const {
        return overlap_v == o.overlap_v && relative_delay_ns == o.relative_delay_ns &&
               coherence_time_ns == o.coherence_time_ns && wavelength_nm == o.wavelength_nm &&
               filter_fwhm_nm == o.filter_fwhm_nm && eff_d1 == o.eff_d1 && eff_d2a == o.eff_d2a &&
               eff_d2b == o.eff_d2b;
    }
};

struct SweepConfig {
    SweepKind kind = SweepKind::Analyzer;
    double start = 0.0;
    double stop = 180.0;
    int points = 37;
    double at = 30.0;                 // swept-variable value used by the `run` subcommand
    double analyzer_theta_deg = 30.0; // fixed analyzer setting for delay/overlap sweeps
    OverlapVariable variable = OverlapVariable::V;

    std::vector<double> grid() const {
        std::vector<double> g;
        g.reserve(static_cast<size_t>(points));
        if (points == 1) {
            g.push_back(start);
            return g;
        }
        const double step = (stop - start) / (points - 1);
        for (int i = 0; i < points; ++i) g.push_back(start + step * i);
        return g;
    }

    bool operator==(const SweepConfig& o) const {
        return kind == o.kind && start == o.start && stop == o.stop && points == o.points &&
               at == o.at && analyzer_theta_deg == o.analyzer_theta_deg && variable == o.variable;
    }
};

/// Declarative experiment description; parsed from INI-style text.
struct Scenario {
    SourceConfig source;
    CircuitConfig circuit;
    ControlConfig control;
    ImperfectionConfig imperfections;
    SweepConfig sweep;

    TimingConfig timing() const {
        return TimingConfig{circuit.fiber_delay_ns, control.extra_electronic_delay_ns,
                            control.edge_sigma_ns, control.hold_ns};
    }

    OverlapModel overlap() const {
        return OverlapModel{imperfections.overlap_v, imperfections.coherence_time_ns,
                            imperfections.relative_delay_ns};
    }

    ChannelCalibration calibration() const {
        ChannelCalibration c;
        c.efficiency = {{"D1", imperfections.eff_d1},
                        {"D2a", imperfections.eff_d2a},
                        {"D2b", imperfections.eff_d2b}};
        c.pair_rate_per_min = source.pair_rate_per_min;
        return c;
    }

    bool operator==(const Scenario& o) const {
        return source == o.source && circuit == o.circuit && control == o.control &&
               imperfections == o.imperfections && sweep == o.sweep;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, int line, int col) {
    double out = 0.0;
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    if (begin != end && *begin == '+') ++begin; // from_chars rejects an explicit plus
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (begin == end || ec != std::errc{} || ptr != end)
        throw ParseError("expected a number, got '" + v + "'", line, col);
    return out;
}

inline int parse_int(const std::string& v, int line, int col) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ParseError("expected an integer, got '" + v + "'", line, col);
    return out;
}

inline bool parse_bool(const std::string& v, int line, int col) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ParseError("expected a boolean (true/false/on/off/1/0), got '" + v + "'", line, col);
}

/// Complex literal: "0.5", "-0.5", "0.5+0.25i", "0.5-0.25i", "0.25i".
inline Complex parse_complex(const std::string& v, int line, int col) {
    if (v.empty()) throw ParseError("expected a complex number", line, col);
    if (v.back() != 'i') return Complex(parse_number(v, line, col), 0.0);
    const std::string body = v.substr(0, v.size() - 1);
    if (body.empty()) throw ParseError("expected digits before 'i' in '" + v + "'", line, col);
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return Complex(0.0, parse_number(body, line, col));
    return Complex(parse_number(body.substr(0, split), line, col),
                   parse_number(body.substr(split), line, col));
}

struct StagedScenario {
    // [source]
    std::optional<double> input_theta_deg;
    std::optional<Complex> input_alpha, input_beta;
    std::optional<bool> ancilla_on;
    std::optional<double> pair_rate_per_min;
    // [circuit]
    std::optional<double> coupling_eta, fiber_delay_ns, residual_rotation_deg;
    // [control]
    std::optional<ControlPolicy> policy;
    std::optional<double> detector_edge_ns, pockels_chain_ns, logic_board_ns, cabling_ns,
        ttl_pulse_width_ns, extra_electronic_delay_ns, edge_sigma_ns, hold_ns;
    // [imperfections]
    std::optional<double> overlap_v, relative_delay_ns, coherence_time_ns, wavelength_nm,
        filter_fwhm_nm, eff_d1, eff_d2a, eff_d2b;
    // [sweep]
    std::optional<SweepKind> kind;
    std::optional<double> start, stop, at, analyzer_theta_deg;
    std::optional<int> points;
    std::optional<OverlapVariable> variable;
};

inline void check_range(bool ok, const std::string& key, const std::string& detail, int line, int col) {
    if (!ok) throw ParseError(key + ": " + detail, line, col);
}

} // namespace detail

inline Scenario parse_scenario(const std::string& text) {
    using detail::check_range;
    detail::StagedScenario st;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;
    std::string section;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string stripped = detail::trim(raw);
        if (stripped.empty()) continue;

        const int col0 = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
        if (stripped.front() == '[') {
            if (stripped.back() != ']')
                throw ParseError("unterminated section header", line_no, col0);
            section = detail::trim(stripped.substr(1, stripped.size() - 2));
            if (section != "source" && section != "circuit" && section != "control" &&
                section != "imperfections" && section != "sweep")
                throw ParseError("unknown section [" + section + "]", line_no, col0);
            if (!seen_sections.insert(section).second)
                throw ParseError("duplicate section [" + section + "]", line_no, col0);
            continue;
        }
        if (section.empty())
            throw ParseError("key outside of any [section]", line_no, col0);

        const size_t eq = raw.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no, static_cast<int>(stripped.size()) + col0);
        const std::string key = detail::trim(raw.substr(0, eq));
        const std::string value = detail::trim(raw.substr(eq + 1));
        const int vcol = static_cast<int>(eq) + 2;
        if (key.empty()) throw ParseError("missing key before '='", line_no, col0);
        if (value.empty()) throw ParseError(key + ": missing value", line_no, vcol);
        if (!seen_keys.insert(section + "." + key).second)
            throw ParseError("duplicate key '" + key + "' in [" + section + "]", line_no, col0);

        const auto num = [&] { return detail::parse_number(value, line_no, vcol); };
        bool known = true;

        if (section == "source") {
            if (key == "input_theta_deg") st.input_theta_deg = num();
            else if (key == "input_alpha") st.input_alpha = detail::parse_complex(value, line_no, vcol);
            else if (key == "input_beta") st.input_beta = detail::parse_complex(value, line_no, vcol);
            else if (key == "ancilla_on") st.ancilla_on = detail::parse_bool(value, line_no, vcol);
            else if (key == "pair_rate_per_min") {
                st.pair_rate_per_min = num();
                check_range(*st.pair_rate_per_min > 0, key, "must be > 0", line_no, vcol);
            } else known = false;
        } else if (section == "circuit") {
            if (key == "coupling_eta") {
                st.coupling_eta = num();
                check_range(*st.coupling_eta >= 0 && *st.coupling_eta <= 1, key,
                            "value " + value + " out of range [0, 1]", line_no, vcol);
            } else if (key == "fiber_delay_ns") {
                st.fiber_delay_ns = num();
                check_range(*st.fiber_delay_ns >= 0, key, "must be >= 0", line_no, vcol);
            } else if (key == "residual_rotation_deg") st.residual_rotation_deg = num();
            else known = false;
        } else if (section == "control") {
            if (key == "policy") {
                if (value == "Passive") st.policy = ControlPolicy::Passive;
                else if (value == "OrGate") st.policy = ControlPolicy::OrGate;
                else if (value == "OrGateNoCorrection") st.policy = ControlPolicy::OrGateNoCorrection;
                else throw ParseError("policy: expected Passive|OrGate|OrGateNoCorrection, got '" +
                                      value + "'", line_no, vcol);
            } else if (key == "detector_edge_ns" || key == "pockels_chain_ns" ||
                       key == "logic_board_ns" || key == "cabling_ns" || key == "ttl_pulse_width_ns") {
                const double v = num();
                check_range(v >= 0, key, "must be >= 0", line_no, vcol);
                if (key == "detector_edge_ns") st.detector_edge_ns = v;
                else if (key == "pockels_chain_ns") st.pockels_chain_ns = v;
                else if (key == "logic_board_ns") st.logic_board_ns = v;
                else if (key == "cabling_ns") st.cabling_ns = v;
                else st.ttl_pulse_width_ns = v;
            } else if (key == "extra_electronic_delay_ns") st.extra_electronic_delay_ns = num();
            else if (key == "edge_sigma_ns") {
                st.edge_sigma_ns = num();
                check_range(*st.edge_sigma_ns >= 0, key, "must be >= 0", line_no, vcol);
            } else if (key == "hold_ns") {
                st.hold_ns = num();
                check_range(*st.hold_ns > 0, key, "must be > 0", line_no, vcol);
            } else known = false;
        } else if (section == "imperfections") {
            if (key == "overlap_v") {
                st.overlap_v = num();
                check_range(*st.overlap_v >= 0 && *st.overlap_v <= 1, key,
                            "value " + value + " out of range [0, 1]", line_no, vcol);
            } else if (key == "relative_delay_ns") st.relative_delay_ns = num();
            else if (key == "coherence_time_ns") {
                st.coherence_time_ns = num();
                check_range(*st.coherence_time_ns > 0, key, "must be > 0", line_no, vcol);
            } else if (key == "wavelength_nm") {
                st.wavelength_nm = num();
                check_range(*st.wavelength_nm > 0, key, "must be > 0", line_no, vcol);
            } else if (key == "filter_fwhm_nm") {
                st.filter_fwhm_nm = num();
                check_range(*st.filter_fwhm_nm > 0, key, "must be > 0", line_no, vcol);
            } else if (key == "eff_d1" || key == "eff_d2a" || key == "eff_d2b") {
                const double v = num();
                // Values above 1 are calibration factors relative to the pair-rate anchor;
                // Monte Carlo runs reject them at run time.
                check_range(v >= 0 && v <= 4, key, "value " + value + " out of range [0, 4]",
                            line_no, vcol);
                if (key == "eff_d1") st.eff_d1 = v;
                else if (key == "eff_d2a") st.eff_d2a = v;
                else st.eff_d2b = v;
            } else known = false;
        } else { // sweep
            if (key == "kind") {
                if (value == "analyzer") st.kind = SweepKind::Analyzer;
                else if (value == "delay") st.kind = SweepKind::Delay;
                else if (value == "overlap") st.kind = SweepKind::Overlap;
                else throw ParseError("kind: expected analyzer|delay|overlap, got '" + value + "'",
                                      line_no, vcol);
            } else if (key == "start") st.start = num();
            else if (key == "stop") st.stop = num();
            else if (key == "points") {
                st.points = detail::parse_int(value, line_no, vcol);
                check_range(*st.points >= 1, key, "must be >= 1", line_no, vcol);
            } else if (key == "at") st.at = num();
            else if (key == "analyzer_theta_deg") st.analyzer_theta_deg = num();
            else if (key == "variable") {
                if (value == "v") st.variable = OverlapVariable::V;
                else if (value == "relative_delay") st.variable = OverlapVariable::RelativeDelay;
                else throw ParseError("variable: expected v|relative_delay, got '" + value + "'",
                                      line_no, vcol);
            } else known = false;
        }
        if (!known)
            throw ParseError("unknown key '" + key + "' in [" + section + "]", line_no, col0);
    }

    if (!st.kind)
        throw ValidationError("scenario: missing required key [sweep] kind");
    if (st.input_alpha.has_value() != st.input_beta.has_value())
        throw ValidationError("scenario: input_alpha and input_beta must be given together");
    if (st.input_alpha && st.input_theta_deg)
        throw ValidationError("scenario: give either input_theta_deg or input_alpha/input_beta, not both");
    if (st.variable && *st.kind != SweepKind::Overlap)
        throw ValidationError("scenario: [sweep] variable applies only to kind = overlap");

    Scenario s;
    if (st.input_theta_deg) s.source.input_theta_deg = *st.input_theta_deg;
    if (st.input_alpha) {
        JonesVector j{*st.input_alpha, *st.input_beta};
        if (!j.is_normalized(1e-9))
            throw ValidationError("scenario: input_alpha/input_beta are not normalized");
        s.source.input_jones = j;
    }
    if (st.ancilla_on) s.source.ancilla_on = *st.ancilla_on;
    if (st.pair_rate_per_min) s.source.pair_rate_per_min = *st.pair_rate_per_min;

    if (st.coupling_eta) s.circuit.coupling_eta = *st.coupling_eta;
    if (st.fiber_delay_ns) s.circuit.fiber_delay_ns = *st.fiber_delay_ns;
    if (st.residual_rotation_deg) s.circuit.residual_rotation_deg = *st.residual_rotation_deg;

    if (st.policy) s.control.policy = *st.policy;
    if (st.detector_edge_ns) s.control.budget.detector_edge_ns = *st.detector_edge_ns;
    if (st.pockels_chain_ns) s.control.budget.pockels_chain_ns = *st.pockels_chain_ns;
    if (st.logic_board_ns) s.control.budget.logic_board_ns = *st.logic_board_ns;
    if (st.cabling_ns) s.control.budget.cabling_ns = *st.cabling_ns;
    if (st.ttl_pulse_width_ns) s.control.budget.ttl_pulse_width_ns = *st.ttl_pulse_width_ns;
    if (st.extra_electronic_delay_ns) s.control.extra_electronic_delay_ns = *st.extra_electronic_delay_ns;
    if (st.edge_sigma_ns) s.control.edge_sigma_ns = *st.edge_sigma_ns;
    s.control.hold_ns = st.hold_ns ? *st.hold_ns : s.control.budget.ttl_pulse_width_ns;

    if (st.overlap_v) s.imperfections.overlap_v = *st.overlap_v;
    if (st.relative_delay_ns) s.imperfections.relative_delay_ns = *st.relative_delay_ns;
    if (st.wavelength_nm) s.imperfections.wavelength_nm = *st.wavelength_nm;
    if (st.filter_fwhm_nm) s.imperfections.filter_fwhm_nm = *st.filter_fwhm_nm;
    s.imperfections.coherence_time_ns =
        st.coherence_time_ns
            ? *st.coherence_time_ns
            : coherence_time_from_filter_ns(s.imperfections.wavelength_nm, s.imperfections.filter_fwhm_nm);
    if (st.eff_d1) s.imperfections.eff_d1 = *st.eff_d1;
    if (st.eff_d2a) s.imperfections.eff_d2a = *st.eff_d2a;
    if (st.eff_d2b) s.imperfections.eff_d2b = *st.eff_d2b;

    s.sweep.kind = *st.kind;
    switch (s.sweep.kind) {
        case SweepKind::Analyzer:
            s.sweep.start = 0.0;
            s.sweep.stop = 180.0;
            s.sweep.points = 37;
            s.sweep.at = 30.0;
            break;
        case SweepKind::Delay:
            s.sweep.start = -80.0;
            s.sweep.stop = 40.0;
            s.sweep.points = 61;
            s.sweep.at = 0.0;
            break;
        case SweepKind::Overlap:
            s.sweep.start = 0.0;
            s.sweep.stop = 1.0;
            s.sweep.points = 11;
            s.sweep.at = 1.0;
            break;
    }
    if (st.variable) s.sweep.variable = *st.variable;
    if (s.sweep.kind == SweepKind::Overlap && s.sweep.variable == OverlapVariable::RelativeDelay) {
        const double span = 3.0 * s.imperfections.coherence_time_ns;
        s.sweep.start = -span;
        s.sweep.stop = span;
        s.sweep.points = 41;
        s.sweep.at = 0.0;
    }
    if (st.start) s.sweep.start = *st.start;
    if (st.stop) s.sweep.stop = *st.stop;
    if (st.points) s.sweep.points = *st.points;
    if (st.at) s.sweep.at = *st.at;
    if (st.analyzer_theta_deg) s.sweep.analyzer_theta_deg = *st.analyzer_theta_deg;

    if (s.sweep.kind == SweepKind::Overlap && s.sweep.variable == OverlapVariable::V) {
        for (double v : {s.sweep.start, s.sweep.stop, s.sweep.at})
            if (v < 0 || v > 1)
                throw ValidationError("scenario: overlap sweep over v must stay in [0, 1]");
    }
    return s;
}

namespace detail {

inline std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_complex(const Complex& c) {
    if (c.imag() == 0.0) return fmt_num(c.real());
    std::string s = fmt_num(c.real());
    if (c.imag() >= 0.0) s += "+";
    return s + fmt_num(c.imag()) + "i";
}

} // namespace detail

/// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
inline std::string serialize_scenario(const Scenario& s) {
    using detail::fmt_num;
    std::string out;
    out += "[source]\n";
    if (s.source.input_jones) {
        out += "input_alpha = " + detail::fmt_complex(s.source.input_jones->alpha) + "\n";
        out += "input_beta = " + detail::fmt_complex(s.source.input_jones->beta) + "\n";
    } else {
        out += "input_theta_deg = " + fmt_num(s.source.input_theta_deg) + "\n";
    }
    out += std::string("ancilla_on = ") + (s.source.ancilla_on ? "true" : "false") + "\n";
    out += "pair_rate_per_min = " + fmt_num(s.source.pair_rate_per_min) + "\n";

    out += "\n[circuit]\n";
    out += "coupling_eta = " + fmt_num(s.circuit.coupling_eta) + "\n";
    out += "fiber_delay_ns = " + fmt_num(s.circuit.fiber_delay_ns) + "\n";
    out += "residual_rotation_deg = " + fmt_num(s.circuit.residual_rotation_deg) + "\n";

    out += "\n[control]\n";
    out += std::string("policy = ") + to_string(s.control.policy) + "\n";
    out += "detector_edge_ns = " + fmt_num(s.control.budget.detector_edge_ns) + "\n";
    out += "pockels_chain_ns = " + fmt_num(s.control.budget.pockels_chain_ns) + "\n";
    out += "logic_board_ns = " + fmt_num(s.control.budget.logic_board_ns) + "\n";
    out += "cabling_ns = " + fmt_num(s.control.budget.cabling_ns) + "\n";
    out += "ttl_pulse_width_ns = " + fmt_num(s.control.budget.ttl_pulse_width_ns) + "\n";
    out += "extra_electronic_delay_ns = " + fmt_num(s.control.extra_electronic_delay_ns) + "\n";
    out += "edge_sigma_ns = " + fmt_num(s.control.edge_sigma_ns) + "\n";
    out += "hold_ns = " + fmt_num(s.control.hold_ns) + "\n";

    out += "\n[imperfections]\n";
    out += "overlap_v = " + fmt_num(s.imperfections.overlap_v) + "\n";
    out += "relative_delay_ns = " + fmt_num(s.imperfections.relative_delay_ns) + "\n";
    out += "coherence_time_ns = " + fmt_num(s.imperfections.coherence_time_ns) + "\n";
    out += "wavelength_nm = " + fmt_num(s.imperfections.wavelength_nm) + "\n";
    out += "filter_fwhm_nm = " + fmt_num(s.imperfections.filter_fwhm_nm) + "\n";
    out += "eff_d1 = " + fmt_num(s.imperfections.eff_d1) + "\n";
    out += "eff_d2a = " + fmt_num(s.imperfections.eff_d2a) + "\n";
    out += "eff_d2b = " + fmt_num(s.imperfections.eff_d2b) + "\n";

    out += "\n[sweep]\n";
    out += std::string("kind = ") + to_string(s.sweep.kind) + "\n";
    out += "start = " + fmt_num(s.sweep.start) + "\n";
    out += "stop = " + fmt_num(s.sweep.stop) + "\n";
    out += "points = " + std::to_string(s.sweep.points) + "\n";
    out += "at = " + fmt_num(s.sweep.at) + "\n";
    out += "analyzer_theta_deg = " + fmt_num(s.sweep.analyzer_theta_deg) + "\n";
    if (s.sweep.kind == SweepKind::Overlap)
        out += std::string("variable = ") + to_string(s.sweep.variable) + "\n";
    return out;
}

} // namespace qpc
