#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

#include "qpc/scenario.hpp"

namespace qpc {

/// Fully resolved knobs for evaluating one experimental point.
struct Setting {
    double analyzer_theta_deg = 30.0;
    double extra_delay_ns = 0.0;
    double overlap_v = 1.0;
};

/// Accepted-coincidence rates per minute, split by ancilla channel.
struct RateBreakdown {
    double total = 0.0;
    double via_d2a = 0.0;
    double via_d2b = 0.0;
};

/// One sweep point: exact rates (analytic) or tallied counts (Monte Carlo).
struct CountsRecord {
    double sweep_value = 0.0;
    double rate_per_min = 0.0;
    double rate_d2a = 0.0;
    double rate_d2b = 0.0;
    uint64_t accepted = 0;
    uint64_t accepted_d2a = 0;
    uint64_t accepted_d2b = 0;
    uint64_t shots = 0; // 0 in analytic mode
    uint64_t seed = 0;
};

struct Curve {
    SweepKind kind = SweepKind::Analyzer;
    std::vector<CountsRecord> points;
};

enum class ChannelSelect { Both, D2a, D2b };

inline double selected_rate(const CountsRecord& r, ChannelSelect sel) {
    switch (sel) {
        case ChannelSelect::Both: return r.rate_per_min;
        case ChannelSelect::D2a: return r.rate_d2a;
        case ChannelSelect::D2b: return r.rate_d2b;
    }
    return r.rate_per_min;
}

/// Quantum parity check with feed-forward: builds the circuit of the experiment
/// (state-preparation waveplates, main PBS, fiber storage, 45-degree detection
/// basis) and evaluates coincidence rates either exactly or by sampling.
class ParityCheckEngine {
public:
    explicit ParityCheckEngine(const Scenario& s) : scn_(s) {
        scn_.control.budget.validate();
        scn_.timing().validate();
        scn_.overlap().validate();
        scn_.calibration().validate();

        circuit_.register_mode(m1_);
        circuit_.register_mode(m2_);
        circuit_.register_mode(m2aux_);
        circuit_.register_mode(m2a_);
        circuit_.register_mode(m2b_);
        circuit_.register_mode(loss_, /*reserved=*/true);
        circuit_.register_mode(out_);
        circuit_.register_mode(blk_, /*reserved=*/true);

        if (scn_.source.ancilla_on) circuit_.add(Hwp{m2_, 22.5});
        circuit_.add(Pbs{m1_, m2_, m1_, m2_});
        circuit_.add(FiberDelay{m1_, scn_.circuit.coupling_eta, scn_.circuit.fiber_delay_ns, loss_,
                                scn_.circuit.residual_rotation_deg});
        // The 45-degree-oriented PBS' is a conventional PBS preceded by a half-wave plate.
        circuit_.add(Hwp{m2_, 22.5});
        circuit_.add(Pbs{m2_, m2aux_, m2a_, m2b_});

        input_photon_ = single_photon(m1_, scn_.source.input_state());
        ancilla_photon_ = single_photon(m2_, JonesVector{Complex(1.0, 0.0), Complex(0.0, 0.0)});
        const PhotonicState stage = circuit_.apply(tensor(input_photon_, ancilla_photon_));

        const DetectorConfig ancilla_cfg({{"D2a", m2a_, 1.0}, {"D2b", m2b_, 1.0}});
        const OutcomeDistribution dist = outcome_distribution(stage, ancilla_cfg);
        for (int ch = 0; ch < 2; ++ch) {
            DetectionOutcome o;
            o.counts = {{"D2a", ch == 0 ? 1 : 0}, {"D2b", ch == 0 ? 0 : 1}};
            o.undetected = 1;
            if (dist.probability_of(o) < 1e-30) continue;
            auto [cond, p] = project_outcome(stage, o, ancilla_cfg);
            coh_.push_back(make_branch(ch, p, cond));
        }
        for (const TaggedBranch& br :
             distinguishable_branches(circuit_, input_photon_, ancilla_photon_, ancilla_cfg)) {
            if (br.probability < 1e-30) continue;
            const int a = br.outcome.count("D2a");
            const int b = br.outcome.count("D2b");
            if (br.outcome.undetected == 1 && ((a == 1 && b == 0) || (a == 0 && b == 1)))
                dist_.push_back(make_branch(a == 1 ? 0 : 1, br.probability, br.undetected.front()));
        }
    }

    const Scenario& scenario() const { return scn_; }
    const Circuit& circuit() const { return circuit_; }

    /// Probability that the half-wave voltage is on when the stored photon reaches
    /// the Pockels cell, for a given extra electronic delay.
    double applied_probability_at(double extra_delay_ns) const {
        TimingConfig t = scn_.timing();
        t.extra_electronic_delay_ns = extra_delay_ns;
        return applied_probability(t.fiber_delay_ns, voltage_window(scn_.control.budget, t),
                                   t.edge_sigma_ns);
    }

    /// Ideal-detector probability that the ancilla pattern is accepted under the
    /// scenario policy, blended between coherent and distinguishable statistics.
    double accept_probability(double v) const {
        return blend_value(channel_sum(coh_), channel_sum(dist_), v);
    }
    double accept_probability() const { return accept_probability(scn_.overlap().effective_v()); }

    RateBreakdown analytic_rates(const Setting& set) const {
        const ChannelCalibration calib = scn_.calibration();
        const double q = applied_probability_at(set.extra_delay_ns);
        RateBreakdown rb;
        for (int ch = 0; ch < 2; ++ch) {
            if (!channel_counted(ch)) continue;
            const double p = blend_value(channel_pass(coh_, ch, set.analyzer_theta_deg, q),
                                         channel_pass(dist_, ch, set.analyzer_theta_deg, q),
                                         set.overlap_v);
            const double rate = p * calib.get(ch == 0 ? "D2a" : "D2b") * calib.get("D1") *
                                calib.pair_rate_per_min;
            (ch == 0 ? rb.via_d2a : rb.via_d2b) = rate;
        }
        rb.total = rb.via_d2a + rb.via_d2b;
        return rb;
    }

    CountsRecord analytic_record(const Setting& set, double sweep_value) const {
        const RateBreakdown rb = analytic_rates(set);
        CountsRecord rec;
        rec.sweep_value = sweep_value;
        rec.rate_per_min = rb.total;
        rec.rate_d2a = rb.via_d2a;
        rec.rate_d2b = rb.via_d2b;
        return rec;
    }

    /// Per-shot sampling with counter-split substreams: results are identical for
    /// serial and parallel execution of the same seed.
    CountsRecord montecarlo_record(const Setting& set, double sweep_value, uint64_t shots,
                                   uint64_t seed, int threads = 1) const {
        if (shots < 1) throw ValidationError("montecarlo: shots must be >= 1");
        if (threads < 1) throw ValidationError("montecarlo: threads must be >= 1");
        const ChannelCalibration calib = scn_.calibration();
        for (const char* id : {"D1", "D2a", "D2b"})
            if (calib.get(id) > 1.0)
                throw ValidationError(std::string("montecarlo: efficiency '") + id +
                                      "' exceeds 1; calibration factors above 1 are analytic-only");

        struct McBranch {
            double p = 0.0;
            int channel = 0;
            double click = 1.0;
            bool z_attempted = false;
            double pass_unc = 0.0, pass_cor = 0.0;
        };
        const double q = applied_probability_at(set.extra_delay_ns);
        const double v = set.overlap_v;
        if (v < 0.0 || v > 1.0) throw ValidationError("montecarlo: overlap v outside [0, 1]");
        const double eff_d1 = calib.get("D1");

        auto build_table = [&](const std::vector<Branch>& src) {
            std::vector<McBranch> table;
            for (const Branch& b : src) {
                if (!channel_counted(b.channel)) continue;
                McBranch mb;
                mb.p = b.p;
                mb.channel = b.channel;
                mb.click = calib.get(b.channel == 0 ? "D2a" : "D2b");
                mb.z_attempted = z_attempted(b.channel);
                mb.pass_unc = pass_probability(b.cond, set.analyzer_theta_deg);
                mb.pass_cor = mb.z_attempted ? pass_probability(b.cond_z, set.analyzer_theta_deg) : 0.0;
                table.push_back(mb);
            }
            return table;
        };
        const std::vector<McBranch> coh_table = build_table(coh_);
        const std::vector<McBranch> dist_table = build_table(dist_);

        const auto clamp01 = [](double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); };
        auto run_range = [&](uint64_t begin, uint64_t end, uint64_t* tally) {
            for (uint64_t shot = begin; shot < end; ++shot) {
                RngStream rng = RngStream::substream(seed, shot);
                const auto& table = rng.bernoulli(v) ? coh_table : dist_table;
                const double u = rng.next_double();
                double acc = 0.0;
                const McBranch* hit = nullptr;
                for (const McBranch& mb : table) {
                    acc += mb.p;
                    if (u < acc) {
                        hit = &mb;
                        break;
                    }
                }
                if (!hit) continue;                      // rejected ancilla pattern
                if (!rng.bernoulli(hit->click)) continue; // ancilla detector efficiency
                double pass = hit->pass_unc;
                if (hit->z_attempted) pass = rng.bernoulli(clamp01(q)) ? hit->pass_cor : hit->pass_unc;
                if (!rng.bernoulli(clamp01(pass))) continue; // analyzer projection (and fiber survival)
                if (!rng.bernoulli(eff_d1)) continue;        // output detector
                tally[hit->channel] += 1;
            }
        };

        std::vector<uint64_t> tallies(static_cast<size_t>(threads) * 2, 0);
        if (threads == 1) {
            run_range(0, shots, tallies.data());
        } else {
            std::vector<std::thread> pool;
            const uint64_t chunk = shots / static_cast<uint64_t>(threads);
            uint64_t begin = 0;
            for (int t = 0; t < threads; ++t) {
                const uint64_t end = (t == threads - 1) ? shots : begin + chunk;
                pool.emplace_back(run_range, begin, end, tallies.data() + 2 * t);
                begin = end;
            }
            for (auto& th : pool) th.join();
        }
        uint64_t d2a = 0, d2b = 0;
        for (int t = 0; t < threads; ++t) {
            d2a += tallies[static_cast<size_t>(2 * t)];
            d2b += tallies[static_cast<size_t>(2 * t) + 1];
        }

        CountsRecord rec;
        rec.sweep_value = sweep_value;
        rec.accepted_d2a = d2a;
        rec.accepted_d2b = d2b;
        rec.accepted = d2a + d2b;
        rec.shots = shots;
        rec.seed = seed;
        const double scale = calib.pair_rate_per_min / static_cast<double>(shots);
        rec.rate_d2a = static_cast<double>(d2a) * scale;
        rec.rate_d2b = static_cast<double>(d2b) * scale;
        rec.rate_per_min = static_cast<double>(rec.accepted) * scale;
        return rec;
    }

    /// Translates a swept scalar into a fully resolved Setting.
    Setting setting_for(double value) const {
        Setting set;
        set.extra_delay_ns = scn_.control.extra_electronic_delay_ns;
        set.overlap_v = scn_.overlap().effective_v();
        set.analyzer_theta_deg = scn_.sweep.analyzer_theta_deg;
        switch (scn_.sweep.kind) {
            case SweepKind::Analyzer:
                set.analyzer_theta_deg = value;
                break;
            case SweepKind::Delay:
                set.extra_delay_ns = value;
                break;
            case SweepKind::Overlap:
                set.overlap_v = (scn_.sweep.variable == OverlapVariable::V)
                                    ? value
                                    : overlap_from_delay(value, scn_.imperfections.coherence_time_ns);
                break;
        }
        return set;
    }

private:
    struct Branch {
        int channel = 0; // 0 = via D2a, 1 = via D2b
        double p = 0.0;  // Born probability of the accepted physical pattern
        PhotonicState cond;   // conditional output photon (signal + loss slots), normalized
        PhotonicState cond_z; // after the Z correction on the signal mode
    };

    Branch make_branch(int channel, double p, const PhotonicState& cond) const {
        Branch b;
        b.channel = channel;
        b.p = p;
        b.cond = cond;
        b.cond_z = apply_feedforward(cond, Correction::ZCorrection, true, m1_);
        return b;
    }

    bool channel_counted(int ch) const {
        if (scn_.control.policy == ControlPolicy::Passive) return ch == 0;
        return true;
    }

    bool z_attempted(int ch) const {
        return scn_.control.policy == ControlPolicy::OrGate && ch == 1;
    }

    double pass_probability(const PhotonicState& cond, double theta_deg) const {
        const PhotonicState after = apply_element(cond, Analyzer{m1_, theta_deg, out_, blk_});
        double p = 0.0;
        for (const auto& [ket, amp] : after.amplitudes())
            if (ket.photons() == 1 && ket.slots().front().mode == out_) p += std::norm(amp);
        return p;
    }

    double channel_pass(const std::vector<Branch>& branches, int ch, double theta_deg, double q) const {
        double total = 0.0;
        for (const Branch& b : branches) {
            if (b.channel != ch) continue;
            const double pu = pass_probability(b.cond, theta_deg);
            if (z_attempted(ch)) {
                const double pc = pass_probability(b.cond_z, theta_deg);
                total += b.p * (q * pc + (1.0 - q) * pu);
            } else {
                total += b.p * pu;
            }
        }
        return total;
    }

    double channel_sum(const std::vector<Branch>& branches) const {
        double total = 0.0;
        for (const Branch& b : branches)
            if (channel_counted(b.channel)) total += b.p;
        return total;
    }

    Scenario scn_;
    Circuit circuit_;
    ModeId m1_{"1"}, m2_{"2"}, m2aux_{"2x"}, m2a_{"2a"}, m2b_{"2b"};
    ModeId loss_{"loss0"}, out_{"out"}, blk_{"blk"};
    PhotonicState input_photon_, ancilla_photon_;
    std::vector<Branch> coh_;
    std::vector<Branch> dist_;
};

/// Exact rates at one swept-variable value.
inline CountsRecord run_analytic(const Scenario& s, double setting_value) {
    ParityCheckEngine eng(s);
    return eng.analytic_record(eng.setting_for(setting_value), setting_value);
}

/// Sampled counterpart of run_analytic; deterministic for a fixed seed.
inline CountsRecord run_montecarlo(const Scenario& s, double setting_value, uint64_t shots,
                                   uint64_t seed, int threads = 1) {
    ParityCheckEngine eng(s);
    return eng.montecarlo_record(eng.setting_for(setting_value), setting_value, shots, seed, threads);
}

namespace detail {

inline Curve sweep(const Scenario& s, SweepKind expected, uint64_t shots, uint64_t seed, int threads) {
    if (s.sweep.kind != expected)
        throw ValidationError(std::string("sweep: scenario [sweep] kind is ") + to_string(s.sweep.kind) +
                              " but the requested sweep is " + to_string(expected));
    ParityCheckEngine eng(s);
    Curve curve;
    curve.kind = s.sweep.kind;
    for (double value : s.sweep.grid()) {
        const Setting set = eng.setting_for(value);
        curve.points.push_back(shots == 0
                                   ? eng.analytic_record(set, value)
                                   : eng.montecarlo_record(set, value, shots, seed, threads));
    }
    return curve;
}

} // namespace detail

/// Rate versus analyzer setting theta_1 (Malus-law curves). shots = 0 runs analytically.
inline Curve sweep_analyzer(const Scenario& s, uint64_t shots = 0, uint64_t seed = 0, int threads = 1) {
    return detail::sweep(s, SweepKind::Analyzer, shots, seed, threads);
}

/// Rate versus extra electronic delay in the Pockels driver input.
inline Curve sweep_delay(const Scenario& s, uint64_t shots = 0, uint64_t seed = 0, int threads = 1) {
    return detail::sweep(s, SweepKind::Delay, shots, seed, threads);
}

/// Rate versus photon overlap v (or relative path delay mapped through the
/// Gaussian overlap).
inline Curve sweep_overlap(const Scenario& s, uint64_t shots = 0, uint64_t seed = 0, int threads = 1) {
    return detail::sweep(s, SweepKind::Overlap, shots, seed, threads);
}

/// Single point at the scenario's [sweep] `at` value.
inline Curve run_single(const Scenario& s, uint64_t shots = 0, uint64_t seed = 0, int threads = 1) {
    ParityCheckEngine eng(s);
    const double value = s.sweep.at;
    const Setting set = eng.setting_for(value);
    Curve curve;
    curve.kind = s.sweep.kind;
    curve.points.push_back(shots == 0 ? eng.analytic_record(set, value)
                                      : eng.montecarlo_record(set, value, shots, seed, threads));
    return curve;
}

struct PlateauStats {
    double center = 0.0;
    double fwhm = 0.0;
    double peak = 0.0;
};

/// Half-maximum width and center of a single-plateau curve, by linear interpolation.
inline PlateauStats plateau_stats(const Curve& curve, ChannelSelect sel = ChannelSelect::Both) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw ValidationError("plateau_stats: need at least 3 points");
    double peak = 0.0;
    for (const CountsRecord& r : pts) peak = std::max(peak, selected_rate(r, sel));
    if (!(peak > 0)) throw ValidationError("plateau_stats: flat zero curve");
    const double half = 0.5 * peak;

    auto x = [&](size_t i) { return pts[i].sweep_value; };
    auto y = [&](size_t i) { return selected_rate(pts[i], sel); };
    double first = 0.0, last = 0.0;
    bool found_first = false, found_last = false;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double y0 = y(i), y1 = y(i + 1);
        if (!found_first && y0 < half && y1 >= half) {
            first = x(i) + (half - y0) / (y1 - y0) * (x(i + 1) - x(i));
            found_first = true;
        }
        if (y0 >= half && y1 < half) {
            last = x(i) + (y0 - half) / (y0 - y1) * (x(i + 1) - x(i));
            found_last = true;
        }
    }
    if (!found_first || !found_last)
        throw ValidationError("plateau_stats: curve does not cross half-maximum on both sides");
    return PlateauStats{0.5 * (first + last), last - first, peak};
}

/// Interference visibility of a curve's selected channel.
inline double visibility_of(const Curve& curve, ChannelSelect sel = ChannelSelect::Both) {
    std::vector<double> rates;
    rates.reserve(curve.points.size());
    for (const CountsRecord& r : curve.points) rates.push_back(selected_rate(r, sel));
    return curve_visibility(rates);
}

} // namespace qpc
