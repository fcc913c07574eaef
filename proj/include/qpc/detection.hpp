#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qpc/fock.hpp"
#include "qpc/rng.hpp"

namespace qpc {

/// A single-photon detector watching one spatial mode (all polarizations reaching it).
struct Detector {
    std::string id;
    ModeId mode;
    double efficiency = 1.0;
    // Dark counts are out of scope; the field is reserved for future use.
    double dark_rate_per_s = 0.0;
};

class DetectorConfig {
public:
    explicit DetectorConfig(std::vector<Detector> detectors) : dets_(std::move(detectors)) {
        std::set<std::string> ids;
        std::set<std::string> modes;
        for (const Detector& d : dets_) {
            if (d.id.empty()) throw ValidationError("detector: empty id");
            if (!ids.insert(d.id).second) throw ValidationError("detector: duplicate id '" + d.id + "'");
            if (!modes.insert(d.mode.name()).second)
                throw ValidationError("detector: mode '" + d.mode.name() + "' watched twice");
            if (d.efficiency < 0.0 || d.efficiency > 1.0)
                throw ValidationError("detector '" + d.id + "': efficiency outside [0, 1]");
        }
    }

    const std::vector<Detector>& detectors() const { return dets_; }
    size_t size() const { return dets_.size(); }

    int index_for_mode(const ModeId& m) const {
        for (size_t i = 0; i < dets_.size(); ++i)
            if (dets_[i].mode == m) return static_cast<int>(i);
        return -1;
    }

private:
    std::vector<Detector> dets_;
};

/// Which detectors fired and with how many photons; photons routed to unwatched
/// (loss/block) modes or missed by inefficiency are booked as undetected.
struct DetectionOutcome {
    std::map<std::string, int> counts;
    int undetected = 0;

    int count(const std::string& id) const {
        auto it = counts.find(id);
        return it == counts.end() ? 0 : it->second;
    }

    int total() const {
        int t = undetected;
        for (const auto& [id, c] : counts) t += c;
        return t;
    }

    bool operator==(const DetectionOutcome& o) const {
        return undetected == o.undetected && counts == o.counts;
    }
    bool operator<(const DetectionOutcome& o) const {
        if (counts != o.counts) return counts < o.counts;
        return undetected < o.undetected;
    }

    std::string str() const {
        std::string s = "{";
        for (const auto& [id, c] : counts) s += id + ":" + std::to_string(c) + " ";
        return s + "undetected:" + std::to_string(undetected) + "}";
    }
};

struct OutcomeDistribution {
    std::vector<std::pair<DetectionOutcome, double>> entries;

    double probability_of(const DetectionOutcome& o) const {
        for (const auto& [e, p] : entries)
            if (e == o) return p;
        return 0.0;
    }

    double total() const {
        double t = 0.0;
        for (const auto& [e, p] : entries) t += p;
        return t;
    }
};

namespace detail {

/// Kets grouped by their exact physical detection pattern (unit-efficiency counts).
struct PatternGroup {
    std::vector<int> counts; // per detector index
    int undetected = 0;
    double born = 0.0;
    PhotonicState::AmplitudeMap projected;  // full kets of this pattern
    std::set<BasisKet> detected_contents;   // multiset of watched slots per ket
};

inline std::vector<PatternGroup> pattern_groups(const PhotonicState& state, const DetectorConfig& cfg) {
    std::map<std::pair<std::vector<int>, int>, PatternGroup> groups;
    for (const auto& [ket, amp] : state.amplitudes()) {
        std::vector<int> counts(cfg.size(), 0);
        std::vector<Slot> detected;
        int undet = 0;
        for (const Slot& s : ket.slots()) {
            int idx = cfg.index_for_mode(s.mode);
            if (idx >= 0) {
                counts[static_cast<size_t>(idx)] += 1;
                detected.push_back(s);
            } else {
                ++undet;
            }
        }
        PatternGroup& g = groups[{counts, undet}];
        g.counts = counts;
        g.undetected = undet;
        g.born += std::norm(amp);
        g.projected[ket] += amp;
        g.detected_contents.insert(BasisKet(std::move(detected)));
    }
    std::vector<PatternGroup> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

inline double binom_weight(int n, int k, double eta) {
    // n <= 2 under the photon cap
    double comb = (n == 2 && k == 1) ? 2.0 : 1.0;
    double w = comb;
    for (int i = 0; i < k; ++i) w *= eta;
    for (int i = 0; i < n - k; ++i) w *= (1.0 - eta);
    return w;
}

/// Expands physical patterns into observed outcomes: each photon arriving at a
/// detector is counted with probability `efficiency`, otherwise booked undetected.
template <typename Fn>
inline void fold_efficiencies(const PatternGroup& g, const DetectorConfig& cfg, Fn&& emit) {
    struct Partial {
        std::map<std::string, int> counts;
        int missed = 0;
        double weight = 1.0;
    };
    std::vector<Partial> partials{Partial{}};
    for (size_t d = 0; d < cfg.size(); ++d) {
        const int n = g.counts[d];
        std::vector<Partial> next;
        for (const Partial& p : partials) {
            for (int k = n; k >= 0; --k) {
                const double w = binom_weight(n, k, cfg.detectors()[d].efficiency);
                if (w == 0.0) continue;
                Partial q = p;
                q.counts[cfg.detectors()[d].id] = k;
                q.missed += n - k;
                q.weight *= w;
                next.push_back(std::move(q));
            }
        }
        partials = std::move(next);
    }
    for (const Partial& p : partials) {
        DetectionOutcome o;
        o.counts = p.counts;
        o.undetected = g.undetected + p.missed;
        emit(o, p.weight);
    }
}

} // namespace detail

/// Born-rule probability of every detector-count pattern, folded with per-detector
/// efficiency. Probabilities over all outcomes (including loss outcomes) sum to 1
/// for a normalized input state.
inline OutcomeDistribution outcome_distribution(const PhotonicState& state, const DetectorConfig& cfg) {
    std::map<DetectionOutcome, double> acc;
    for (const detail::PatternGroup& g : detail::pattern_groups(state, cfg)) {
        detail::fold_efficiencies(g, cfg, [&](const DetectionOutcome& o, double w) {
            acc[o] += g.born * w;
        });
    }
    OutcomeDistribution dist;
    dist.entries.assign(acc.begin(), acc.end());
    return dist;
}

/// Projects onto one detection outcome and returns the normalized conditional state
/// of the undetected subsystem plus the outcome probability.
///
/// The conditional state is defined only when a single physical pattern with one
/// detected slot content is compatible with the outcome (always the case at unit
/// efficiency in this gate); otherwise the post-measurement state would be mixed
/// and an error is raised.
inline std::pair<PhotonicState, double> project_outcome(const PhotonicState& state,
                                                        const DetectionOutcome& outcome,
                                                        const DetectorConfig& cfg) {
    const auto groups = detail::pattern_groups(state, cfg);
    const detail::PatternGroup* match = nullptr;
    double prob = 0.0;
    int contributors = 0;
    for (const detail::PatternGroup& g : groups) {
        detail::fold_efficiencies(g, cfg, [&](const DetectionOutcome& o, double w) {
            if (!(o == outcome) || g.born * w <= 0.0) return;
            prob += g.born * w;
            ++contributors;
            match = &g;
        });
    }
    if (prob <= 0.0) throw ValidationError("project_outcome: zero-probability outcome " + outcome.str());
    if (contributors > 1)
        throw ValidationError("project_outcome: outcome " + outcome.str() +
                              " is compatible with several physical patterns; conditional state is mixed");
    if (match->detected_contents.size() > 1)
        throw ValidationError("project_outcome: detected photons carry entangled polarization; "
                              "conditional state is mixed");

    // Strip the detected slots; the remainder is the undetected subsystem.
    PhotonicState::AmplitudeMap cond;
    for (const auto& [ket, amp] : match->projected) {
        std::vector<Slot> rest;
        for (const Slot& s : ket.slots())
            if (cfg.index_for_mode(s.mode) < 0) rest.push_back(s);
        cond[BasisKet(std::move(rest))] += amp;
    }
    PhotonicState conditional = PhotonicState::from_amplitudes(std::move(cond));
    if (conditional.empty()) conditional = PhotonicState::vacuum();
    return {conditional.normalized(), prob};
}

/// Post-selection rule applied to the ancilla detectors.
enum class AcceptPolicy {
    PassiveD2aOnly, // only detections in mode 2a are accepted
    OrGate,         // accept when exactly one of D2a, D2b registered one photon
};

inline bool accept(const DetectionOutcome& outcome, AcceptPolicy policy,
                   const std::string& d2a_id = "D2a", const std::string& d2b_id = "D2b") {
    const int a = outcome.count(d2a_id);
    const int b = outcome.count(d2b_id);
    switch (policy) {
        case AcceptPolicy::PassiveD2aOnly:
            return a == 1 && b == 0;
        case AcceptPolicy::OrGate:
            return (a == 1 && b == 0) || (a == 0 && b == 1);
    }
    return false;
}

/// Draws one outcome; deterministic given the stream state.
inline DetectionOutcome sample_outcome(const OutcomeDistribution& dist, RngStream& rng) {
    if (dist.entries.empty()) throw ValidationError("sample_outcome: empty distribution");
    const double u = rng.next_double();
    double acc = 0.0;
    for (const auto& [o, p] : dist.entries) {
        acc += p;
        if (u < acc) return o;
    }
    return dist.entries.back().first; // guards rounding at the top of the CDF
}

} // namespace qpc
