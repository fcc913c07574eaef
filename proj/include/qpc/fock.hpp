#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qpc/error.hpp"

namespace qpc {

using Complex = std::complex<double>;

inline constexpr int kMaxPhotons = 2;
inline constexpr double kDefaultPruneThreshold = 1e-15;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Spatial mode label (e.g. "1", "2", "2a", "2b", "loss0").
class ModeId {
public:
    ModeId() = default;
    explicit ModeId(std::string name) : name_(std::move(name)) {
        if (name_.empty()) throw ValidationError("ModeId: mode name must be non-empty");
    }

    const std::string& name() const { return name_; }

    bool operator==(const ModeId& o) const { return name_ == o.name_; }
    bool operator!=(const ModeId& o) const { return name_ != o.name_; }
    bool operator<(const ModeId& o) const { return name_ < o.name_; }

private:
    std::string name_;
};

/// Photon polarization. H carries logical 0, V logical 1.
enum class Pol : uint8_t { H = 0, V = 1 };

inline char pol_char(Pol p) { return p == Pol::H ? 'H' : 'V'; }

/// One bosonic slot: a (spatial mode, polarization) pair.
/// Ordering is lexicographic on mode name, then H before V.
struct Slot {
    ModeId mode;
    Pol pol = Pol::H;

    bool operator==(const Slot& o) const { return mode == o.mode && pol == o.pol; }
    bool operator!=(const Slot& o) const { return !(*this == o); }
    bool operator<(const Slot& o) const {
        if (mode != o.mode) return mode < o.mode;
        return static_cast<int>(pol) < static_cast<int>(o.pol);
    }

    std::string str() const { return std::string(1, pol_char(pol)) + "_" + mode.name(); }
};

/// Occupation-number basis ket: a canonically sorted multiset of slots.
class BasisKet {
public:
    BasisKet() = default; // vacuum

    explicit BasisKet(std::vector<Slot> slots) : slots_(std::move(slots)) {
        if (static_cast<int>(slots_.size()) > kMaxPhotons)
            throw ValidationError("BasisKet: photon number exceeds the two-photon cap");
        std::sort(slots_.begin(), slots_.end());
    }

    int photons() const { return static_cast<int>(slots_.size()); }
    const std::vector<Slot>& slots() const { return slots_; }

    /// Product of factorials of slot occupancies (1 or 2 at the two-photon cap).
    double occupancy_factorial() const {
        double f = 1.0;
        int run = 1;
        for (size_t i = 1; i < slots_.size(); ++i) {
            run = (slots_[i] == slots_[i - 1]) ? run + 1 : 1;
            for (int k = 2; k <= run; ++k) f *= k; // contributes the incremental factor
        }
        return f;
    }

    bool operator==(const BasisKet& o) const { return slots_ == o.slots_; }
    bool operator!=(const BasisKet& o) const { return slots_ != o.slots_; }
    bool operator<(const BasisKet& o) const { return slots_ < o.slots_; }

    std::string str() const {
        std::string s = "|";
        for (size_t i = 0; i < slots_.size(); ++i) {
            if (i) s += " ";
            s += slots_[i].str();
        }
        return s + ">";
    }

private:
    std::vector<Slot> slots_;
};

/// Pure photonic state: complex amplitudes over basis kets of one fixed photon number.
///
/// Immutable value type; every operation returns a new state. Amplitudes below the
/// prune threshold are dropped at construction.
class PhotonicState {
public:
    using AmplitudeMap = std::map<BasisKet, Complex>;

    PhotonicState() = default; // empty (no amplitudes; norm 0)

    static PhotonicState from_amplitudes(AmplitudeMap amps, double prune_threshold = kDefaultPruneThreshold) {
        PhotonicState s;
        int n = -1;
        for (auto it = amps.begin(); it != amps.end();) {
            if (std::abs(it->second) < prune_threshold) {
                it = amps.erase(it);
                continue;
            }
            if (n < 0)
                n = it->first.photons();
            else if (it->first.photons() != n)
                throw ValidationError("PhotonicState: kets with mixed photon numbers");
            ++it;
        }
        s.amps_ = std::move(amps);
        s.photons_ = n;
        s.norm_hint_ = s.compute_norm_sq();
        return s;
    }

    static PhotonicState vacuum() {
        AmplitudeMap m;
        m[BasisKet{}] = Complex(1.0, 0.0);
        return from_amplitudes(std::move(m));
    }

    const AmplitudeMap& amplitudes() const { return amps_; }
    bool empty() const { return amps_.empty(); }

    /// Photon number shared by all kets; -1 for the empty state.
    int photons() const { return photons_; }

    Complex amplitude(const BasisKet& k) const {
        auto it = amps_.find(k);
        return it == amps_.end() ? Complex(0.0, 0.0) : it->second;
    }

    /// Squared norm as of the last construction/normalization.
    double norm_hint() const { return norm_hint_; }

    PhotonicState normalized() const {
        double n = compute_norm_sq();
        if (n < 1e-30) throw ValidationError("normalize: state has (near-)zero norm");
        double scale = 1.0 / std::sqrt(n);
        AmplitudeMap m = amps_;
        for (auto& [k, a] : m) a *= scale;
        return from_amplitudes(std::move(m));
    }

    PhotonicState pruned(double threshold) const {
        AmplitudeMap m = amps_;
        return from_amplitudes(std::move(m), threshold);
    }

    std::set<ModeId> occupied_modes() const {
        std::set<ModeId> out;
        for (const auto& [k, a] : amps_)
            for (const Slot& s : k.slots()) out.insert(s.mode);
        return out;
    }

    double compute_norm_sq() const {
        double n = 0.0;
        for (const auto& [k, a] : amps_) n += std::norm(a);
        return n;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, a] : amps_) {
            if (!first) os << " + ";
            os << "(" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i)" << k.str();
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    AmplitudeMap amps_;
    int photons_ = -1;
    double norm_hint_ = 0.0;
};

/// Single-photon polarization amplitudes (alpha on H, beta on V).
struct JonesVector {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    double norm_sq() const { return std::norm(alpha) + std::norm(beta); }
    bool is_normalized(double tol = kNormTol) const { return std::abs(norm_sq() - 1.0) <= tol; }

    /// Linear polarization at `theta_deg` from horizontal.
    static JonesVector linear_deg(double theta_deg);

    bool operator==(const JonesVector& o) const { return alpha == o.alpha && beta == o.beta; }
};

inline double deg2rad(double deg) { return deg * 0.017453292519943295; }

inline JonesVector JonesVector::linear_deg(double theta_deg) {
    double t = deg2rad(theta_deg);
    return JonesVector{Complex(std::cos(t), 0.0), Complex(std::sin(t), 0.0)};
}

/// One photon in `mode` with polarization amplitudes `jones`.
inline PhotonicState single_photon(const ModeId& mode, const JonesVector& jones) {
    if (!jones.is_normalized(1e-9))
        throw ValidationError("single_photon: Jones vector is not normalized");
    PhotonicState::AmplitudeMap m;
    m[BasisKet({Slot{mode, Pol::H}})] = jones.alpha;
    m[BasisKet({Slot{mode, Pol::V}})] = jones.beta;
    return PhotonicState::from_amplitudes(std::move(m));
}

inline double norm_sq(const PhotonicState& s) { return s.compute_norm_sq(); }

/// Product state of two states prepared in disjoint spatial modes.
inline PhotonicState tensor(const PhotonicState& a, const PhotonicState& b) {
    if (a.photons() < 0 || b.photons() < 0)
        throw ValidationError("tensor: empty operand");
    if (a.photons() + b.photons() > kMaxPhotons)
        throw ValidationError("tensor: combined photon number exceeds the two-photon cap");
    const std::set<ModeId> ma = a.occupied_modes();
    for (const ModeId& m : b.occupied_modes())
        if (ma.count(m))
            throw ValidationError("tensor: operands share spatial mode '" + m.name() + "'");

    PhotonicState::AmplitudeMap out;
    for (const auto& [ka, aa] : a.amplitudes()) {
        for (const auto& [kb, ab] : b.amplitudes()) {
            std::vector<Slot> slots = ka.slots();
            slots.insert(slots.end(), kb.slots().begin(), kb.slots().end());
            BasisKet k(std::move(slots));
            // Bosonic weight for photons meeting in an identical slot; unity for disjoint modes.
            double w = std::sqrt(k.occupancy_factorial() /
                                 (ka.occupancy_factorial() * kb.occupancy_factorial()));
            out[k] += aa * ab * w;
        }
    }
    return PhotonicState::from_amplitudes(std::move(out));
}

inline Complex inner_product(const PhotonicState& a, const PhotonicState& b) {
    // Iterate the sparser map.
    const PhotonicState& small = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
    const PhotonicState& big = (&small == &a) ? b : a;
    Complex ip(0.0, 0.0);
    for (const auto& [k, amp] : small.amplitudes()) {
        Complex other = big.amplitude(k);
        ip += (&small == &a) ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return ip;
}

/// |<a|b>|^2 for normalized states of equal photon number.
inline double fidelity(const PhotonicState& a, const PhotonicState& b) {
    if (a.photons() != b.photons())
        throw ValidationError("fidelity: photon-number mismatch");
    return std::norm(inner_product(a, b));
}

/// A unitary acting on an explicit ordered list of slots; unlisted slots are untouched.
/// matrix[i][j] is the amplitude sent from slots[j] to slots[i].
class SlotMap {
public:
    SlotMap(std::vector<Slot> slots, std::vector<std::vector<Complex>> matrix)
        : slots_(std::move(slots)), m_(std::move(matrix)) {
        const size_t n = slots_.size();
        if (n == 0) throw ValidationError("SlotMap: empty slot list");
        std::set<Slot> uniq(slots_.begin(), slots_.end());
        if (uniq.size() != n) throw ValidationError("SlotMap: duplicate slots");
        if (m_.size() != n) throw ValidationError("SlotMap: matrix is not square over the slot list");
        for (const auto& row : m_)
            if (row.size() != n) throw ValidationError("SlotMap: matrix is not square over the slot list");
        check_unitary();
    }

    const std::vector<Slot>& slots() const { return slots_; }
    const std::vector<std::vector<Complex>>& matrix() const { return m_; }

    int index_of(const Slot& s) const {
        for (size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i] == s) return static_cast<int>(i);
        return -1;
    }

private:
    void check_unitary() const {
        const size_t n = slots_.size();
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                Complex dot(0.0, 0.0);
                for (size_t k = 0; k < n; ++k) dot += std::conj(m_[k][i]) * m_[k][j];
                Complex expect = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
                if (std::abs(dot - expect) > kUnitaryTol)
                    throw ValidationError("SlotMap: matrix is not unitary over the listed slots");
            }
        }
    }

    std::vector<Slot> slots_;
    std::vector<std::vector<Complex>> m_;
};

/// Applies a slot unitary to a state: each creation operator for a listed slot is
/// replaced by its mapped linear combination, products re-expanded and re-canonicalized
/// with bosonic weights. Norm-preserving.
inline PhotonicState apply_slot_map(const PhotonicState& state, const SlotMap& map,
                                    double prune_threshold = kDefaultPruneThreshold) {
    PhotonicState::AmplitudeMap out;
    const auto& mat = map.matrix();
    for (const auto& [ket, amp] : state.amplitudes()) {
        // |ket> = prod a^dag / sqrt(prod n!) |0>
        const Complex pre = amp / std::sqrt(ket.occupancy_factorial());
        std::vector<std::pair<std::vector<Slot>, Complex>> terms;
        terms.emplace_back(std::vector<Slot>{}, pre);
        for (const Slot& s : ket.slots()) {
            const int j = map.index_of(s);
            std::vector<std::pair<std::vector<Slot>, Complex>> next;
            for (const auto& [tuple, coeff] : terms) {
                if (j < 0) {
                    auto t = tuple;
                    t.push_back(s);
                    next.emplace_back(std::move(t), coeff);
                    continue;
                }
                for (size_t i = 0; i < map.slots().size(); ++i) {
                    const Complex u = mat[i][static_cast<size_t>(j)];
                    if (std::abs(u) == 0.0) continue;
                    auto t = tuple;
                    t.push_back(map.slots()[i]);
                    next.emplace_back(std::move(t), coeff * u);
                }
            }
            terms = std::move(next);
        }
        for (auto& [tuple, coeff] : terms) {
            BasisKet k(std::move(tuple));
            out[k] += coeff * std::sqrt(k.occupancy_factorial());
        }
    }
    return PhotonicState::from_amplitudes(std::move(out), prune_threshold);
}

} // namespace qpc
