#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpc/fock.hpp"

namespace qpc {

/// Polarizing beamsplitter. H is transmitted (in_a->out_a, in_b->out_b),
/// V is reflected (in_a->out_b, in_b->out_a); all coefficients +1.
/// Inputs may alias outputs pairwise for in-place wiring.
struct Pbs {
    ModeId in_a, in_b, out_a, out_b;
};

/// Half-wave plate at `theta_deg`: [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on (H, V).
struct Hwp {
    ModeId mode;
    double theta_deg = 0.0;
};

/// Pockels cell biased for a pi phase on H when on: diag(-1, +1); identity when off.
struct Pockels {
    ModeId mode;
    bool on = false;
};

/// Fiber delay line: couples both polarizations into `loss_mode` with transmission
/// amplitude sqrt(eta) and adds `delay_ns` of time-of-flight. The paddle-wheel
/// polarization controller is modeled as perfect compensation; `residual_rotation_deg`
/// exposes an uncompensated birefringence knob (default 0).
struct FiberDelay {
    ModeId mode;
    double coupling_eta = 1.0;
    double delay_ns = 0.0;
    ModeId loss_mode;
    double residual_rotation_deg = 0.0;
};

/// Polarization analyzer at `theta_deg`: the component along theta is routed to
/// `pass_mode`, the orthogonal component to `block_mode` (unitary; blocked light
/// is simply never detected as signal).
struct Analyzer {
    ModeId mode;
    double theta_deg = 0.0;
    ModeId pass_mode, block_mode;
};

using Element = std::variant<Pbs, Hwp, Pockels, FiberDelay, Analyzer>;

namespace detail {

/// Completes a routing in->out into a unitary permutation-style block map
/// [[0, U+], [U, 0]] over disjoint input and output slot lists.
inline SlotMap coupled_ports_map(const std::vector<Slot>& in, const std::vector<Slot>& out,
                                 const std::vector<std::vector<Complex>>& u) {
    const size_t k = in.size();
    std::vector<Slot> slots = in;
    slots.insert(slots.end(), out.begin(), out.end());
    const size_t n = slots.size();
    std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = 0; j < k; ++j) {
            m[k + i][j] = u[i][j];             // in -> out
            m[j][k + i] = std::conj(u[i][j]);  // out -> in (adjoint), closes the unitary
        }
    }
    return SlotMap(std::move(slots), std::move(m));
}

} // namespace detail

inline SlotMap pbs_map(const Pbs& e) {
    if (e.in_a == e.in_b || e.out_a == e.out_b)
        throw ValidationError("pbs: each port pair must use two distinct spatial modes");
    const bool aliased = (e.in_a == e.out_a && e.in_b == e.out_b);
    const bool disjoint = e.in_a != e.out_a && e.in_a != e.out_b && e.in_b != e.out_a && e.in_b != e.out_b;
    if (!aliased && !disjoint)
        throw ValidationError("pbs: mode aliasing makes the permutation ill-defined");

    if (aliased) {
        // In-place wiring: H untouched, V swapped between the two modes.
        std::vector<Slot> slots{{e.in_a, Pol::H}, {e.in_b, Pol::H}, {e.in_a, Pol::V}, {e.in_b, Pol::V}};
        std::vector<std::vector<Complex>> m(4, std::vector<Complex>(4, Complex(0.0, 0.0)));
        m[0][0] = 1.0;
        m[1][1] = 1.0;
        m[3][2] = 1.0;
        m[2][3] = 1.0;
        return SlotMap(std::move(slots), std::move(m));
    }
    std::vector<Slot> in{{e.in_a, Pol::H}, {e.in_b, Pol::H}, {e.in_a, Pol::V}, {e.in_b, Pol::V}};
    std::vector<Slot> out{{e.out_a, Pol::H}, {e.out_b, Pol::H}, {e.out_a, Pol::V}, {e.out_b, Pol::V}};
    std::vector<std::vector<Complex>> u(4, std::vector<Complex>(4, Complex(0.0, 0.0)));
    u[0][0] = 1.0; // H: in_a -> out_a
    u[1][1] = 1.0; // H: in_b -> out_b
    u[3][2] = 1.0; // V: in_a -> out_b
    u[2][3] = 1.0; // V: in_b -> out_a
    return detail::coupled_ports_map(in, out, u);
}

inline SlotMap hwp_map(const Hwp& e) {
    const double c = std::cos(2.0 * deg2rad(e.theta_deg));
    const double s = std::sin(2.0 * deg2rad(e.theta_deg));
    return SlotMap({{e.mode, Pol::H}, {e.mode, Pol::V}},
                   {{Complex(c, 0.0), Complex(s, 0.0)}, {Complex(s, 0.0), Complex(-c, 0.0)}});
}

inline SlotMap pockels_map(const Pockels& e) {
    const double h = e.on ? -1.0 : 1.0;
    return SlotMap({{e.mode, Pol::H}, {e.mode, Pol::V}},
                   {{Complex(h, 0.0), Complex(0.0, 0.0)}, {Complex(0.0, 0.0), Complex(1.0, 0.0)}});
}

inline SlotMap fiber_map(const FiberDelay& e) {
    if (e.coupling_eta < 0.0 || e.coupling_eta > 1.0)
        throw ValidationError("fiber: coupling_eta outside [0, 1]");
    if (e.delay_ns < 0.0) throw ValidationError("fiber: delay_ns must be >= 0");
    if (e.mode == e.loss_mode) throw ValidationError("fiber: loss mode must differ from the signal mode");

    const double t = std::sqrt(e.coupling_eta);
    const double r = std::sqrt(1.0 - e.coupling_eta);
    const double cd = std::cos(deg2rad(e.residual_rotation_deg));
    const double sd = std::sin(deg2rad(e.residual_rotation_deg));
    std::vector<Slot> slots{
        {e.mode, Pol::H}, {e.mode, Pol::V}, {e.loss_mode, Pol::H}, {e.loss_mode, Pol::V}};
    // Residual polarization rotation on the signal mode, then loss coupling.
    // Columns act on input slots; rotation touches only the signal columns.
    std::vector<std::vector<Complex>> m(4, std::vector<Complex>(4, Complex(0.0, 0.0)));
    // signal H column: rotated (H,V) -> coupled
    m[0][0] = t * cd;
    m[1][0] = t * sd;
    m[2][0] = r * cd;
    m[3][0] = r * sd;
    // signal V column
    m[0][1] = -t * sd;
    m[1][1] = t * cd;
    m[2][1] = -r * sd;
    m[3][1] = r * cd;
    // loss columns: orthogonal completion
    m[0][2] = -r;
    m[2][2] = t;
    m[1][3] = -r;
    m[3][3] = t;
    return SlotMap(std::move(slots), std::move(m));
}

inline SlotMap analyzer_map(const Analyzer& e) {
    if (e.pass_mode == e.block_mode || e.pass_mode == e.mode || e.block_mode == e.mode)
        throw ValidationError("analyzer: mode, pass_mode and block_mode must be distinct");
    const double c = std::cos(deg2rad(e.theta_deg));
    const double s = std::sin(deg2rad(e.theta_deg));
    std::vector<Slot> in{{e.mode, Pol::H}, {e.mode, Pol::V}};
    std::vector<Slot> out{{e.pass_mode, Pol::H}, {e.block_mode, Pol::V}};
    // pass = cos(t) H + sin(t) V; block = -sin(t) H + cos(t) V
    std::vector<std::vector<Complex>> u{{Complex(c, 0.0), Complex(s, 0.0)},
                                        {Complex(-s, 0.0), Complex(c, 0.0)}};
    return detail::coupled_ports_map(in, out, u);
}

inline SlotMap element_map(const Element& e) {
    return std::visit(
        [](const auto& el) -> SlotMap {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, Pbs>) return pbs_map(el);
            else if constexpr (std::is_same_v<T, Hwp>) return hwp_map(el);
            else if constexpr (std::is_same_v<T, Pockels>) return pockels_map(el);
            else if constexpr (std::is_same_v<T, FiberDelay>) return fiber_map(el);
            else return analyzer_map(el);
        },
        e);
}

inline PhotonicState apply_element(const PhotonicState& state, const Element& e) {
    return apply_slot_map(state, element_map(e));
}

/// Ordered element list plus the mode registry and per-mode accumulated optical delay.
class Circuit {
public:
    /// Reserved modes (loss, block) are never detected as signal.
    void register_mode(const ModeId& m, bool reserved = false) {
        if (!modes_.emplace(m.name(), reserved).second)
            throw ValidationError("circuit: duplicate mode '" + m.name() + "'");
    }

    bool has_mode(const ModeId& m) const { return modes_.count(m.name()) > 0; }
    bool is_reserved(const ModeId& m) const {
        auto it = modes_.find(m.name());
        return it != modes_.end() && it->second;
    }

    void add(Element e) {
        for (const ModeId& m : referenced_modes(e))
            if (!has_mode(m))
                throw ValidationError("circuit: element references unregistered mode '" + m.name() + "'");
        if (const auto* fd = std::get_if<FiberDelay>(&e)) {
            if (!is_reserved(fd->loss_mode))
                throw ValidationError("circuit: fiber loss mode must be reserved");
        }
        if (const auto* an = std::get_if<Analyzer>(&e)) {
            if (!is_reserved(an->block_mode))
                throw ValidationError("circuit: analyzer block mode must be reserved");
        }
        element_map(e); // validates construction before accepting
        elements_.push_back(std::move(e));
    }

    const std::vector<Element>& elements() const { return elements_; }

    PhotonicState apply(const PhotonicState& s) const {
        PhotonicState out = s;
        for (const Element& e : elements_) out = apply_element(out, e);
        return out;
    }

    /// Sum of fiber delays encountered on this mode's path.
    double accumulated_delay_ns(const ModeId& m) const {
        double total = 0.0;
        for (const Element& e : elements_)
            if (const auto* fd = std::get_if<FiberDelay>(&e))
                if (fd->mode == m) total += fd->delay_ns;
        return total;
    }

private:
    static std::vector<ModeId> referenced_modes(const Element& e) {
        return std::visit(
            [](const auto& el) -> std::vector<ModeId> {
                using T = std::decay_t<decltype(el)>;
                if constexpr (std::is_same_v<T, Pbs>) return {el.in_a, el.in_b, el.out_a, el.out_b};
                else if constexpr (std::is_same_v<T, Hwp>) return {el.mode};
                else if constexpr (std::is_same_v<T, Pockels>) return {el.mode};
                else if constexpr (std::is_same_v<T, FiberDelay>) return {el.mode, el.loss_mode};
                else return {el.mode, el.pass_mode, el.block_mode};
            },
            e);
    }

    std::map<std::string, bool> modes_;
    std::vector<Element> elements_;
};

} // namespace qpc
