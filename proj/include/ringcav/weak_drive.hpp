#pragma once

#include <optional>
#include <stdexcept>

#include "ringcav/chain.hpp"
#include "ringcav/system_params.hpp"
#include "ringcav/types.hpp"

namespace ringcav {

/// Steady-state intracavity amplitudes under the weak-excitation
/// approximation. c1/c2 are the amplitudes of the decoupled superposition
/// modes c_{1,2} = (S/|S| a_+ -+ a_-)/sqrt(2), defined only when |S| > 0.
struct IntracavityFields {
    Complex a_plus{0.0, 0.0};
    Complex a_minus{0.0, 0.0};
    std::optional<Complex> c1;
    std::optional<Complex> c2;
};

/// Closed-form steady state of the two traveling modes for a chain with
/// structure factor S (N atoms). The denominator is evaluated in the
/// factored form (Dd - g^2(N+|S|)) (Dd - g^2(N-|S|)), D = Delta + i gamma/2,
/// d = delta + i kappa/2: the two factors are the resonance denominators of
/// the decoupled c-modes and the factoring avoids cancellation near them.
inline IntracavityFields steady_state_fields(const SystemParams& p, int n_atoms,
                                             Complex s_factor) {
    p.validate();
    if (n_atoms < 0) throw std::invalid_argument("steady_state_fields: n_atoms must be >= 0");

    const Complex dt = p.atom_detuning_c();
    const Complex dc = p.cavity_detuning_c();
    const Scalar root_kin_eps = std::sqrt(p.kappa_in) * p.epsilon;

    IntracavityFields out;
    const Scalar g2 = p.g * p.g;
    if (g2 * n_atoms == 0.0) {
        // Bare cavity: a_+ = sqrt(kappa_in) eps / (delta + i kappa/2).
        out.a_plus = root_kin_eps / dc;
        out.a_minus = {0.0, 0.0};
        return out;
    }

    const Scalar n = static_cast<Scalar>(n_atoms);
    const Scalar s = std::abs(s_factor);
    const Complex f1 = dt * dc - g2 * (n + s);
    const Complex f2 = dt * dc - g2 * (n - s);
    const Complex den = f1 * f2;
    if (std::abs(den) < 1e-300)
        throw std::runtime_error(
            "steady_state_fields: degenerate denominator (zero dissipation on resonance)");

    const Complex m = dt * dc - g2 * n;
    out.a_plus = dt * m * root_kin_eps / den;
    out.a_minus = dt * g2 * s_factor * root_kin_eps / den;

    if (s > 0.0) {
        const Complex phase = s_factor / s;
        const Complex amp = phase * dt * std::sqrt(p.kappa_in / 2) * p.epsilon;
        out.c1 = amp / f1;
        out.c2 = amp / f2;
    }
    return out;
}

inline IntracavityFields steady_state_fields(const SystemParams& p, const AtomChain& chain) {
    return steady_state_fields(p, chain.size(), structure_factor(chain).value);
}

struct PhotonNumbers {
    Scalar n_plus = 0.0;
    Scalar n_minus = 0.0;
    Scalar total() const { return n_plus + n_minus; }
};

/// Intracavity photon numbers normalized to the resonantly driven empty
/// cavity, 4 |eps|^2 / kappa.
inline PhotonNumbers normalized_photon_numbers(const IntracavityFields& f,
                                               const SystemParams& p) {
    if (p.epsilon <= 0)
        throw std::invalid_argument("normalized_photon_numbers: epsilon must be > 0");
    const Scalar norm = p.kappa() / (4 * p.epsilon * p.epsilon);
    return {norm * std::norm(f.a_plus), norm * std::norm(f.a_minus)};
}

}  // namespace ringcav
