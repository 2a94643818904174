#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "ringcav/chain.hpp"
#include "ringcav/system_params.hpp"
#include "ringcav/types.hpp"

namespace ringcav {

/// 2 x N coupling matrix between the {|+>,|->} photonic states and the
/// single-atom excitations: row 1 = g e^{-i k x_i}, row 2 = g e^{+i k x_i}.
inline MatrixXc coupling_matrix(const SystemParams& p, const AtomChain& chain) {
    const int n = chain.size();
    if (n < 1) throw std::invalid_argument("coupling_matrix: chain must contain atoms");
    MatrixXc g_mat(2, n);
    for (int i = 0; i < n; ++i) {
        const Complex ph = std::exp(im * (two_pi * chain.positions[i]));
        g_mat(0, i) = p.g * std::conj(ph);
        g_mat(1, i) = p.g * ph;
    }
    return g_mat;
}

/// Singular-value structure of the coupling matrix. c1/c2 span the cavity
/// {|+>,|->} basis, a1/a2 the atomic excitation basis; couplings
/// g1 = g sqrt(N+|S|), g2 = g sqrt(N-|S|). The remaining N-2 atomic modes
/// are decoupled from the cavity.
struct ModeDecomposition {
    Vector2c c1, c2;
    VectorXc a1, a2;
    Scalar g1 = 0.0, g2 = 0.0;
    int dark_space_dim = 0;
};

namespace detail {

// Deterministic unit vector orthogonal to a1, used when the second singular
// value vanishes (|S| = N) and the coefficient formula degenerates.
inline VectorXc orthonormal_complement(const VectorXc& a1) {
    const int n = static_cast<int>(a1.size());
    for (int k = 0; k < n; ++k) {
        VectorXc v = VectorXc::Zero(n);
        v[k] = 1.0;
        v -= a1 * a1.dot(v);
        const Scalar nrm = v.norm();
        if (nrm > 1e-6) return v / nrm;
    }
    throw std::logic_error("orthonormal_complement: no independent direction");
}

}  // namespace detail

inline ModeDecomposition decompose_modes(const SystemParams& p, const AtomChain& chain) {
    const int n = chain.size();
    if (n < 1) throw std::invalid_argument("decompose_modes: chain must contain atoms");

    const Complex s_factor = structure_factor(chain).value;
    const Scalar s = std::abs(s_factor);

    ModeDecomposition md;
    md.dark_space_dim = std::max(n - 2, 0);
    md.g1 = p.g * std::sqrt(n + s);
    md.g2 = p.g * std::sqrt(std::max<Scalar>(n - s, 0.0));

    VectorXc fwd(n);  // e^{+i k x_i}
    for (int i = 0; i < n; ++i)
        fwd[i] = std::exp(im * (two_pi * chain.positions[i]));

    if (s <= 1e-12 * std::max(1, n)) {
        // |S| = 0 limit: the traveling modes couple independently.
        md.c1 = Vector2c(1.0, 0.0);
        md.c2 = Vector2c(0.0, 1.0);
        md.a1 = fwd / std::sqrt(Scalar(n));
        md.a2 = fwd.conjugate() / std::sqrt(Scalar(n));
        md.g1 = md.g2 = p.g * std::sqrt(Scalar(n));
        return md;
    }

    const Complex phase = std::conj(s_factor) / s;
    md.c1 = Vector2c(phase, 1.0) / std::sqrt(2.0);
    md.c2 = Vector2c(phase, -1.0) / std::sqrt(2.0);

    // alpha_i^+- = e^{i k x_i} S* +- e^{-i k x_i} |S|
    const VectorXc alpha_plus = fwd * std::conj(s_factor) + fwd.conjugate() * s;
    md.a1 = alpha_plus / alpha_plus.norm();
    if (n == 1) {
        md.a2.resize(0);
    } else {
        const VectorXc alpha_minus = fwd * std::conj(s_factor) - fwd.conjugate() * s;
        const Scalar nrm = alpha_minus.norm();
        md.a2 = (nrm > 1e-9 * s) ? VectorXc(alpha_minus / nrm)
                                 : detail::orthonormal_complement(md.a1);
    }
    return md;
}

/// Standing-wave amplitude of a cavity mode with traveling-wave coefficients
/// (c_+, c_-) at position x: c_+ e^{i k x} + c_- e^{-i k x}.
inline Complex mode_field_at(const Vector2c& mode, Scalar x) {
    const Complex ph = std::exp(im * (two_pi * x));
    return mode[0] * ph + mode[1] * std::conj(ph);
}

/// Four polariton eigenvalues E_{k,+-}, k = 1,2. Frequencies are reported
/// as drive-cavity detunings: a mode is resonantly driven at delta = Re E.
/// Im E = -linewidth/2.
struct PolaritonSpectrum {
    Complex e1_minus, e1_plus;  // branch coupled with g1
    Complex e2_minus, e2_plus;  // branch coupled with g2
    std::array<Complex, 4> all() const { return {e1_minus, e1_plus, e2_minus, e2_plus}; }
};

inline PolaritonSpectrum polariton_eigenvalues(const SystemParams& p, int n_atoms,
                                               Scalar s_magnitude) {
    if (n_atoms < 1) throw std::invalid_argument("polariton_eigenvalues: need n_atoms >= 1");
    const Complex wc{0.0, -p.kappa() / 2};
    const Complex wa{-p.delta_ac, -p.gamma / 2};
    const Scalar g1_sq = p.g * p.g * (n_atoms + s_magnitude);
    const Scalar g2_sq = p.g * p.g * std::max<Scalar>(n_atoms - s_magnitude, 0.0);

    const auto pair = [&](Scalar gk_sq) {
        const Complex root = std::sqrt((wa - wc) * (wa - wc) + 4.0 * gk_sq);
        return std::array<Complex, 2>{(wa + wc - root) / 2.0, (wa + wc + root) / 2.0};
    };
    const auto [e1m, e1p] = pair(g1_sq);
    const auto [e2m, e2p] = pair(g2_sq);
    return {e1m, e1p, e2m, e2p};
}

inline PolaritonSpectrum polariton_eigenvalues(const SystemParams& p, const AtomChain& chain) {
    return polariton_eigenvalues(p, chain.size(), structure_factor(chain).magnitude());
}

/// Dense (N+2) x (N+2) single-excitation matrix in the same reporting frame
/// as polariton_eigenvalues. Its four cavity-coupled eigenvalues reproduce
/// the closed-form spectrum; the other N-2 equal the bare atomic pole.
inline MatrixXc single_excitation_hamiltonian(const SystemParams& p, const AtomChain& chain) {
    const int n = chain.size();
    const MatrixXc g_mat = coupling_matrix(p, chain);
    MatrixXc h = MatrixXc::Zero(n + 2, n + 2);
    const Complex wc{0.0, -p.kappa() / 2};
    const Complex wa{-p.delta_ac, -p.gamma / 2};
    h(0, 0) = h(1, 1) = wc;
    for (int i = 0; i < n; ++i) h(2 + i, 2 + i) = wa;
    h.block(0, 2, 2, n) = g_mat;
    h.block(2, 0, n, 2) = g_mat.adjoint();
    return h;
}

/// Dispersive-regime shift and linewidth estimates for the two collective
/// cavity modes. The mode coupled with g sqrt(N+|S|) ("bright" at |S| = N)
/// is shifted by g^2 (N+|S|)/Delta_ac and broadened by the free-space
/// scattering of the atoms at its antinodes; the g sqrt(N-|S|) mode loses
/// both shift and broadening as |S| -> N.
struct DispersiveEstimates {
    Scalar bright_shift = 0.0;
    Scalar bright_linewidth = 0.0;
    Scalar dark_shift = 0.0;
    Scalar dark_linewidth = 0.0;
};

inline DispersiveEstimates dispersive_estimates(const SystemParams& p, int n_atoms,
                                                Scalar s_magnitude) {
    if (p.delta_ac == 0.0)
        throw std::invalid_argument("dispersive_estimates: requires delta_ac != 0");
    const Scalar g2 = p.g * p.g;
    const Scalar denom = p.delta_ac * p.delta_ac + p.gamma * p.gamma / 4;
    DispersiveEstimates d;
    d.bright_shift = g2 * (n_atoms + s_magnitude) / p.delta_ac;
    d.bright_linewidth = p.kappa() + (n_atoms + s_magnitude) * g2 * p.gamma / denom;
    d.dark_shift = g2 * (n_atoms - s_magnitude) / p.delta_ac;
    d.dark_linewidth = p.kappa() + (n_atoms - s_magnitude) * g2 * p.gamma / denom;
    return d;
}

}  // namespace ringcav
