#pragma once

#include <cmath>
#include <stdexcept>

#include "ringcav/types.hpp"

namespace ringcav {

/// Ordered atom positions along the cavity axis, in units of lambda.
/// Positions need not be sorted or distinct; two atoms half a wavelength
/// apart carry identical scattering phases. N = 0 is a valid empty cavity.
struct AtomChain {
    VectorXd positions;

    AtomChain() = default;
    explicit AtomChain(VectorXd x) : positions(std::move(x)) {}

    int size() const { return static_cast<int>(positions.size()); }
};

struct StructureFactor {
    Complex value{0.0, 0.0};

    Scalar magnitude() const { return std::abs(value); }
    Scalar phase() const { return std::arg(value); }
};

/// S = sum_i exp(2 i k x_i) with k x_i = 2 pi x_i. The backscattering
/// between the two traveling modes is controlled entirely by S.
inline StructureFactor structure_factor(const AtomChain& chain) {
    Complex s{0.0, 0.0};
    for (int i = 0; i < chain.size(); ++i)
        s += std::exp(im * (2.0 * two_pi * chain.positions[i]));
    return {s};
}

/// Atoms on the lambda/2 grid, x_i = i/2. Gives |S| = N exactly.
inline AtomChain grid_chain(int n_atoms) {
    if (n_atoms < 0) throw std::invalid_argument("grid_chain: n_atoms must be >= 0");
    VectorXd x(n_atoms);
    for (int i = 0; i < n_atoms; ++i) x[i] = 0.5 * i;
    return AtomChain{std::move(x)};
}

/// Paired chain realizing a prescribed |S|: atoms sit at j/2 -+ d with the
/// pair offset d = arccos(s_target/n_atoms)/(4 pi), so each pair contributes
/// 2 cos(4 pi d) = 2 s_target/n_atoms to S and arg S = 0. Any geometry with
/// the same S gives identical physics; S is a sufficient statistic.
inline AtomChain chain_with_structure(int n_atoms, Scalar s_target) {
    if (n_atoms <= 0 || n_atoms % 2 != 0)
        throw std::invalid_argument("chain_with_structure: n_atoms must be even and positive");
    if (!(s_target >= 0.0) || s_target > n_atoms)
        throw std::invalid_argument("chain_with_structure: s_target must lie in [0, n_atoms]");
    const Scalar d = std::acos(s_target / n_atoms) / (4.0 * pi);
    VectorXd x(n_atoms);
    for (int j = 0; j < n_atoms / 2; ++j) {
        x[2 * j] = 0.5 * j - d;
        x[2 * j + 1] = 0.5 * j + d;
    }
    return AtomChain{std::move(x)};
}

/// Shifts every atom by the same displacement (lambda units). Leaves |S|
/// unchanged and rotates arg S by 4 pi * displacement.
inline AtomChain translate_chain(const AtomChain& chain, Scalar displacement) {
    return AtomChain{chain.positions.array() + displacement};
}

}  // namespace ringcav
