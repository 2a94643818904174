#pragma once

#include <stdexcept>

#include "ringcav/types.hpp"

namespace ringcav {

/// Rates and detunings of the driven ring cavity, in units of gamma.
///
/// delta    = omega_p - omega_c  (drive relative to the cavity)
/// delta_ac = omega_c - omega_a  (cavity relative to the atoms)
/// The atom-drive detuning Delta = omega_p - omega_a = delta + delta_ac is
/// derived. kappa_in is the input-mirror decay; kappa_other collects the
/// decay of all remaining mirrors, so the total is kappa = kappa_in +
/// kappa_other. The drive amplitude epsilon is real and nonnegative; its
/// global phase is unobservable in every reported quantity.
struct SystemParams {
    Scalar g = 0.5;
    Scalar kappa_in = 0.1;
    Scalar kappa_other = 0.0;
    Scalar gamma = 1.0;
    Scalar epsilon = 1e-3;
    Scalar delta = 0.0;
    Scalar delta_ac = 0.0;

    Scalar kappa() const { return kappa_in + kappa_other; }
    Scalar delta_a() const { return delta + delta_ac; }

    /// Complex detuning shorthands: Delta + i*gamma/2 and delta + i*kappa/2.
    Complex atom_detuning_c() const { return {delta_a(), gamma / 2}; }
    Complex cavity_detuning_c() const { return {delta, kappa() / 2}; }

    Scalar cooperativity() const { return 4 * g * g / (kappa() * gamma); }
    Scalar collective_cooperativity(int n_atoms) const {
        return n_atoms * cooperativity();
    }

    void validate() const {
        if (g < 0) throw std::invalid_argument("SystemParams: g must be >= 0");
        if (kappa_in < 0 || kappa_other < 0)
            throw std::invalid_argument("SystemParams: mirror decay rates must be >= 0");
        if (kappa_in + kappa_other <= 0)
            throw std::invalid_argument("SystemParams: total kappa must be > 0");
        if (gamma < 0) throw std::invalid_argument("SystemParams: gamma must be >= 0");
        if (epsilon < 0) throw std::invalid_argument("SystemParams: epsilon must be >= 0");
    }
};

}  // namespace ringcav
