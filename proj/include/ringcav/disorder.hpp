#pragma once

#include <cstdint>

#include "ringcav/chain.hpp"
#include "ringcav/system_params.hpp"

namespace ringcav {

/// Quasi-static Gaussian position disorder. sigma is in lambda units; the
/// per-sample substream makes every sample a pure function of (seed, index).
struct DisorderSpec {
    Scalar sigma = 0.0;
    int samples = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Trap-center chain with independent Gaussian displacements added to each
/// position. Deterministic given (spec.seed, sample_index).
AtomChain sample_chain(const AtomChain& centers, const DisorderSpec& spec,
                       std::uint64_t sample_index);

struct MonteCarloEstimate {
    Scalar mean = 0.0;
    Scalar std_error = 0.0;
};

/// Monte Carlo average of |S|/N for trap centers on the lambda/2 grid.
/// For large N the mean approaches exp(-2 k^2 sigma^2).
MonteCarloEstimate mean_structure_factor(int n_atoms, const DisorderSpec& spec);

/// exp(-2 k^2 sigma^2), the large-N limit of mean |S|/N.
inline Scalar structure_factor_decay(Scalar sigma_lambda) {
    const Scalar k_sigma = two_pi * sigma_lambda;
    return std::exp(-2 * k_sigma * k_sigma);
}

/// Router tuning range under disorder at the delta = 0 operating point,
/// both from substituting the mean |S| into the output formula and from a
/// full Monte Carlo average of n_-^out over sampled chains.
struct DegradedTuningRange {
    MonteCarloEstimate mean_s_ratio;
    Scalar w_from_mean_s = 0.0;
    Scalar w_monte_carlo = 0.0;
};
DegradedTuningRange degraded_tuning_range(const SystemParams& p, int n_atoms,
                                          const DisorderSpec& spec);

/// Conversion helpers. The simulator's native disorder input is sigma in
/// lambda units; these document how a lab sigma arises.
inline Scalar sigma_lambda_from_nm(Scalar sigma_nm, Scalar lambda_nm) {
    return sigma_nm / lambda_nm;
}

/// Thermal position spread of a harmonically trapped atom,
/// sigma = sqrt(hbar/(2 m omega) * coth(hbar omega / 2 kB T)), in meters.
/// E.g. rubidium-87 at T = 2.5 uK in a 2 pi x 160 kHz trap gives ~20 nm.
Scalar thermal_position_sigma(Scalar mass_kg, Scalar trap_omega_rad_s, Scalar temperature_k);

}  // namespace ringcav
