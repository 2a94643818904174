#pragma once

#include <optional>
#include <vector>

#include "ringcav/weak_drive.hpp"

namespace ringcav {

/// Steady-state output amplitudes from the input-output relation
/// a_in + a_out = sqrt(kappa_in) a, with the drive convention
/// <a_+^in> = -i eps, <a_-^in> = 0.
struct OutputFields {
    Complex a_out_plus{0.0, 0.0};
    Complex a_out_minus{0.0, 0.0};
};

inline OutputFields output_fields(const SystemParams& p, int n_atoms, Complex s_factor) {
    const IntracavityFields f = steady_state_fields(p, n_atoms, s_factor);
    const Scalar root_kin = std::sqrt(p.kappa_in);
    return {root_kin * f.a_plus + im * p.epsilon, root_kin * f.a_minus};
}

inline OutputFields output_fields(const SystemParams& p, const AtomChain& chain) {
    return output_fields(p, chain.size(), structure_factor(chain).value);
}

/// Output photon numbers normalized to the input photon number and output
/// phases relative to the input mode. A phase is absent (not zero) when the
/// corresponding amplitude vanishes below 1e-14 * eps.
struct RoutingMetrics {
    Scalar n_out_plus = 0.0;
    Scalar n_out_minus = 0.0;
    Scalar n_out_tot = 0.0;
    std::optional<Scalar> phi_plus;
    std::optional<Scalar> phi_minus;
    std::optional<Scalar> relative_phase;
};

/// Metrics from precomputed output amplitudes (any engine may supply them).
inline RoutingMetrics routing_metrics_from_outputs(const OutputFields& out,
                                                   const SystemParams& p) {
    if (p.epsilon <= 0)
        throw std::invalid_argument("routing_metrics: epsilon must be > 0");
    const Scalar eps2 = p.epsilon * p.epsilon;
    RoutingMetrics m;
    m.n_out_plus = std::norm(out.a_out_plus) / eps2;
    m.n_out_minus = std::norm(out.a_out_minus) / eps2;
    m.n_out_tot = m.n_out_plus + m.n_out_minus;

    const Scalar floor = 1e-14 * p.epsilon;
    const Scalar arg_in = std::arg(-im * p.epsilon);
    if (std::abs(out.a_out_plus) >= floor)
        m.phi_plus = wrap_phase(std::arg(out.a_out_plus) - arg_in);
    if (std::abs(out.a_out_minus) >= floor)
        m.phi_minus = wrap_phase(std::arg(out.a_out_minus) - arg_in);
    if (m.phi_plus && m.phi_minus)
        m.relative_phase = wrap_phase(*m.phi_plus - *m.phi_minus);
    return m;
}

inline RoutingMetrics routing_metrics(const SystemParams& p, int n_atoms, Complex s_factor) {
    return routing_metrics_from_outputs(output_fields(p, n_atoms, s_factor), p);
}

inline RoutingMetrics routing_metrics(const SystemParams& p, const AtomChain& chain) {
    return routing_metrics(p, chain.size(), structure_factor(chain).value);
}

/// Worst-case photon loss 1 - n_tot^out over |S| in [0, N] at the router
/// operating point delta = 0, located by a 256-point grid plus
/// golden-section refinement.
struct LossMaximum {
    Scalar n_loss = 0.0;
    Scalar argmax_s = 0.0;
};
LossMaximum max_photon_loss_numeric(const SystemParams& p, int n_atoms);

/// Closed-form maximum photon loss as a function of the collective
/// cooperativity NC and Delta/gamma (valid at kappa_in = kappa, delta = 0).
Scalar max_photon_loss_analytic(Scalar nc, Scalar delta_over_gamma);

/// Branch boundary of the closed-form loss: the interior-maximum expression
/// applies for NC > 2 and 2|Delta|/gamma < beta(NC).
inline Scalar loss_branch_beta(Scalar nc) {
    return (nc > 2) ? (nc + 1) * std::sqrt((nc - 2) / (3 * nc + 2)) : 0.0;
}

/// Tuning range W = max over |S| of n_-^out, reached at |S| = N.
inline Scalar tuning_range_analytic(Scalar nc, Scalar delta_over_gamma) {
    const Scalar x4 = 4 * delta_over_gamma * delta_over_gamma;
    return 4 * nc * nc / ((2 * nc + 1) * (2 * nc + 1) + x4);
}
Scalar tuning_range_numeric(const SystemParams& p, int n_atoms);

struct RouterFigures {
    Scalar n_loss = 0.0;
    Scalar tuning_range = 0.0;
    Scalar argmax_s_loss = 0.0;
};
RouterFigures router_figures(const SystemParams& p, int n_atoms);

/// Region of (NC, Delta/gamma) where the router reaches W >= target_w with
/// loss <= target_loss, and the smallest NC admitting such a detuning.
struct FeasibleRegion {
    bool feasible = false;
    Scalar nc_min = 0.0;
    Scalar min_detuning = 0.0;  // NC -> inf detuning floor for the loss target
    struct BoundaryPoint {
        Scalar nc, delta_lo, delta_hi;
    };
    std::vector<BoundaryPoint> boundary;
};
FeasibleRegion feasible_region(Scalar target_w, Scalar target_loss);

/// Numeric tuning range and maximum loss as the input-mirror share
/// kappa_in/kappa varies at fixed total kappa. The closed forms above hold
/// only at kappa_in = kappa.
struct MirrorRatioPoint {
    Scalar ratio = 0.0;
    Scalar tuning_range = 0.0;
    Scalar n_loss = 0.0;
};
std::vector<MirrorRatioPoint> mirror_ratio_scan(const SystemParams& base, int n_atoms,
                                                int n_points = 51);

}  // namespace ringcav
