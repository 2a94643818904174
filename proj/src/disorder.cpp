#include "ringcav/disorder.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ringcav/rng.hpp"
#include "ringcav/routing.hpp"

namespace ringcav {

void DisorderSpec::validate() const {
    if (sigma < 0) throw std::invalid_argument("DisorderSpec: sigma must be >= 0");
    if (samples < 1) throw std::invalid_argument("DisorderSpec: samples must be >= 1");
}

AtomChain sample_chain(const AtomChain& centers, const DisorderSpec& spec,
                       std::uint64_t sample_index) {
    spec.validate();
    if (spec.sigma == 0.0) return centers;
    GaussianSampler gauss(substream(spec.seed, sample_index));
    VectorXd x = centers.positions;
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += spec.sigma * gauss();
    return AtomChain{std::move(x)};
}

namespace {

// Order-independent pairwise reduction; keeps parallel sample evaluation
// reproducible and well conditioned for large sample counts.
Scalar pairwise_sum(const std::vector<Scalar>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        Scalar s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

MonteCarloEstimate reduce(const std::vector<Scalar>& values) {
    const Scalar n = static_cast<Scalar>(values.size());
    const Scalar mean = pairwise_sum(values, 0, values.size()) / n;
    if (values.size() < 2) return {mean, 0.0};
    std::vector<Scalar> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Scalar d = values[i] - mean;
        sq[i] = d * d;
    }
    const Scalar var = pairwise_sum(sq, 0, sq.size()) / (n - 1);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

MonteCarloEstimate mean_structure_factor(int n_atoms, const DisorderSpec& spec) {
    spec.validate();
    if (n_atoms < 1) throw std::invalid_argument("mean_structure_factor: need n_atoms >= 1");
    const AtomChain centers = grid_chain(n_atoms);
    std::vector<Scalar> ratios(spec.samples);
    for (int m = 0; m < spec.samples; ++m)
        ratios[m] = structure_factor(sample_chain(centers, spec, m)).magnitude() / n_atoms;
    return reduce(ratios);
}

DegradedTuningRange degraded_tuning_range(const SystemParams& p, int n_atoms,
                                          const DisorderSpec& spec) {
    spec.validate();
    if (p.delta != 0.0)
        throw std::invalid_argument("degraded_tuning_range: router operating point is delta = 0");

    const AtomChain centers = grid_chain(n_atoms);
    std::vector<Scalar> ratios(spec.samples);
    std::vector<Scalar> n_out(spec.samples);
    for (int m = 0; m < spec.samples; ++m) {
        const AtomChain sample = sample_chain(centers, spec, m);
        const Scalar s_mag = structure_factor(sample).magnitude();
        ratios[m] = s_mag / n_atoms;
        n_out[m] = routing_metrics(p, n_atoms, Complex(s_mag, 0.0)).n_out_minus;
    }

    DegradedTuningRange out;
    out.mean_s_ratio = reduce(ratios);
    out.w_from_mean_s =
        routing_metrics(p, n_atoms, Complex(out.mean_s_ratio.mean * n_atoms, 0.0)).n_out_minus;
    out.w_monte_carlo = reduce(n_out).mean;
    return out;
}

Scalar thermal_position_sigma(Scalar mass_kg, Scalar trap_omega_rad_s, Scalar temperature_k) {
    constexpr Scalar hbar = 1.054571817e-34;  // J s
    constexpr Scalar k_b = 1.380649e-23;      // J / K
    const Scalar zero_point_var = hbar / (2 * mass_kg * trap_omega_rad_s);
    const Scalar x = hbar * trap_omega_rad_s / (2 * k_b * temperature_k);
    return std::sqrt(zero_point_var / std::tanh(x));
}

}  // namespace ringcav
