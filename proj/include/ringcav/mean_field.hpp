#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ringcav/chain.hpp"
#include "ringcav/system_params.hpp"
#include "ringcav/types.hpp"

namespace ringcav {

/// Mean-field state of the cavity amplitudes and per-atom Bloch variables.
/// Second-order correlators are closed at first order, <s^z a> -> <s^z><a>
/// and <s^+ a> -> <s^+><a>; the closure is validated against the quantum
/// oracle at small N.
struct MeanFieldState {
    Complex a_plus{0.0, 0.0};
    Complex a_minus{0.0, 0.0};
    VectorXc sigma_minus;
    VectorXd sigma_z;

    int n_atoms() const { return static_cast<int>(sigma_z.size()); }

    /// All atoms in the ground state, empty cavity.
    static MeanFieldState vacuum(int n_atoms) {
        MeanFieldState st;
        st.sigma_minus = VectorXc::Zero(n_atoms);
        st.sigma_z = VectorXd::Constant(n_atoms, -1.0);
        return st;
    }
};

/// Time derivative of the mean-field equations of motion.
MeanFieldState mean_field_rhs(const MeanFieldState& state, const SystemParams& p,
                              const AtomChain& chain);

struct Trajectory {
    std::vector<Scalar> times;
    std::vector<MeanFieldState> states;
};

struct BlochBoundViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive integration up to t_end with local error control at the given
/// tolerance. Every sampled state is checked against the Bloch-sphere
/// bounds (|s^z| <= 1, |s^-|^2 <= (1 - s^z s^z)/4, slack 1e-9).
Trajectory integrate(const MeanFieldState& initial, const SystemParams& p,
                     const AtomChain& chain, Scalar t_end, Scalar tolerance);

struct SteadyStateResult {
    MeanFieldState state;
    Scalar residual = 0.0;       // ||rhs|| at the returned state
    Scalar integrated_time = 0.0;
    int newton_iterations = 0;
};

struct ConvergenceError : std::runtime_error {
    Scalar residual;
    ConvergenceError(const std::string& msg, Scalar r) : std::runtime_error(msg), residual(r) {}
};

/// Steady state by vacuum-start time integration (which selects the
/// physical branch) followed by Newton refinement of the rhs residual.
/// Convergence target for the integration phase: ||rhs|| <
/// tolerance * max(epsilon, gamma).
SteadyStateResult find_steady_state(const SystemParams& p, const AtomChain& chain,
                                    Scalar tolerance = 1e-8, Scalar max_time = 1e5);

}  // namespace ringcav
