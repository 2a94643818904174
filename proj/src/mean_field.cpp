#include "ringcav/mean_field.hpp"

#include <Eigen/LU>

#include "ringcav/ode.hpp"

namespace ringcav {

namespace {

VectorXc coupling_phases(const AtomChain& chain) {
    VectorXc ph(chain.size());
    for (int i = 0; i < chain.size(); ++i)
        ph[i] = std::exp(im * (two_pi * chain.positions[i]));
    return ph;
}

int packed_size(int n_atoms) { return 4 + 3 * n_atoms; }

VectorXd pack(const MeanFieldState& st) {
    const int n = st.n_atoms();
    VectorXd y(packed_size(n));
    y[0] = st.a_plus.real();
    y[1] = st.a_plus.imag();
    y[2] = st.a_minus.real();
    y[3] = st.a_minus.imag();
    for (int i = 0; i < n; ++i) {
        y[4 + 2 * i] = st.sigma_minus[i].real();
        y[5 + 2 * i] = st.sigma_minus[i].imag();
        y[4 + 2 * n + i] = st.sigma_z[i];
    }
    return y;
}

MeanFieldState unpack(const VectorXd& y, int n) {
    MeanFieldState st;
    st.a_plus = {y[0], y[1]};
    st.a_minus = {y[2], y[3]};
    st.sigma_minus.resize(n);
    st.sigma_z.resize(n);
    for (int i = 0; i < n; ++i) {
        st.sigma_minus[i] = {y[4 + 2 * i], y[5 + 2 * i]};
        st.sigma_z[i] = y[4 + 2 * n + i];
    }
    return st;
}

void check_bloch_bounds(const MeanFieldState& st, Scalar t) {
    constexpr Scalar slack = 1e-9;
    for (int i = 0; i < st.n_atoms(); ++i) {
        const Scalar sz = st.sigma_z[i];
        if (sz < -1.0 - slack || sz > 1.0 + slack)
            throw BlochBoundViolation("sigma_z outside [-1, 1] at t = " + std::to_string(t));
        if (std::norm(st.sigma_minus[i]) > (1.0 - sz * sz) / 4 + slack)
            throw BlochBoundViolation("|sigma_minus|^2 above Bloch bound at t = " +
                                      std::to_string(t));
    }
}

// rhs on the packed vector, with precomputed coupling phases g_{i,+} = g ph_i.
struct PackedRhs {
    const SystemParams& p;
    const VectorXc& phases;
    int n;

    VectorXd operator()(Scalar, const VectorXd& y) const {
        const Complex a_plus{y[0], y[1]};
        const Complex a_minus{y[2], y[3]};
        const Complex i_delta_kappa{-p.kappa() / 2, p.delta};     // i delta - kappa/2
        const Complex i_Delta_gamma{-p.gamma / 2, p.delta_a()};   // i Delta - gamma/2

        Complex scatter_plus{0.0, 0.0};   // sum_i g_{i,+}^* <s_i^->
        Complex scatter_minus{0.0, 0.0};  // sum_i g_{i,-}^* <s_i^->
        VectorXd dy(y.size());
        for (int i = 0; i < n; ++i) {
            const Complex sm{y[4 + 2 * i], y[5 + 2 * i]};
            const Scalar sz = y[4 + 2 * n + i];
            const Complex g_plus = p.g * phases[i];
            const Complex g_minus = p.g * std::conj(phases[i]);
            scatter_plus += std::conj(g_plus) * sm;
            scatter_minus += std::conj(g_minus) * sm;

            const Complex field = g_plus * a_plus + g_minus * a_minus;
            const Complex dsm = i_Delta_gamma * sm + im * sz * field;
            dy[4 + 2 * i] = dsm.real();
            dy[5 + 2 * i] = dsm.imag();
            dy[4 + 2 * n + i] =
                -p.gamma * (1.0 + sz) + 4.0 * std::imag(std::conj(sm) * field);
        }
        const Complex da_plus = i_delta_kappa * a_plus - im * scatter_plus -
                                im * std::sqrt(p.kappa_in) * p.epsilon;
        const Complex da_minus = i_delta_kappa * a_minus - im * scatter_minus;
        dy[0] = da_plus.real();
        dy[1] = da_plus.imag();
        dy[2] = da_minus.real();
        dy[3] = da_minus.imag();
        return dy;
    }
};

}  // namespace

MeanFieldState mean_field_rhs(const MeanFieldState& state, const SystemParams& p,
                              const AtomChain& chain) {
    p.validate();
    if (state.n_atoms() != chain.size())
        throw std::invalid_argument("mean_field_rhs: state/chain size mismatch");
    const VectorXc phases = coupling_phases(chain);
    const PackedRhs rhs{p, phases, chain.size()};
    return unpack(rhs(0.0, pack(state)), chain.size());
}

Trajectory integrate(const MeanFieldState& initial, const SystemParams& p,
                     const AtomChain& chain, Scalar t_end, Scalar tolerance) {
    p.validate();
    if (!(t_end > 0)) throw std::invalid_argument("integrate: t_end must be > 0");
    if (!(tolerance > 0)) throw std::invalid_argument("integrate: tolerance must be > 0");
    if (initial.n_atoms() != chain.size())
        throw std::invalid_argument("integrate: state/chain size mismatch");

    const VectorXc phases = coupling_phases(chain);
    const PackedRhs rhs{p, phases, chain.size()};
    OdeOptions opt;
    opt.abs_tol = opt.rel_tol = tolerance;

    Trajectory traj;
    VectorXd y = pack(initial);
    integrate_adaptive(rhs, y, 0.0, t_end, opt, [&](Scalar t, const VectorXd& yi) {
        MeanFieldState st = unpack(yi, chain.size());
        check_bloch_bounds(st, t);
        traj.times.push_back(t);
        traj.states.push_back(std::move(st));
    });
    return traj;
}

SteadyStateResult find_steady_state(const SystemParams& p, const AtomChain& chain,
                                    Scalar tolerance, Scalar max_time) {
    p.validate();
    if (p.kappa() <= 0 && p.gamma <= 0)
        throw std::invalid_argument("find_steady_state: needs dissipation");

    const int n = chain.size();
    const VectorXc phases = coupling_phases(chain);
    const PackedRhs rhs{p, phases, n};
    const Scalar scale = std::max(p.epsilon, p.gamma);
    const Scalar target = tolerance * scale;

    // Relax from vacuum in chunks of a few decay times until the residual
    // is small, then let Newton take over.
    const Scalar slowest = std::max(std::min(p.kappa(), p.gamma > 0 ? p.gamma : p.kappa()),
                                    1e-6);
    const Scalar chunk = 20.0 / slowest;

    VectorXd y = pack(MeanFieldState::vacuum(n));
    OdeOptions opt;
    opt.abs_tol = opt.rel_tol = std::min(tolerance, 1e-9) * std::max(scale, Scalar(1));

    Scalar t = 0.0;
    Scalar residual = rhs(0.0, y).norm();
    while (residual > target) {
        if (t >= max_time)
            throw ConvergenceError(
                "find_steady_state: no convergence by t = " + std::to_string(t) +
                    " (residual " + std::to_string(residual) + ")",
                residual);
        integrate_adaptive(rhs, y, t, t + chunk, opt, [](Scalar, const VectorXd&) {});
        t += chunk;
        residual = rhs(0.0, y).norm();
    }

    // Newton polish on F(y) = rhs(y) with a finite-difference Jacobian.
    const int dim = packed_size(n);
    const Scalar newton_target = 1e-12 * scale;
    int newton_iters = 0;
    VectorXd f = rhs(0.0, y);
    for (; newton_iters < 25 && f.norm() > newton_target; ++newton_iters) {
        Eigen::MatrixXd jac(dim, dim);
        for (int j = 0; j < dim; ++j) {
            const Scalar h = 1e-7 * std::max(std::abs(y[j]), 1e-3 * scale);
            VectorXd yp = y, ym = y;
            yp[j] += h;
            ym[j] -= h;
            jac.col(j) = (rhs(0.0, yp) - rhs(0.0, ym)) / (2 * h);
        }
        const VectorXd dy = jac.partialPivLu().solve(-f);
        Scalar damping = 1.0;
        VectorXd y_next = y + dy;
        VectorXd f_next = rhs(0.0, y_next);
        while (f_next.norm() > f.norm() && damping > 1.0 / 64) {
            damping /= 2;
            y_next = y + damping * dy;
            f_next = rhs(0.0, y_next);
        }
        if (f_next.norm() >= f.norm()) break;  // stagnated; keep best
        y = y_next;
        f = f_next;
    }

    MeanFieldState st = unpack(y, n);
    check_bloch_bounds(st, t);
    return {std::move(st), f.norm(), t, newton_iters};
}

}  // namespace ringcav
