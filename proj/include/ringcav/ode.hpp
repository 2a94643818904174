#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ringcav/types.hpp"

namespace ringcav {

struct StepSizeUnderflow : std::runtime_error {
    Scalar time;
    explicit StepSizeUnderflow(Scalar t)
        : std::runtime_error("ODE step size underflow at t = " + std::to_string(t)), time(t) {}
};

struct OdeOptions {
    Scalar abs_tol = 1e-8;
    Scalar rel_tol = 1e-8;
    Scalar initial_step = 0.0;  // 0 -> heuristic from the first derivative
    Scalar min_step = 1e-13;
    long max_steps = 50'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) from t0 to t1.
/// The observer is called with (t, y) at t0 and after every accepted step.
template <class Rhs, class Observer>
void integrate_adaptive(Rhs&& rhs, VectorXd& y, Scalar t0, Scalar t1, const OdeOptions& opt,
                        Observer&& observe) {
    static constexpr Scalar c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr Scalar a21 = 1.0 / 5;
    static constexpr Scalar a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr Scalar a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr Scalar a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr Scalar a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr Scalar b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b (5th order) minus b-hat (4th order), for the embedded error estimate
    static constexpr Scalar e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                            e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                            e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    if (!(t1 > t0)) throw std::invalid_argument("integrate_adaptive: need t1 > t0");

    Scalar t = t0;
    VectorXd k1 = rhs(t, y);
    observe(t, y);

    Scalar h = opt.initial_step;
    if (h <= 0) {
        const Scalar scale = opt.abs_tol + opt.rel_tol * y.cwiseAbs().maxCoeff();
        const Scalar d1 = k1.cwiseAbs().maxCoeff();
        h = (d1 > 0) ? 0.01 * scale / d1 : (t1 - t0) / 100;
        h = std::min(h, t1 - t0);
    }

    VectorXd k2, k3, k4, k5, k6, k7, y5;
    for (long step = 0; step < opt.max_steps; ++step) {
        if (t >= t1) return;
        h = std::min(h, t1 - t);
        if (h < opt.min_step) throw StepSizeUnderflow(t);

        k2 = rhs(t + c2 * h, y + h * (a21 * k1));
        k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(t + h, y5);

        const VectorXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        Scalar err_norm = 0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const Scalar sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const Scalar q = err[i] / sc;
            err_norm += q * q;
        }
        err_norm = std::sqrt(err_norm / static_cast<Scalar>(y.size()));

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);  // first-same-as-last
            observe(t, y);
        }
        const Scalar factor =
            (err_norm > 0) ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    throw std::runtime_error("integrate_adaptive: max step count exceeded");
}

}  // namespace ringcav
