#pragma once

#include <cmath>
#include <functional>

#include "ringcav/types.hpp"

namespace ringcav {

struct ScalarMaximum {
    Scalar arg = 0.0;
    Scalar value = 0.0;
};

/// Golden-section refinement of a maximum inside [lo, hi].
template <class F>
ScalarMaximum golden_section_maximize(F&& f, Scalar lo, Scalar hi, Scalar x_tol = 1e-10,
                                      int max_iter = 200) {
    const Scalar inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    Scalar a = lo, b = hi;
    Scalar c = b - inv_gr * (b - a);
    Scalar d = a + inv_gr * (b - a);
    Scalar fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
    }
    const Scalar x = (a + b) / 2;
    return {x, f(x)};
}

/// Coarse grid scan followed by golden-section refinement around the best
/// grid cell. The grid guards against multimodality.
template <class F>
ScalarMaximum grid_then_golden_maximize(F&& f, Scalar lo, Scalar hi, int grid_points = 256,
                                        Scalar x_tol = 1e-10) {
    int best = 0;
    Scalar best_val = -std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < grid_points; ++i) {
        const Scalar x = lo + (hi - lo) * i / (grid_points - 1);
        const Scalar v = f(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const Scalar cell = (hi - lo) / (grid_points - 1);
    const Scalar a = std::max(lo, lo + (best - 1) * cell);
    const Scalar b = std::min(hi, lo + (best + 1) * cell);
    return golden_section_maximize(f, a, b, x_tol);
}

}  // namespace ringcav
