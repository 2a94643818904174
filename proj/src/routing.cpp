#include "ringcav/routing.hpp"

#include <cmath>

#include "ringcav/optim.hpp"

namespace ringcav {

namespace {

void require_operating_point(const SystemParams& p, const char* who) {
    if (p.delta != 0.0)
        throw std::invalid_argument(std::string(who) + ": router figures are defined at delta = 0");
}

Scalar loss_at(const SystemParams& p, int n_atoms, Scalar s) {
    const RoutingMetrics m = routing_metrics(p, n_atoms, Complex(s, 0.0));
    return 1.0 - m.n_out_tot;
}

}  // namespace

LossMaximum max_photon_loss_numeric(const SystemParams& p, int n_atoms) {
    require_operating_point(p, "max_photon_loss_numeric");
    const auto best = grid_then_golden_maximize(
        [&](Scalar s) { return loss_at(p, n_atoms, s); }, 0.0, static_cast<Scalar>(n_atoms),
        256, 1e-12 * n_atoms);
    return {best.value, best.arg};
}

Scalar max_photon_loss_analytic(Scalar nc, Scalar delta_over_gamma) {
    if (nc < 0) throw std::invalid_argument("max_photon_loss_analytic: nc must be >= 0");
    const Scalar ad = std::abs(delta_over_gamma);
    const Scalar x4 = 4 * ad * ad;  // 4 Delta^2 / gamma^2

    if (nc > 2 && 2 * ad < loss_branch_beta(nc)) {
        if (ad == 0.0) {
            // Delta -> 0 limit of the interior-maximum expression.
            const Scalar n1 = nc + 1;
            return 1 / n1 + 0.5 * (1 + 1 / (n1 * n1));
        }
        const Scalar n1 = nc + 1;
        return 1 / n1 + std::sqrt((1 + x4) * (n1 * n1 + x4)) / (n1 * x4) - 1 / x4;
    }
    return 4 * nc / ((nc + 1) * (nc + 1) + x4);
}

Scalar tuning_range_numeric(const SystemParams& p, int n_atoms) {
    require_operating_point(p, "tuning_range_numeric");
    return routing_metrics(p, n_atoms, Complex(static_cast<Scalar>(n_atoms), 0.0)).n_out_minus;
}

RouterFigures router_figures(const SystemParams& p, int n_atoms) {
    const LossMaximum loss = max_photon_loss_numeric(p, n_atoms);
    return {loss.n_loss, tuning_range_numeric(p, n_atoms), loss.argmax_s};
}

namespace {

// Largest Delta/gamma keeping W >= target at this NC, or no value if even
// Delta = 0 misses the target.
std::optional<Scalar> max_detuning_for_w(Scalar nc, Scalar target_w) {
    const Scalar num = 4 * nc * nc / target_w - (2 * nc + 1) * (2 * nc + 1);
    if (num < 0) return std::nullopt;
    return std::sqrt(num) / 2;
}

// Smallest Delta/gamma reaching loss <= target at this NC (loss decreases
// with detuning), by bisection on a bracketing interval.
std::optional<Scalar> min_detuning_for_loss(Scalar nc, Scalar target_loss) {
    if (max_photon_loss_analytic(nc, 0.0) <= target_loss) return 0.0;
    Scalar lo = 0.0, hi = 1.0;
    while (max_photon_loss_analytic(nc, hi) > target_loss) {
        hi *= 2;
        if (hi > 1e12) return std::nullopt;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
        const Scalar mid = (lo + hi) / 2;
        (max_photon_loss_analytic(nc, mid) > target_loss ? lo : hi) = mid;
    }
    return hi;
}

bool nc_feasible(Scalar nc, Scalar target_w, Scalar target_loss, Scalar* d_lo = nullptr,
                 Scalar* d_hi = nullptr) {
    const auto hi = max_detuning_for_w(nc, target_w);
    if (!hi) return false;
    const auto lo = min_detuning_for_loss(nc, target_loss);
    if (!lo || *lo > *hi) return false;
    if (d_lo) *d_lo = *lo;
    if (d_hi) *d_hi = *hi;
    return true;
}

}  // namespace

FeasibleRegion feasible_region(Scalar target_w, Scalar target_loss) {
    if (!(target_w > 0 && target_w < 1) || !(target_loss > 0 && target_loss < 1))
        throw std::invalid_argument("feasible_region: targets must lie in (0, 1)");

    FeasibleRegion region;
    if (target_loss < 0.5) {
        const Scalar u = 1 / target_loss - 1;
        region.min_detuning = std::sqrt((u * u - 1) / 4);
    }

    const Scalar nc_lo_grid = 0.5, nc_hi_grid = 1e6;
    const int grid = 241;
    Scalar prev_nc = nc_lo_grid;
    Scalar first_feasible = -1;
    for (int i = 0; i < grid; ++i) {
        const Scalar nc =
            nc_lo_grid * std::pow(nc_hi_grid / nc_lo_grid, Scalar(i) / (grid - 1));
        if (nc_feasible(nc, target_w, target_loss)) {
            first_feasible = nc;
            break;
        }
        prev_nc = nc;
    }
    if (first_feasible < 0) return region;  // infeasible within the searched range

    // Bisect to 3 significant figures between the last infeasible grid
    // point and the first feasible one.
    Scalar lo = prev_nc, hi = first_feasible;
    while ((hi - lo) > 5e-4 * hi) {
        const Scalar mid = std::sqrt(lo * hi);
        (nc_feasible(mid, target_w, target_loss) ? hi : lo) = mid;
    }
    region.feasible = true;
    region.nc_min = hi;

    const int boundary_points = 41;
    for (int i = 0; i < boundary_points; ++i) {
        const Scalar nc = hi * std::pow(nc_hi_grid / hi, Scalar(i) / (boundary_points - 1));
        Scalar d_lo = 0, d_hi = 0;
        if (nc_feasible(nc, target_w, target_loss, &d_lo, &d_hi))
            region.boundary.push_back({nc, d_lo, d_hi});
    }
    return region;
}

std::vector<MirrorRatioPoint> mirror_ratio_scan(const SystemParams& base, int n_atoms,
                                                int n_points) {
    require_operating_point(base, "mirror_ratio_scan");
    if (n_points < 2) throw std::invalid_argument("mirror_ratio_scan: need >= 2 points");

    const Scalar kappa_total = base.kappa();
    std::vector<MirrorRatioPoint> out;
    out.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const Scalar ratio = Scalar(i) / (n_points - 1);
        SystemParams p = base;
        p.kappa_in = ratio * kappa_total;
        p.kappa_other = kappa_total - p.kappa_in;
        MirrorRatioPoint pt;
        pt.ratio = ratio;
        if (ratio == 0.0) {
            // Nothing couples in: the input reflects without loss.
            pt.tuning_range = 0.0;
            pt.n_loss = 0.0;
        } else {
            pt.tuning_range = tuning_range_numeric(p, n_atoms);
            pt.n_loss = max_photon_loss_numeric(p, n_atoms).n_loss;
        }
        out.push_back(pt);
    }
    return out;
}

}  // namespace ringcav
