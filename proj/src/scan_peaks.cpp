#include <algorithm>
#include <cmath>

#include "ringcav/scan.hpp"

namespace ringcav {

namespace {

// Vertex of the parabola through three equally spaced samples around i.
void refine_parabolic(const std::vector<Scalar>& x, const std::vector<Scalar>& y,
                      std::size_t i, Scalar& center, Scalar& height) {
    const Scalar d1 = y[i] - y[i - 1];
    const Scalar d2 = y[i] - y[i + 1];
    const Scalar denom = d1 + d2;
    if (denom <= 0) {
        center = x[i];
        height = y[i];
        return;
    }
    const Scalar shift = 0.5 * (d1 - d2) / denom;
    const Scalar h = x[i + 1] - x[i];
    center = x[i] + shift * h;
    height = y[i] + 0.25 * (d1 - d2) * shift;
}

// Walks outward from the peak to the first half-height crossing and
// linearly interpolates it; returns NaN when the scan window ends first.
Scalar half_crossing(const std::vector<Scalar>& x, const std::vector<Scalar>& y,
                     std::size_t peak, Scalar half, int direction) {
    std::size_t i = peak;
    while (true) {
        const std::size_t j = i + direction;
        if (j >= y.size()) return std::numeric_limits<Scalar>::quiet_NaN();
        if (y[j] <= half) {
            const Scalar frac = (y[i] - half) / (y[i] - y[j]);
            return x[i] + frac * (x[j] - x[i]);
        }
        if (y[j] > y[i] && std::abs(static_cast<long>(j) - static_cast<long>(peak)) > 1)
            return std::numeric_limits<Scalar>::quiet_NaN();  // ran into the next peak
        i = j;
    }
}

std::string nearest_label(const PolaritonSpectrum& sp, Scalar center) {
    static const char* names[4] = {"E1-", "E1+", "E2-", "E2+"};
    const auto eigs = sp.all();
    int best = 0;
    Scalar best_d = std::abs(center - eigs[0].real());
    for (int k = 1; k < 4; ++k) {
        const Scalar d = std::abs(center - eigs[k].real());
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return names[best];
}

}  // namespace

PeakReport extract_peaks(const std::vector<Scalar>& axis, const std::vector<Scalar>& values,
                         const PolaritonSpectrum& reference, Scalar prominence) {
    PeakReport report;
    if (axis.size() != values.size() || axis.size() < 3) {
        report.diagnostic = "scan too short";
        return report;
    }

    const Scalar global_max = *std::max_element(values.begin(), values.end());
    if (!(global_max > 0)) {
        report.diagnostic = "no positive signal";
        return report;
    }
    const Scalar threshold = prominence * global_max;

    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        if (values[i] < threshold) continue;

        Peak pk;
        refine_parabolic(axis, values, i, pk.center, pk.height);
        const Scalar half = pk.height / 2;
        const Scalar left = half_crossing(axis, values, i, half, -1);
        const Scalar right = half_crossing(axis, values, i, half, +1);
        if (std::isnan(left) || std::isnan(right)) {
            report.diagnostic += "peak near " + std::to_string(pk.center) +
                                 " lacks resolved half-height crossings; ";
            continue;
        }
        pk.fwhm = right - left;
        const Scalar local_step = axis[i + 1] - axis[i];
        if (pk.fwhm < 10 * local_step)
            report.diagnostic += "peak near " + std::to_string(pk.center) +
                                 " has fewer than 10 points per FWHM; ";
        pk.label = nearest_label(reference, pk.center);
        report.peaks.push_back(pk);
    }

    std::sort(report.peaks.begin(), report.peaks.end(),
              [](const Peak& a, const Peak& b) { return a.center < b.center; });
    if (report.peaks.empty() && report.diagnostic.empty())
        report.diagnostic = "no peaks above prominence threshold";
    return report;
}

}  // namespace ringcav
