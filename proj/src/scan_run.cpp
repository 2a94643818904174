#include <atomic>
#include <cmath>
#include <thread>

#include "ringcav/mean_field.hpp"
#include "ringcav/quantum_oracle.hpp"
#include "ringcav/routing.hpp"
#include "ringcav/scan.hpp"
#include "ringcav/weak_drive.hpp"

namespace ringcav {

namespace {

constexpr Scalar nan_cell = std::numeric_limits<Scalar>::quiet_NaN();

std::string axis_column(const std::string& parameter) {
    if (parameter == "delta" || parameter == "delta_ac") return parameter + "[gamma]";
    if (parameter == "arg_s") return "arg_s[rad]";
    if (parameter == "sigma") return "sigma[lambda]";
    return parameter + "[1]";
}

enum class Family { intracavity, output, phase, eigenvalues, router_w, router_loss, disorder };

Family family_of(Quantity q) {
    switch (q) {
        case Quantity::n_plus:
        case Quantity::n_minus:
        case Quantity::n_tot:
            return Family::intracavity;
        case Quantity::n_out_plus:
        case Quantity::n_out_minus:
        case Quantity::n_out_tot:
            return Family::output;
        case Quantity::phi_plus:
        case Quantity::phi_minus:
        case Quantity::relative_phase:
            return Family::phase;
        case Quantity::eigenvalues:
            return Family::eigenvalues;
        case Quantity::w:
            return Family::router_w;
        case Quantity::n_loss:
            return Family::router_loss;
        case Quantity::mean_s:
            return Family::disorder;
    }
    throw std::logic_error("family_of: unhandled quantity");
}

std::vector<std::string> value_columns(Family f) {
    switch (f) {
        case Family::intracavity:
            return {"n_plus[1]", "n_minus[1]", "n_tot[1]"};
        case Family::output:
            return {"n_out_plus[1]", "n_out_minus[1]", "n_out_tot[1]"};
        case Family::phase:
            return {"phi_plus[rad]", "phi_minus[rad]", "relative_phase[rad]"};
        case Family::eigenvalues:
            return {"e1_minus_re[gamma]", "e1_minus_im[gamma]", "e1_plus_re[gamma]",
                    "e1_plus_im[gamma]",  "e2_minus_re[gamma]", "e2_minus_im[gamma]",
                    "e2_plus_re[gamma]",  "e2_plus_im[gamma]"};
        case Family::router_w:
            return {"w[1]"};
        case Family::router_loss:
            return {"n_loss[1]"};
        case Family::disorder:
            return {"mean_s[1]", "mean_s_stderr[1]"};
    }
    throw std::logic_error("value_columns: unhandled family");
}

// One grid point after axis substitution.
struct Point {
    SystemParams params;
    int n_atoms = 0;
    Scalar s_magnitude = 0.0;
    Scalar arg_s = 0.0;
    std::optional<std::vector<Scalar>> positions;
    std::optional<Scalar> nc_override;
    Scalar sigma = 0.0;

    Complex s_factor() const { return std::polar(s_magnitude, arg_s); }
};

void apply_axis(Point& pt, const std::string& parameter, Scalar value) {
    if (parameter == "delta") {
        pt.params.delta = value;
    } else if (parameter == "delta_ac") {
        pt.params.delta_ac = value;
    } else if (parameter == "s_magnitude") {
        pt.s_magnitude = value;
        pt.positions.reset();
    } else if (parameter == "arg_s") {
        pt.arg_s = value;
    } else if (parameter == "nc") {
        pt.nc_override = value;
    } else if (parameter == "kappa_in_ratio") {
        if (value < 0 || value > 1)
            throw std::invalid_argument("kappa_in_ratio outside [0, 1]");
        const Scalar total = pt.params.kappa();
        pt.params.kappa_in = value * total;
        pt.params.kappa_other = total - pt.params.kappa_in;
    } else if (parameter == "sigma") {
        pt.sigma = value;
    } else if (parameter == "n_atoms") {
        const int n = static_cast<int>(std::lround(value));
        if (n < 0) throw std::invalid_argument("n_atoms axis must be >= 0");
        if (pt.s_magnitude > n) pt.s_magnitude = n;  // keep |S| <= N along the sweep
        pt.n_atoms = n;
        pt.positions.reset();
    } else {
        throw std::invalid_argument("unknown axis parameter: " + parameter);
    }
}

// Realize the requested NC by adjusting g at fixed N, kappa, gamma.
void resolve_nc(Point& pt) {
    if (!pt.nc_override) return;
    if (pt.n_atoms < 1) throw std::invalid_argument("nc axis needs atoms in the chain");
    pt.params.g =
        std::sqrt(*pt.nc_override * pt.params.kappa() * pt.params.gamma / (4 * pt.n_atoms));
}

// Physical chain for the engines that need positions, matching (N, |S|, arg S).
AtomChain realize_chain(const Point& pt) {
    if (pt.positions) {
        VectorXd x(pt.positions->size());
        for (std::size_t i = 0; i < pt.positions->size(); ++i) x[i] = (*pt.positions)[i];
        return AtomChain{x};
    }
    const int n = pt.n_atoms;
    AtomChain chain;
    if (std::abs(pt.s_magnitude - n) < 1e-12 * std::max(1, n)) {
        chain = grid_chain(n);
    } else {
        chain = chain_with_structure(n, pt.s_magnitude);  // needs even n
    }
    return translate_chain(chain, pt.arg_s / (4 * pi));
}

struct EngineAmplitudes {
    Complex a_plus, a_minus;
};

EngineAmplitudes amplitudes_at(const Point& pt, const ScanConfig& cfg) {
    switch (cfg.engine) {
        case Engine::analytic: {
            const IntracavityFields f =
                steady_state_fields(pt.params, pt.n_atoms, pt.s_factor());
            return {f.a_plus, f.a_minus};
        }
        case Engine::meanfield: {
            const AtomChain chain = realize_chain(pt);
            const SteadyStateResult ss = find_steady_state(pt.params, chain);
            return {ss.state.a_plus, ss.state.a_minus};
        }
        case Engine::oracle: {
            const AtomChain chain = realize_chain(pt);
            TruncatedHilbert h;
            h.n_atoms = chain.size();
            h.fock_cutoff = cfg.oracle_cutoff;
            const OracleExpectations e =
                steady_state_expectations_converged(pt.params, chain, h);
            return {e.a_plus, e.a_minus};
        }
    }
    throw std::logic_error("amplitudes_at: unhandled engine");
}

void evaluate_point(const Point& pt, const ScanConfig& cfg, Family family,
                    std::vector<Scalar>& cells, std::string& error) {
    switch (family) {
        case Family::intracavity: {
            const auto [a_plus, a_minus] = amplitudes_at(pt, cfg);
            IntracavityFields f;
            f.a_plus = a_plus;
            f.a_minus = a_minus;
            const PhotonNumbers n = normalized_photon_numbers(f, pt.params);
            cells = {n.n_plus, n.n_minus, n.total()};
            return;
        }
        case Family::output:
        case Family::phase: {
            const auto [a_plus, a_minus] = amplitudes_at(pt, cfg);
            const Scalar root_kin = std::sqrt(pt.params.kappa_in);
            const OutputFields out{root_kin * a_plus + im * pt.params.epsilon,
                                   root_kin * a_minus};
            const RoutingMetrics m = routing_metrics_from_outputs(out, pt.params);
            if (family == Family::output) {
                cells = {m.n_out_plus, m.n_out_minus, m.n_out_tot};
            } else {
                cells = {m.phi_plus.value_or(nan_cell), m.phi_minus.value_or(nan_cell),
                         m.relative_phase.value_or(nan_cell)};
                if (!m.phi_plus || !m.phi_minus) error = "undefined_phase";
            }
            return;
        }
        case Family::eigenvalues: {
            const PolaritonSpectrum sp =
                polariton_eigenvalues(pt.params, pt.n_atoms, pt.s_magnitude);
            cells.clear();
            for (const Complex& e : sp.all()) {
                cells.push_back(e.real());
                cells.push_back(e.imag());
            }
            return;
        }
        case Family::router_w:
        case Family::router_loss: {
            const Scalar nc = pt.nc_override
                                  ? *pt.nc_override
                                  : pt.params.collective_cooperativity(pt.n_atoms);
            const Scalar dg = std::abs(pt.params.delta_a()) / pt.params.gamma;
            cells = {family == Family::router_w ? tuning_range_analytic(nc, dg)
                                                : max_photon_loss_analytic(nc, dg)};
            return;
        }
        case Family::disorder: {
            DisorderSpec spec;
            spec.sigma = pt.sigma;
            spec.samples = cfg.samples;
            spec.seed = cfg.seed;
            const MonteCarloEstimate est = mean_structure_factor(pt.n_atoms, spec);
            cells = {est.mean, est.std_error};
            return;
        }
    }
    throw std::logic_error("evaluate_point: unhandled family");
}

std::vector<Scalar> linspace(const AxisSpec& ax) {
    std::vector<Scalar> v(ax.points);
    for (int i = 0; i < ax.points; ++i)
        v[i] = ax.start + (ax.stop - ax.start) * i / (ax.points - 1);
    return v;
}

}  // namespace

ResultTable run_scan(const ScanConfig& cfg, int threads) {
    cfg.validate();
    const Family family = family_of(cfg.quantity);

    ResultTable table;
    table.columns.push_back(axis_column(cfg.axis1.parameter));
    if (cfg.axis2) table.columns.push_back(axis_column(cfg.axis2->parameter));
    for (const std::string& c : value_columns(family)) table.columns.push_back(c);

    const std::vector<Scalar> grid1 = linspace(cfg.axis1);
    const std::vector<Scalar> grid2 = cfg.axis2 ? linspace(*cfg.axis2) : std::vector<Scalar>{};
    const std::size_t n_rows = grid1.size() * std::max<std::size_t>(grid2.size(), 1);
    const std::size_t n_values = value_columns(family).size();

    table.rows.assign(n_rows, {});
    table.row_errors.assign(n_rows, "");

    const auto work = [&](std::size_t row) {
        const std::size_t i1 = cfg.axis2 ? row / grid2.size() : row;
        const std::size_t i2 = cfg.axis2 ? row % grid2.size() : 0;

        std::vector<Scalar>& cells = table.rows[row];
        cells.assign(table.columns.size(), nan_cell);
        cells[0] = grid1[i1];
        if (cfg.axis2) cells[1] = grid2[i2];

        try {
            Point pt;
            pt.params = cfg.params;
            pt.n_atoms = cfg.chain.n_atoms;
            pt.s_magnitude = cfg.chain.s_magnitude;
            pt.arg_s = cfg.chain.arg_s;
            pt.positions = cfg.chain.positions;
            pt.sigma = cfg.sigma;
            apply_axis(pt, cfg.axis1.parameter, grid1[i1]);
            if (cfg.axis2) apply_axis(pt, cfg.axis2->parameter, grid2[i2]);
            resolve_nc(pt);
            if (pt.s_magnitude > pt.n_atoms)
                throw std::invalid_argument("s_magnitude exceeds n_atoms at this point");

            std::vector<Scalar> values;
            evaluate_point(pt, cfg, family, values, table.row_errors[row]);
            for (std::size_t v = 0; v < n_values; ++v)
                cells[cells.size() - n_values + v] = values[v];
        } catch (const std::exception& e) {
            table.row_errors[row] = e.what();
        }
    };

    if (threads <= 1) {
        for (std::size_t row = 0; row < n_rows; ++row) work(row);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(threads, static_cast<int>(n_rows));
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t row = next.fetch_add(1); row < n_rows;
                     row = next.fetch_add(1))
                    work(row);
            });
        for (std::thread& t : pool) t.join();
    }
    return table;
}

}  // namespace ringcav
