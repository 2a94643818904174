// Command-line front end: parameter sweeps, mode reports, router figures,
// disorder Monte Carlo, and cross-engine validation.
//
// Exit codes: 0 success, 1 runtime/convergence failure, 2 config error,
// 3 acceptance failure (figures/validate).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ringcav/disorder.hpp"
#include "ringcav/mean_field.hpp"
#include "ringcav/quantum_oracle.hpp"
#include "ringcav/routing.hpp"
#include "ringcav/scan.hpp"

using namespace ringcav;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    int threads = 1;
    std::uint64_t seed = 0;
};

struct ParamOpts {
    SystemParams params;
    int n_atoms = 10;
    Scalar s_magnitude = -1.0;
    Scalar s_over_n = -1.0;
    Scalar arg_s = 0.0;

    ParamOpts() { params.delta_ac = 10.0; }

    Scalar resolved_s() const {
        if (s_over_n >= 0) return s_over_n * n_atoms;
        if (s_magnitude >= 0) return s_magnitude;
        return static_cast<Scalar>(n_atoms);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON scan config (replaces other flags)");
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "RNG seed");
}

void add_params(CLI::App* cmd, ParamOpts& o) {
    cmd->add_option("--g", o.params.g, "atom-cavity coupling [gamma]");
    cmd->add_option("--kappa-in", o.params.kappa_in, "input-mirror decay [gamma]");
    cmd->add_option("--kappa-other", o.params.kappa_other, "other-mirror decay [gamma]");
    cmd->add_option("--gamma", o.params.gamma, "atomic decay rate (reference 1)");
    cmd->add_option("--epsilon", o.params.epsilon, "drive amplitude");
    cmd->add_option("--delta", o.params.delta, "drive-cavity detuning [gamma]");
    cmd->add_option("--delta-ac", o.params.delta_ac, "cavity-atom detuning [gamma]");
    cmd->add_option("--n", o.n_atoms, "atom number")->check(CLI::NonNegativeNumber);
    cmd->add_option("--s", o.s_magnitude, "structure factor magnitude |S| (default N)");
    cmd->add_option("--s-over-n", o.s_over_n, "|S|/N (overrides --s)");
    cmd->add_option("--arg-s", o.arg_s, "structure factor phase [rad]");
}

void emit(const ResultTable& table, const CommonOpts& o) {
    const auto write = [&](std::ostream& os) {
        if (o.format == "json")
            write_json(table, os);
        else
            write_csv(table, os);
    };
    if (o.out_path.empty()) {
        write(std::cout);
    } else {
        std::ofstream out(o.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + o.out_path);
        write(out);
    }
}

ResultTable make_table(std::vector<std::string> columns) {
    ResultTable t;
    t.columns = std::move(columns);
    return t;
}

void push_row(ResultTable& t, std::vector<Scalar> cells, std::string error = "") {
    t.rows.push_back(std::move(cells));
    t.row_errors.push_back(std::move(error));
}

constexpr Scalar nan_cell = std::numeric_limits<Scalar>::quiet_NaN();

// ---------------------------------------------------------------- spectrum

struct AxisOpts {
    std::string axis1_param = "delta";
    Scalar axis1_min = -6.0, axis1_max = 6.0;
    int axis1_points = 601;
    std::string axis2_param;
    Scalar axis2_min = -10.0, axis2_max = 10.0;
    int axis2_points = 201;
};

int cmd_spectrum(const CommonOpts& common, const ParamOpts& po, const AxisOpts& ax,
                 const std::string& quantity, const std::string& engine, int oracle_cutoff) {
    ScanConfig cfg;
    if (common.config_path.empty()) {
        cfg.quantity = quantity_from_string(quantity);
        cfg.engine = engine_from_string(engine);
        cfg.params = po.params;
        cfg.chain.n_atoms = po.n_atoms;
        cfg.chain.s_magnitude = po.resolved_s();
        cfg.chain.arg_s = po.arg_s;
        cfg.axis1 = {ax.axis1_param, ax.axis1_min, ax.axis1_max, ax.axis1_points};
        if (!ax.axis2_param.empty())
            cfg.axis2 = AxisSpec{ax.axis2_param, ax.axis2_min, ax.axis2_max, ax.axis2_points};
        cfg.seed = common.seed;
        cfg.oracle_cutoff = oracle_cutoff;
        cfg.validate();
    } else {
        cfg = load_scan_config(common.config_path);
    }
    emit(run_scan(cfg, common.threads), common);
    return 0;
}

// ------------------------------------------------------------------- modes

int cmd_modes(const CommonOpts& common, const ParamOpts& po) {
    const Scalar s = po.resolved_s();
    AtomChain chain;
    if (std::abs(s - po.n_atoms) < 1e-12)
        chain = grid_chain(po.n_atoms);
    else
        chain = chain_with_structure(po.n_atoms, s);
    chain = translate_chain(chain, po.arg_s / (4 * pi));

    const ModeDecomposition md = decompose_modes(po.params, chain);
    const PolaritonSpectrum sp = polariton_eigenvalues(po.params, chain);

    ResultTable t = make_table({"n_atoms[1]", "s_magnitude[1]", "arg_s[rad]", "g1[gamma]",
                                "g2[gamma]", "dark_space_dim[1]", "c1_plus_re[1]",
                                "c1_plus_im[1]", "c1_minus_re[1]", "c1_minus_im[1]",
                                "c2_plus_re[1]", "c2_plus_im[1]", "c2_minus_re[1]",
                                "c2_minus_im[1]", "e1_minus_re[gamma]", "e1_minus_im[gamma]",
                                "e1_plus_re[gamma]", "e1_plus_im[gamma]", "e2_minus_re[gamma]",
                                "e2_minus_im[gamma]", "e2_plus_re[gamma]", "e2_plus_im[gamma]"});
    const StructureFactor sf = structure_factor(chain);
    std::vector<Scalar> row = {Scalar(po.n_atoms), sf.magnitude(), sf.phase(),
                               md.g1,              md.g2,          Scalar(md.dark_space_dim),
                               md.c1[0].real(),    md.c1[0].imag(), md.c1[1].real(),
                               md.c1[1].imag(),    md.c2[0].real(), md.c2[0].imag(),
                               md.c2[1].real(),    md.c2[1].imag()};
    for (const Complex& e : sp.all()) {
        row.push_back(e.real());
        row.push_back(e.imag());
    }
    push_row(t, std::move(row));
    emit(t, common);
    return 0;
}

// ----------------------------------------------------------------- routing

int cmd_routing(const CommonOpts& common, const ParamOpts& po, int scan_s_points,
                bool figures, bool feasible, Scalar target_w, Scalar target_loss,
                int mirror_points) {
    if (feasible) {
        const FeasibleRegion region = feasible_region(target_w, target_loss);
        ResultTable t = make_table({"nc[1]", "delta_lo[gamma]", "delta_hi[gamma]"});
        for (const auto& b : region.boundary) push_row(t, {b.nc, b.delta_lo, b.delta_hi});
        emit(t, common);
        if (!region.feasible) {
            std::cerr << "infeasible within the searched cooperativity range\n";
            return 1;
        }
        std::cerr << "minimal NC = " << region.nc_min
                  << "  (detuning floor |Delta/gamma| ~ " << region.min_detuning << ")\n";
        return 0;
    }
    if (mirror_points > 0) {
        const auto scan = mirror_ratio_scan(po.params, po.n_atoms, mirror_points);
        ResultTable t = make_table({"kappa_in_ratio[1]", "w[1]", "n_loss[1]"});
        for (const auto& pt : scan) push_row(t, {pt.ratio, pt.tuning_range, pt.n_loss});
        emit(t, common);
        return 0;
    }
    if (figures) {
        const RouterFigures fig = router_figures(po.params, po.n_atoms);
        const Scalar nc = po.params.collective_cooperativity(po.n_atoms);
        ResultTable t = make_table(
            {"nc[1]", "w[1]", "n_loss[1]", "argmax_s[1]", "w_analytic[1]", "n_loss_analytic[1]"});
        push_row(t, {nc, fig.tuning_range, fig.n_loss, fig.argmax_s_loss,
                     tuning_range_analytic(nc, std::abs(po.params.delta_a()) / po.params.gamma),
                     max_photon_loss_analytic(nc, std::abs(po.params.delta_a()) / po.params.gamma)});
        emit(t, common);
        return 0;
    }
    if (scan_s_points > 0) {
        ResultTable t = make_table({"s_magnitude[1]", "n_out_plus[1]", "n_out_minus[1]",
                                    "n_out_tot[1]"});
        for (int i = 0; i < scan_s_points; ++i) {
            const Scalar s = po.n_atoms * Scalar(i) / (scan_s_points - 1);
            const RoutingMetrics m = routing_metrics(po.params, po.n_atoms, Complex(s, 0.0));
            push_row(t, {s, m.n_out_plus, m.n_out_minus, m.n_out_tot});
        }
        emit(t, common);
        return 0;
    }
    const RoutingMetrics m =
        routing_metrics(po.params, po.n_atoms, std::polar(po.resolved_s(), po.arg_s));
    ResultTable t = make_table({"n_out_plus[1]", "n_out_minus[1]", "n_out_tot[1]",
                                "phi_plus[rad]", "phi_minus[rad]", "relative_phase[rad]"});
    std::string error;
    if (!m.phi_plus || !m.phi_minus) error = "undefined_phase";
    push_row(t,
             {m.n_out_plus, m.n_out_minus, m.n_out_tot, m.phi_plus.value_or(nan_cell),
              m.phi_minus.value_or(nan_cell), m.relative_phase.value_or(nan_cell)},
             error);
    emit(t, common);
    return 0;
}

// ------------------------------------------------------------------- phase

int cmd_phase(const CommonOpts& common, const ParamOpts& po, const std::string& vs,
              Scalar lo, Scalar hi, int points) {
    ScanConfig cfg;
    cfg.params = po.params;
    cfg.chain.n_atoms = po.n_atoms;
    cfg.chain.s_magnitude = po.resolved_s();
    cfg.chain.arg_s = po.arg_s;
    cfg.seed = common.seed;
    if (vs == "delta") {
        cfg.quantity = Quantity::phi_plus;
        cfg.axis1 = {"delta", lo, hi, points};
        cfg.axis2 = AxisSpec{"s_magnitude", 0.0, Scalar(po.n_atoms), 3};
    } else {  // displacement: the center of mass enters through arg S
        cfg.quantity = Quantity::relative_phase;
        cfg.axis1 = {"arg_s", lo, hi, points};
    }
    cfg.validate();
    emit(run_scan(cfg, common.threads), common);
    return 0;
}

// ---------------------------------------------------------------- disorder

int cmd_disorder(const CommonOpts& common, const ParamOpts& po, Scalar sigma,
                 Scalar sigma_nm, Scalar lambda_nm, int samples, int n_min, int n_max,
                 bool degraded) {
    DisorderSpec spec;
    spec.sigma = (sigma >= 0) ? sigma : sigma_lambda_from_nm(sigma_nm, lambda_nm);
    spec.samples = samples;
    spec.seed = common.seed;

    if (degraded) {
        const DegradedTuningRange d = degraded_tuning_range(po.params, po.n_atoms, spec);
        ResultTable t = make_table({"sigma[lambda]", "mean_s[1]", "mean_s_stderr[1]",
                                    "w_from_mean_s[1]", "w_monte_carlo[1]", "w_clean[1]"});
        push_row(t, {spec.sigma, d.mean_s_ratio.mean, d.mean_s_ratio.std_error,
                     d.w_from_mean_s, d.w_monte_carlo,
                     tuning_range_numeric(po.params, po.n_atoms)});
        emit(t, common);
        return 0;
    }

    ResultTable t = make_table({"n_atoms[1]", "mean_s[1]", "mean_s_stderr[1]", "decay_law[1]"});
    for (int n = n_min; n <= n_max; ++n) {
        const MonteCarloEstimate est = mean_structure_factor(n, spec);
        push_row(t, {Scalar(n), est.mean, est.std_error, structure_factor_decay(spec.sigma)});
    }
    emit(t, common);
    return 0;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const SystemParams& base, int n, Scalar weak_epsilon, Scalar mf_epsilon,
                 int cutoff) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("validate: the oracle handles 1 to 3 atoms");
    SystemParams p = base;
    p.epsilon = weak_epsilon;
    AtomChain chain = grid_chain(n);

    TruncatedHilbert h;
    h.n_atoms = n;
    h.fock_cutoff = cutoff;
    const OracleExpectations oracle = steady_state_expectations_converged(p, chain, h);
    const IntracavityFields analytic = steady_state_fields(p, chain);

    const auto rel = [](Complex got, Complex want) {
        return std::abs(got - want) / std::max(std::abs(want), 1e-300);
    };
    const Scalar dev_plus = rel(oracle.a_plus, analytic.a_plus);
    const Scalar dev_minus = rel(oracle.a_minus, analytic.a_minus);

    SystemParams p_mf = p;
    p_mf.epsilon = mf_epsilon;
    const OracleExpectations oracle_mf = steady_state_expectations_converged(p_mf, chain, h);
    const MeanFieldState mf = find_steady_state(p_mf, chain, 1e-10).state;
    const Scalar dev_mf = std::max(rel(mf.a_plus, oracle_mf.a_plus),
                                   rel(mf.a_minus, oracle_mf.a_minus));

    const MeanFieldState mf_weak = find_steady_state(p, chain, 1e-10).state;
    const Scalar dev_mf_weak = std::max(rel(mf_weak.a_plus, analytic.a_plus),
                                        rel(mf_weak.a_minus, analytic.a_minus));

    bool ok = true;
    const auto report = [&](const std::string& name, Scalar dev, Scalar bound) {
        const bool pass = dev < bound;
        ok = ok && pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": max relative deviation "
                  << dev << " (bound " << bound << ")\n";
    };
    report("oracle vs analytic <a+> (eps = " + std::to_string(weak_epsilon) + ")", dev_plus,
           0.01);
    report("oracle vs analytic <a-> (eps = " + std::to_string(weak_epsilon) + ")", dev_minus,
           0.01);
    report("mean-field vs oracle (eps = " + std::to_string(mf_epsilon) + ")", dev_mf, 0.02);
    report("mean-field vs analytic (weak drive)", dev_mf_weak, 0.005);
    return ok ? 0 : 3;
}

// ----------------------------------------------------------------- figures

struct CheckList {
    bool all_ok = true;
    void check(const std::string& name, bool ok, const std::string& detail) {
        all_ok = all_ok && ok;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    }
};

void save(const ResultTable& t, const std::filesystem::path& dir, const std::string& name) {
    std::ofstream out(dir / name);
    write_csv(t, out);
}

int cmd_figures(const CommonOpts& common, Scalar star_nc, Scalar star_delta) {
    const std::filesystem::path dir =
        common.out_path.empty() ? std::filesystem::path("figures_out") : common.out_path;
    std::filesystem::create_directories(dir);
    CheckList checks;

    SystemParams fig2;
    fig2.g = 0.5;
    fig2.kappa_in = 0.1;
    fig2.delta_ac = 10.0;
    fig2.epsilon = 1e-3;

    // Intracavity spectra for three chain configurations, with the peak
    // ridge checked against the polariton eigenvalues.
    for (const auto& [tag, ratio] : std::vector<std::pair<std::string, Scalar>>{
             {"zero", 0.0}, {"half", 0.5}, {"full", 1.0}}) {
        ScanConfig cfg;
        cfg.quantity = Quantity::n_tot;
        cfg.params = fig2;
        cfg.chain.n_atoms = 20;
        cfg.chain.s_magnitude = 20.0 * ratio;
        cfg.axis1 = {"delta", -6.0, 6.0, 601};
        cfg.axis2 = AxisSpec{"delta_ac", -10.0, 10.0, 201};
        save(run_scan(cfg, common.threads), dir, "spectrum_map_s_" + tag + ".csv");

        ScanConfig cut = cfg;
        cut.axis1.points = 24001;
        cut.axis2.reset();
        const ResultTable t = run_scan(cut, common.threads);
        std::vector<Scalar> delta(t.n_rows()), n_tot(t.n_rows());
        for (std::size_t r = 0; r < t.n_rows(); ++r) {
            delta[r] = t.rows[r][0];
            n_tot[r] = t.rows[r][3];
        }
        const PolaritonSpectrum sp =
            polariton_eigenvalues(cut.params, 20, cut.chain.s_magnitude);
        const PeakReport peaks = extract_peaks(delta, n_tot, sp);
        bool ridge_ok = !peaks.peaks.empty();
        Scalar worst = 0;
        for (const Peak& pk : peaks.peaks) {
            Scalar best = std::numeric_limits<Scalar>::infinity();
            for (const Complex& e : sp.all())
                best = std::min(best, std::abs(pk.center - e.real()) /
                                          std::max(-e.imag(), Scalar(1e-6)));
            worst = std::max(worst, best);
            ridge_ok = ridge_ok && best < 1.0;
        }
        checks.check("spectrum ridge (|S|/N = " + tag + ")", ridge_ok,
                     "peak offsets <= " + std::to_string(worst) + " half-linewidths");
    }

    // Output photon numbers vs delta and vs |S|.
    SystemParams fig4 = fig2;
    for (const auto& [tag, s] : std::vector<std::pair<std::string, Scalar>>{
             {"full", 10.0}, {"zero", 0.0}}) {
        ScanConfig cfg;
        cfg.quantity = Quantity::n_out_tot;
        cfg.params = fig4;
        cfg.chain.n_atoms = 10;
        cfg.chain.s_magnitude = s;
        cfg.axis1 = {"delta", -1.0, 1.5, 1001};
        save(run_scan(cfg, common.threads), dir, "routing_vs_delta_s_" + tag + ".csv");
    }
    {
        ResultTable t = make_table({"s_magnitude[1]", "n_out_plus[1]", "n_out_minus[1]",
                                    "n_out_tot[1]"});
        bool monotone = true;
        Scalar prev = 0.0, min_tot = 1.0;
        for (int i = 0; i <= 100; ++i) {
            const Scalar s = 10.0 * i / 100;
            const RoutingMetrics m = routing_metrics(fig4, 10, Complex(s, 0.0));
            if (m.n_out_minus < prev - 1e-12) monotone = false;
            prev = m.n_out_minus;
            min_tot = std::min(min_tot, m.n_out_tot);
            push_row(t, {s, m.n_out_plus, m.n_out_minus, m.n_out_tot});
        }
        save(t, dir, "routing_vs_s.csv");
        const Scalar w = tuning_range_numeric(fig4, 10);
        const Scalar w_expected = 40000.0 / 40801.0;
        checks.check("tuning range at |S| = N", std::abs(w - w_expected) < 1e-9,
                     "W = " + std::to_string(w));
        const LossMaximum loss = max_photon_loss_numeric(fig4, 10);
        const Scalar loss_expected = max_photon_loss_analytic(100.0, 10.0);
        checks.check("maximum loss numeric vs analytic",
                     std::abs(loss.n_loss - loss_expected) < 1e-6 &&
                         std::abs(loss_expected - 0.05844) < 1e-4,
                     "n_loss = " + std::to_string(loss.n_loss));
        checks.check("routed crossover", monotone && min_tot > 1.0 - loss.n_loss - 1e-9,
                     "n_out_tot stays above " + std::to_string(min_tot));
    }

    // Feasibility region and mirror-ratio dependence.
    {
        const FeasibleRegion region = feasible_region(0.9, 0.01);
        ResultTable t = make_table({"nc[1]", "delta_lo[gamma]", "delta_hi[gamma]"});
        for (const auto& b : region.boundary) push_row(t, {b.nc, b.delta_lo, b.delta_hi});
        save(t, dir, "feasibility_boundary.csv");
        checks.check("feasibility threshold",
                     region.feasible && std::abs(region.nc_min - 278) / 278 < 0.02,
                     "minimal NC = " + std::to_string(region.nc_min));

        SystemParams star;
        star.kappa_in = 0.1;
        star.delta_ac = star_delta;
        star.g = std::sqrt(star_nc * star.kappa() * star.gamma / (4 * 10));
        star.epsilon = 1e-3;
        const auto scan = mirror_ratio_scan(star, 10, 41);
        ResultTable m = make_table({"kappa_in_ratio[1]", "w[1]", "n_loss[1]"});
        bool monotone = true;
        for (std::size_t i = 0; i < scan.size(); ++i) {
            if (i > 0 && scan[i].tuning_range < scan[i - 1].tuning_range - 1e-12)
                monotone = false;
            push_row(m, {scan[i].ratio, scan[i].tuning_range, scan[i].n_loss});
        }
        save(m, dir, "mirror_ratio.csv");
        const Scalar w1 = scan.back().tuning_range;
        const Scalar w1_expected = tuning_range_analytic(star_nc, star_delta);
        checks.check("mirror ratio endpoints",
                     monotone && std::abs(w1 - w1_expected) < 1e-9 &&
                         scan.front().n_loss < 1e-12,
                     "W rises monotonically to " + std::to_string(w1));
    }

    // Output phases vs delta and vs chain displacement.
    {
        ScanConfig cfg;
        cfg.quantity = Quantity::phi_plus;
        cfg.params = fig4;
        cfg.chain.n_atoms = 10;
        cfg.chain.s_magnitude = 10.0;
        cfg.axis1 = {"delta", -1.0, 1.5, 2001};
        cfg.axis2 = AxisSpec{"s_magnitude", 0.0, 10.0, 3};
        const ResultTable t = run_scan(cfg, common.threads);
        save(t, dir, "phase_vs_delta.csv");
        // rows: delta x {0, 5, 10}; contrast between s = 0 and s = N columns
        Scalar max_contrast = 0.0;
        for (std::size_t r = 0; r + 2 < t.n_rows(); r += 3) {
            const Scalar phi_zero = t.rows[r][2];
            const Scalar phi_full = t.rows[r + 2][2];
            if (!std::isnan(phi_zero) && !std::isnan(phi_full))
                max_contrast =
                    std::max(max_contrast, std::abs(wrap_phase(phi_full - phi_zero)));
        }
        checks.check("pi phase contrast", max_contrast > 0.9 * pi,
                     "max |phi_+(S=N) - phi_+(S=0)| = " + std::to_string(max_contrast));

        ScanConfig disp;
        disp.quantity = Quantity::relative_phase;
        disp.params = fig4;
        disp.chain.n_atoms = 10;
        disp.chain.s_magnitude = 7.0;
        disp.axis1 = {"arg_s", -3.0, 3.0, 121};
        const ResultTable td = run_scan(disp, common.threads);
        save(td, dir, "phase_vs_displacement.csv");
        bool linear = true;
        for (std::size_t r = 1; r < td.n_rows(); ++r) {
            const Scalar darg = td.rows[r][0] - td.rows[r - 1][0];
            const Scalar dphi = wrap_phase(td.rows[r][3] - td.rows[r - 1][3]);
            if (std::abs(dphi + darg) > 1e-9) linear = false;  // slope -1 in arg S
        }
        checks.check("relative phase follows the center of mass", linear,
                     "d(phi_+ - phi_-)/d(arg S) = -1");
    }

    // Thermal disorder Monte Carlo.
    {
        ScanConfig cfg;
        cfg.quantity = Quantity::mean_s;
        cfg.params = fig4;
        cfg.chain.n_atoms = 10;
        cfg.chain.s_magnitude = 10.0;
        cfg.axis1 = {"n_atoms", 2.0, 100.0, 50};
        cfg.sigma = 20.0 / 780.0;
        cfg.samples = 10000;
        cfg.seed = common.seed;
        cfg.validate();
        const ResultTable t = run_scan(cfg, common.threads);
        save(t, dir, "disorder_mean_s.csv");
        const Scalar mean_at_100 = t.rows.back()[1];
        const Scalar law = structure_factor_decay(20.0 / 780.0);
        checks.check("thermal structure factor",
                     std::abs(mean_at_100 - law) < 0.005,
                     "mean |S|/N at N = 100 is " + std::to_string(mean_at_100));

        DisorderSpec spec;
        spec.sigma = 20.0 / 780.0;
        spec.samples = 10000;
        spec.seed = common.seed;
        const DegradedTuningRange d = degraded_tuning_range(fig4, 10, spec);
        checks.check("degraded tuning range", std::abs(d.w_from_mean_s - 0.86) < 0.01,
                     "W = " + std::to_string(d.w_from_mean_s));
    }

    std::cout << (checks.all_ok ? "all figure checks passed\n"
                                : "some figure checks FAILED\n");
    return checks.all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ring-cavity atomic chain simulator"};
    app.require_subcommand(1);

    CommonOpts common;
    ParamOpts po;
    AxisOpts ax;
    std::string quantity = "n_tot", engine = "analytic", vs = "delta";
    int oracle_cutoff = 2;
    int scan_s_points = 0, mirror_points = 0;
    bool figures_flag = false, feasible = false, degraded = false;
    Scalar target_w = 0.9, target_loss = 0.01;
    Scalar axis_lo = -1.0, axis_hi = 1.5;
    int axis_points = 1001;
    Scalar sigma = -1.0, sigma_nm = 20.0, lambda_nm = 780.0;
    int samples = 10000, n_min = 2, n_max = 100;
    Scalar weak_epsilon = 1e-3, mf_epsilon = 0.01;
    Scalar star_nc = 300.0, star_delta = 50.0;

    CLI::App* spectrum = app.add_subcommand("spectrum", "intracavity/output spectra scans");
    add_common(spectrum, common);
    add_params(spectrum, po);
    spectrum->add_option("--quantity", quantity, "observable (default n_tot)");
    spectrum->add_option("--engine", engine, "analytic|meanfield|oracle");
    spectrum->add_option("--oracle-cutoff", oracle_cutoff);
    spectrum->add_option("--axis1-param", ax.axis1_param);
    spectrum->add_option("--axis1-min", ax.axis1_min);
    spectrum->add_option("--axis1-max", ax.axis1_max);
    spectrum->add_option("--axis1-points", ax.axis1_points);
    spectrum->add_option("--axis2-param", ax.axis2_param, "optional second axis");
    spectrum->add_option("--axis2-min", ax.axis2_min);
    spectrum->add_option("--axis2-max", ax.axis2_max);
    spectrum->add_option("--axis2-points", ax.axis2_points);

    CLI::App* modes = app.add_subcommand("modes", "collective mode decomposition");
    add_common(modes, common);
    add_params(modes, po);

    CLI::App* routing = app.add_subcommand("routing", "router metrics and figures");
    add_common(routing, common);
    add_params(routing, po);
    routing->add_option("--scan-s", scan_s_points, "table of n_out vs |S| with this many points");
    routing->add_flag("--router-figures", figures_flag, "numeric W, n_loss, argmax |S|");
    routing->add_flag("--feasible", feasible, "search the (NC, Delta) feasibility region");
    routing->add_option("--w", target_w, "tuning range target for --feasible");
    routing->add_option("--loss", target_loss, "loss target for --feasible");
    routing->add_option("--mirror-scan", mirror_points, "table of W, n_loss vs kappa_in/kappa");

    CLI::App* phase = app.add_subcommand("phase", "output phase curves");
    add_common(phase, common);
    add_params(phase, po);
    phase->add_option("--vs", vs)->check(CLI::IsMember({"delta", "displacement"}));
    phase->add_option("--min", axis_lo);
    phase->add_option("--max", axis_hi);
    phase->add_option("--points", axis_points);

    CLI::App* disorder = app.add_subcommand("disorder", "thermal position-uncertainty Monte Carlo");
    add_common(disorder, common);
    add_params(disorder, po);
    disorder->add_option("--sigma", sigma, "position spread [lambda]");
    disorder->add_option("--sigma-nm", sigma_nm, "position spread [nm]");
    disorder->add_option("--lambda-nm", lambda_nm, "wavelength [nm]");
    disorder->add_option("--samples", samples)->check(CLI::PositiveNumber);
    disorder->add_option("--n-min", n_min);
    disorder->add_option("--n-max", n_max);
    disorder->add_flag("--degraded", degraded, "report the degraded tuning range instead");

    int validate_n = 1;
    CLI::App* validate = app.add_subcommand("validate", "oracle vs analytic vs mean-field");
    validate->add_option("--g", po.params.g);
    validate->add_option("--kappa-in", po.params.kappa_in);
    validate->add_option("--kappa-other", po.params.kappa_other);
    validate->add_option("--delta", po.params.delta);
    validate->add_option("--delta-ac", po.params.delta_ac);
    validate->add_option("--n", validate_n, "atom number (1 to 3)");
    validate->add_option("--weak-epsilon", weak_epsilon);
    validate->add_option("--mf-epsilon", mf_epsilon);
    validate->add_option("--oracle-cutoff", oracle_cutoff);

    CLI::App* figures = app.add_subcommand("figures", "run all built-in reproduction recipes");
    add_common(figures, common);
    figures->add_option("--star-nc", star_nc, "NC for the mirror-ratio scan");
    figures->add_option("--star-delta", star_delta, "Delta/gamma for the mirror-ratio scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (spectrum->parsed())
            return cmd_spectrum(common, po, ax, quantity, engine, oracle_cutoff);
        if (modes->parsed()) return cmd_modes(common, po);
        if (routing->parsed())
            return cmd_routing(common, po, scan_s_points, figures_flag, feasible, target_w,
                               target_loss, mirror_points);
        if (phase->parsed()) return cmd_phase(common, po, vs, axis_lo, axis_hi, axis_points);
        if (disorder->parsed())
            return cmd_disorder(common, po, sigma, sigma_nm, lambda_nm, samples, n_min, n_max,
                                degraded);
        if (validate->parsed())
            return cmd_validate(po.params, validate_n, weak_epsilon, mf_epsilon, oracle_cutoff);
        if (figures->parsed()) return cmd_figures(common, star_nc, star_delta);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
