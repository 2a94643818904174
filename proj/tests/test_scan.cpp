#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "ringcav/scan.hpp"

using namespace ringcav;
using nlohmann::json;

namespace {

json base_config() {
    return json{
        {"quantity", "n_tot"},
        {"engine", "analytic"},
        {"axis1", {{"parameter", "delta"}, {"start", -2.0}, {"stop", 2.0}, {"points", 41}}},
        {"params",
         {{"g", 0.5},
          {"kappa_in", 0.1},
          {"delta_ac", 10.0},
          {"epsilon", 1e-3}}},
        {"chain", {{"n_atoms", 10}, {"s_magnitude", 10.0}}},
        {"seed", 7}};
}

std::string csv_of(const ResultTable& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

}  // namespace

TEST_SUITE_BEGIN("scan");

TEST_CASE("row count is the product of the axis point counts") {
    json cfg = base_config();
    cfg["axis2"] = {{"parameter", "delta_ac"}, {"start", -5.0}, {"stop", 5.0}, {"points", 7}};
    const ResultTable t = run_scan(parse_scan_config(cfg));
    CHECK(t.n_rows() == 41u * 7u);
    CHECK(t.columns.front() == "delta[gamma]");
    CHECK(t.columns[1] == "delta_ac[gamma]");
}

TEST_CASE("unknown keys are hard errors carrying the key path") {
    json cfg = base_config();
    cfg["params"]["kapa_in"] = 0.2;
    try {
        parse_scan_config(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("params.kapa_in") != std::string::npos);
    }
}

TEST_CASE("config validation rejects bad axes and engines") {
    json cfg = base_config();
    cfg["axis1"]["parameter"] = "detuning";
    CHECK_THROWS_AS(parse_scan_config(cfg), ConfigError);

    cfg = base_config();
    cfg["axis1"]["points"] = 1;
    CHECK_THROWS_AS(parse_scan_config(cfg), ConfigError);

    cfg = base_config();
    cfg["quantity"] = "w";
    cfg["engine"] = "meanfield";
    CHECK_THROWS_AS(parse_scan_config(cfg), ConfigError);

    cfg = base_config();
    cfg["engine"] = "oracle";
    CHECK_THROWS_AS(parse_scan_config(cfg), ConfigError);  // 10 atoms > oracle limit
}

TEST_CASE("identical configs give byte-identical CSV, independent of threads") {
    const ScanConfig cfg = parse_scan_config(base_config());
    const std::string a = csv_of(run_scan(cfg, 1));
    const std::string b = csv_of(run_scan(cfg, 1));
    const std::string c = csv_of(run_scan(cfg, 4));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.find("n_tot[1]") != std::string::npos);
}

TEST_CASE("disorder scans are seed-deterministic") {
    json cfg = base_config();
    cfg["quantity"] = "mean_s";
    cfg["axis1"] = {{"parameter", "n_atoms"}, {"start", 2.0}, {"stop", 20.0}, {"points", 10}};
    cfg["axis2"] = {{"parameter", "sigma"}, {"start", 0.0}, {"stop", 0.05}, {"points", 3}};
    cfg["samples"] = 200;
    const ScanConfig parsed = parse_scan_config(cfg);
    CHECK(csv_of(run_scan(parsed, 2)) == csv_of(run_scan(parsed, 1)));
}

TEST_CASE("undefined phases are flagged, not zeroed") {
    json cfg = base_config();
    cfg["quantity"] = "phi_minus";
    cfg["chain"]["s_magnitude"] = 0.0;  // backward port stays dark
    cfg["axis1"]["points"] = 5;
    const ResultTable t = run_scan(parse_scan_config(cfg));
    REQUIRE(t.n_rows() == 5u);
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        CHECK(t.row_errors[r] == "undefined_phase");
        CHECK(std::isnan(t.rows[r][2]));  // phi_minus cell is empty
        CHECK_FALSE(std::isnan(t.rows[r][1]));  // phi_plus is fine
    }
    const std::string csv = csv_of(t);
    CHECK(csv.find("undefined_phase") != std::string::npos);
}

TEST_CASE("per-point failures land in the error column without aborting") {
    json cfg = base_config();
    cfg["axis1"] = {{"parameter", "s_magnitude"}, {"start", 5.0}, {"stop", 15.0}, {"points", 11}};
    const ResultTable t = run_scan(parse_scan_config(cfg));
    int failed = 0;
    for (std::size_t r = 0; r < t.n_rows(); ++r)
        if (!t.row_errors[r].empty()) ++failed;
    CHECK(failed == 5);  // s_magnitude > n_atoms beyond s = 10
    CHECK(t.n_rows() == 11u);
}

TEST_CASE("eigenvalue scans carry eight spectral columns") {
    json cfg = base_config();
    cfg["quantity"] = "eigenvalues";
    cfg["axis1"] = {{"parameter", "s_magnitude"}, {"start", 0.0}, {"stop", 10.0}, {"points", 3}};
    const ResultTable t = run_scan(parse_scan_config(cfg));
    CHECK(t.columns.size() == 1u + 8u);
    // At |S| = N the g2 branch collapses onto the bare poles: Im e2 = -kappa/2
    // for the cavity-like one.
    const auto& last = t.rows.back();
    const Scalar im_e2_plus = last[6];
    const Scalar im_e2_minus = last[8];
    CHECK(std::min(std::abs(im_e2_plus + 0.05), std::abs(im_e2_minus + 0.05)) < 1e-9);
}

TEST_CASE("json output mirrors the csv schema") {
    json cfg = base_config();
    cfg["axis1"]["points"] = 3;
    const ResultTable t = run_scan(parse_scan_config(cfg));
    std::ostringstream os;
    write_json(t, os);
    const json parsed = json::parse(os.str());
    CHECK(parsed["columns"].size() == t.columns.size() + 1);  // + error column
    CHECK(parsed["rows"].size() == t.n_rows());
    CHECK(parsed["rows"][0].size() == t.columns.size() + 1);
}

TEST_CASE("peak extraction recovers a synthetic Lorentzian") {
    const Scalar center = 0.35, fwhm = 0.1, height = 1.0;
    std::vector<Scalar> x(4001), y(4001);
    for (int i = 0; i < 4001; ++i) {
        x[i] = -2.0 + 4.0 * i / 4000;
        const Scalar half = fwhm / 2;
        y[i] = height * half * half / ((x[i] - center) * (x[i] - center) + half * half);
    }
    SystemParams p;
    p.kappa_in = 0.1;
    const PolaritonSpectrum sp = polariton_eigenvalues(p, 10, 10.0);
    const PeakReport report = extract_peaks(x, y, sp);
    REQUIRE(report.peaks.size() == 1u);
    CHECK(report.peaks[0].center == doctest::Approx(center).epsilon(1e-4));
    CHECK(report.peaks[0].fwhm == doctest::Approx(fwhm).epsilon(0.01));
    CHECK(report.peaks[0].height == doctest::Approx(height).epsilon(1e-4));
}

TEST_CASE("dispersive linewidths extracted from the weak-drive spectrum") {
    // Deeply dispersive point so the closed-form linewidths apply cleanly.
    json cfg = base_config();
    cfg["params"]["kappa_in"] = 0.02;
    cfg["params"]["delta_ac"] = 25.0;
    cfg["axis1"] = {{"parameter", "delta"}, {"start", -0.08}, {"stop", 0.32}, {"points", 16001}};
    const ScanConfig parsed = parse_scan_config(cfg);
    const ResultTable t = run_scan(parsed);

    std::vector<Scalar> delta(t.n_rows()), n_tot(t.n_rows());
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        delta[r] = t.rows[r][0];
        n_tot[r] = t.rows[r][3];
    }
    const PolaritonSpectrum sp = polariton_eigenvalues(parsed.params, 10, 10.0);
    const PeakReport report = extract_peaks(delta, n_tot, sp);
    REQUIRE(report.peaks.size() == 2u);

    const Scalar kappa = 0.02;
    const Scalar denom = 25.0 * 25.0 + 0.25;
    const Scalar bright_expected = kappa + 2 * 10 * 0.25 / denom;
    CHECK(report.peaks[0].fwhm == doctest::Approx(kappa).epsilon(0.05));        // dark at 0
    CHECK(report.peaks[1].fwhm == doctest::Approx(bright_expected).epsilon(0.05));
    CHECK(report.peaks[1].center == doctest::Approx(2 * 10 * 0.25 / 25.0).epsilon(0.05));
}

TEST_CASE("half-structured chain shows two dispersively shifted peaks") {
    json cfg = base_config();
    cfg["chain"]["s_magnitude"] = 5.0;
    cfg["params"]["delta_ac"] = 25.0;
    cfg["params"]["kappa_in"] = 0.02;
    cfg["axis1"] = {{"parameter", "delta"}, {"start", -0.05}, {"stop", 0.3}, {"points", 12001}};
    const ScanConfig parsed = parse_scan_config(cfg);
    const ResultTable t = run_scan(parsed);
    std::vector<Scalar> delta(t.n_rows()), n_tot(t.n_rows());
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        delta[r] = t.rows[r][0];
        n_tot[r] = t.rows[r][3];
    }
    const PolaritonSpectrum sp = polariton_eigenvalues(parsed.params, 10, 5.0);
    const PeakReport report = extract_peaks(delta, n_tot, sp);
    REQUIRE(report.peaks.size() == 2u);
    const DispersiveEstimates est = dispersive_estimates(parsed.params, 10, 5.0);
    CHECK(report.peaks[0].center == doctest::Approx(est.dark_shift).epsilon(0.05));
    CHECK(report.peaks[1].center == doctest::Approx(est.bright_shift).epsilon(0.05));
}

TEST_SUITE_END();
