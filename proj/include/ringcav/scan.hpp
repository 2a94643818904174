#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ringcav/collective_modes.hpp"
#include "ringcav/disorder.hpp"
#include "ringcav/system_params.hpp"

namespace ringcav {

enum class Quantity {
    n_plus,
    n_minus,
    n_tot,
    n_out_plus,
    n_out_minus,
    n_out_tot,
    phi_plus,
    phi_minus,
    relative_phase,
    eigenvalues,
    w,
    n_loss,
    mean_s,
};

enum class Engine { analytic, meanfield, oracle };

std::string to_string(Quantity q);
std::string to_string(Engine e);
Quantity quantity_from_string(const std::string& name);  // throws ConfigError
Engine engine_from_string(const std::string& name);      // throws ConfigError

/// Sweep axis. Valid parameters: delta, delta_ac, s_magnitude, arg_s, nc,
/// kappa_in_ratio, sigma, n_atoms. The nc axis realizes the requested
/// collective cooperativity by adjusting g at fixed N, kappa, gamma;
/// kappa_in_ratio splits the fixed total kappa between input mirror and the
/// rest; n_atoms sweeps the chain size on an integer grid.
struct AxisSpec {
    std::string parameter;
    Scalar start = 0.0;
    Scalar stop = 0.0;
    int points = 2;
};

/// The chain enters the analytic layer only through (N, S); a chain may be
/// given either as explicit positions or as (n_atoms, s_magnitude, arg_s).
struct ChainSpec {
    int n_atoms = 0;
    Scalar s_magnitude = 0.0;
    Scalar arg_s = 0.0;
    std::optional<std::vector<Scalar>> positions;

    Complex s_factor() const { return std::polar(s_magnitude, arg_s); }
};

struct ScanConfig {
    Quantity quantity = Quantity::n_tot;
    Engine engine = Engine::analytic;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    SystemParams params;
    ChainSpec chain;
    std::uint64_t seed = 0;
    Scalar sigma = 0.0;     // fixed disorder spread for mean_s [lambda]
    int samples = 1000;     // Monte Carlo sample count for mean_s
    int oracle_cutoff = 2;  // base Fock cutoff for the oracle engine

    void validate() const;  // throws ConfigError
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict JSON parsing: unknown keys are hard errors carrying the offending
/// key path, so a typo in a physics parameter never silently defaults.
ScanConfig parse_scan_config(const nlohmann::json& j);
ScanConfig load_scan_config(const std::string& path);

/// Column-oriented result table. Missing values (e.g. an undefined phase)
/// are NaN cells, written as empty fields; per-row failures are recorded in
/// the error column instead of aborting the scan.
struct ResultTable {
    std::vector<std::string> columns;  // unit annotations in brackets
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::string> row_errors;

    std::size_t n_rows() const { return rows.size(); }
};

void write_csv(const ResultTable& table, std::ostream& os);
void write_json(const ResultTable& table, std::ostream& os);

/// Evaluates the configured engine at every grid point. Row order is the
/// axis product order (axis1 outer, axis2 inner) regardless of thread
/// count; results are deterministic given the config.
ResultTable run_scan(const ScanConfig& config, int threads = 1);

/// Peaks of a 1D spectrum, labeled by the nearest polariton eigenvalue.
struct Peak {
    Scalar center = 0.0;
    Scalar height = 0.0;
    Scalar fwhm = 0.0;
    std::string label;
};

struct PeakReport {
    std::vector<Peak> peaks;  // sorted by center
    std::string diagnostic;
};

/// Local maxima above `prominence` (relative to the global maximum), with
/// FWHM from linear interpolation of the half-height crossings. The caller
/// provides a scan fine enough to resolve the narrowest expected peak; a
/// peak narrower than ~10 grid steps is flagged in the diagnostic.
PeakReport extract_peaks(const std::vector<Scalar>& axis, const std::vector<Scalar>& values,
                         const PolaritonSpectrum& reference, Scalar prominence = 1e-3);

}  // namespace ringcav
