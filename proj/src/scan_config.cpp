#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "ringcav/scan.hpp"

namespace ringcav {

namespace {

using nlohmann::json;

void require_known_keys(const json& j, const std::set<std::string>& known,
                        const std::string& path) {
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key))
            throw ConfigError("unknown key: " + (path.empty() ? key : path + "." + key));
    }
}

Scalar get_number(const json& j, const std::string& key, const std::string& path,
                  std::optional<Scalar> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("missing key: " + path + key);
    }
    if (!j[key].is_number()) throw ConfigError("expected a number at: " + path + key);
    return j[key].get<Scalar>();
}

const std::vector<std::pair<std::string, Quantity>> quantity_names = {
    {"n_plus", Quantity::n_plus},
    {"n_minus", Quantity::n_minus},
    {"n_tot", Quantity::n_tot},
    {"n_out_plus", Quantity::n_out_plus},
    {"n_out_minus", Quantity::n_out_minus},
    {"n_out_tot", Quantity::n_out_tot},
    {"phi_plus", Quantity::phi_plus},
    {"phi_minus", Quantity::phi_minus},
    {"relative_phase", Quantity::relative_phase},
    {"eigenvalues", Quantity::eigenvalues},
    {"w", Quantity::w},
    {"n_loss", Quantity::n_loss},
    {"mean_s", Quantity::mean_s},
};

const std::vector<std::pair<std::string, Engine>> engine_names = {
    {"analytic", Engine::analytic},
    {"meanfield", Engine::meanfield},
    {"oracle", Engine::oracle},
};

AxisSpec parse_axis(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError("expected an object at: " + path);
    require_known_keys(j, {"parameter", "start", "stop", "points"}, path);
    AxisSpec ax;
    if (!j.contains("parameter") || !j["parameter"].is_string())
        throw ConfigError("missing or non-string key: " + path + ".parameter");
    ax.parameter = j["parameter"].get<std::string>();
    ax.start = get_number(j, "start", path + ".");
    ax.stop = get_number(j, "stop", path + ".");
    ax.points = static_cast<int>(get_number(j, "points", path + "."));
    return ax;
}

}  // namespace

std::string to_string(Quantity q) {
    for (const auto& [name, value] : quantity_names)
        if (value == q) return name;
    return "?";
}

std::string to_string(Engine e) {
    for (const auto& [name, value] : engine_names)
        if (value == e) return name;
    return "?";
}

Quantity quantity_from_string(const std::string& name) {
    for (const auto& [n, v] : quantity_names)
        if (n == name) return v;
    throw ConfigError("unknown quantity: " + name);
}

Engine engine_from_string(const std::string& name) {
    for (const auto& [n, v] : engine_names)
        if (n == name) return v;
    throw ConfigError("unknown engine: " + name);
}

ScanConfig parse_scan_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    require_known_keys(j,
                       {"quantity", "engine", "axis1", "axis2", "params", "chain", "seed",
                        "sigma", "samples", "oracle_cutoff"},
                       "");

    ScanConfig cfg;
    if (j.contains("quantity")) cfg.quantity = quantity_from_string(j["quantity"].get<std::string>());
    if (j.contains("engine")) cfg.engine = engine_from_string(j["engine"].get<std::string>());
    if (!j.contains("axis1")) throw ConfigError("missing key: axis1");
    cfg.axis1 = parse_axis(j["axis1"], "axis1");
    if (j.contains("axis2")) cfg.axis2 = parse_axis(j["axis2"], "axis2");

    if (j.contains("params")) {
        const json& p = j["params"];
        if (!p.is_object()) throw ConfigError("expected an object at: params");
        require_known_keys(
            p, {"g", "kappa_in", "kappa_other", "gamma", "epsilon", "delta", "delta_ac"},
            "params");
        SystemParams sp;
        sp.g = get_number(p, "g", "params.", sp.g);
        sp.kappa_in = get_number(p, "kappa_in", "params.", sp.kappa_in);
        sp.kappa_other = get_number(p, "kappa_other", "params.", sp.kappa_other);
        sp.gamma = get_number(p, "gamma", "params.", sp.gamma);
        sp.epsilon = get_number(p, "epsilon", "params.", sp.epsilon);
        sp.delta = get_number(p, "delta", "params.", sp.delta);
        sp.delta_ac = get_number(p, "delta_ac", "params.", sp.delta_ac);
        cfg.params = sp;
    }

    if (j.contains("chain")) {
        const json& c = j["chain"];
        if (!c.is_object()) throw ConfigError("expected an object at: chain");
        require_known_keys(c, {"n_atoms", "s_magnitude", "arg_s", "positions"}, "chain");
        if (c.contains("positions")) {
            if (c.contains("n_atoms") || c.contains("s_magnitude") || c.contains("arg_s"))
                throw ConfigError("chain.positions excludes the other chain keys");
            if (!c["positions"].is_array())
                throw ConfigError("expected an array at: chain.positions");
            std::vector<Scalar> pos;
            for (const auto& v : c["positions"]) {
                if (!v.is_number()) throw ConfigError("non-number in chain.positions");
                pos.push_back(v.get<Scalar>());
            }
            VectorXd x(pos.size());
            for (std::size_t i = 0; i < pos.size(); ++i) x[i] = pos[i];
            const AtomChain chain{x};
            const StructureFactor s = structure_factor(chain);
            cfg.chain.positions = pos;
            cfg.chain.n_atoms = chain.size();
            cfg.chain.s_magnitude = s.magnitude();
            cfg.chain.arg_s = s.phase();
        } else {
            cfg.chain.n_atoms = static_cast<int>(get_number(c, "n_atoms", "chain."));
            cfg.chain.s_magnitude = get_number(c, "s_magnitude", "chain.", 0.0);
            cfg.chain.arg_s = get_number(c, "arg_s", "chain.", 0.0);
        }
    }

    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sigma")) cfg.sigma = get_number(j, "sigma", "");
    if (j.contains("samples")) cfg.samples = static_cast<int>(get_number(j, "samples", ""));
    if (j.contains("oracle_cutoff"))
        cfg.oracle_cutoff = static_cast<int>(get_number(j, "oracle_cutoff", ""));

    cfg.validate();
    return cfg;
}

ScanConfig load_scan_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return parse_scan_config(j);
}

namespace {

const std::set<std::string> axis_parameters = {
    "delta", "delta_ac", "s_magnitude", "arg_s", "nc", "kappa_in_ratio", "sigma", "n_atoms"};

void validate_axis(const AxisSpec& ax, const std::string& which) {
    if (!axis_parameters.count(ax.parameter))
        throw ConfigError(which + ": unknown parameter '" + ax.parameter + "'");
    if (ax.points < 2) throw ConfigError(which + ": point count must be >= 2");
    if (!std::isfinite(ax.start) || !std::isfinite(ax.stop))
        throw ConfigError(which + ": range must be finite");
}

}  // namespace

void ScanConfig::validate() const {
    validate_axis(axis1, "axis1");
    if (axis2) {
        validate_axis(*axis2, "axis2");
        if (axis2->parameter == axis1.parameter)
            throw ConfigError("axis2 repeats the axis1 parameter");
    }
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (chain.n_atoms < 0) throw ConfigError("chain.n_atoms must be >= 0");
    if (chain.s_magnitude < 0 || chain.s_magnitude > chain.n_atoms)
        throw ConfigError("chain.s_magnitude must lie in [0, n_atoms]");
    if (sigma < 0) throw ConfigError("sigma must be >= 0");
    if (samples < 1) throw ConfigError("samples must be >= 1");
    if (oracle_cutoff < 1) throw ConfigError("oracle_cutoff must be >= 1");

    const bool router_quantity = quantity == Quantity::w || quantity == Quantity::n_loss;
    const bool disorder_quantity = quantity == Quantity::mean_s;
    if (engine != Engine::analytic && (router_quantity || disorder_quantity ||
                                       quantity == Quantity::eigenvalues))
        throw ConfigError("quantity '" + to_string(quantity) + "' requires the analytic engine");
    if (engine == Engine::oracle && chain.n_atoms > 3)
        throw ConfigError("oracle engine supports at most 3 atoms");

    const auto axis_is = [&](const std::string& name) {
        return axis1.parameter == name || (axis2 && axis2->parameter == name);
    };
    if (axis_is("sigma") && !disorder_quantity)
        throw ConfigError("sigma axis applies only to mean_s");
    if (disorder_quantity && !(axis_is("sigma") || axis_is("n_atoms")))
        throw ConfigError("mean_s scans sweep sigma or n_atoms");
    if (axis_is("nc") && chain.n_atoms < 1 && !router_quantity)
        throw ConfigError("nc axis needs a chain with atoms");
}

}  // namespace ringcav
