#include "cposlm/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cposlm/errors.hpp"
#include "cposlm/io.hpp"

namespace cposlm {

namespace {

const std::map<std::string, double> kDefaults = {
    // paper point
    {"t1_s", 1.5e-11},
    {"t2_s", 3e-13},
    {"omega_c", 0.3},
    {"delta_c", 0.05},
    {"delta_s", 0.0},
    {"lambda_m", 530e-9},
    // pump profile
    {"a", 1.0},
    {"b", 1.0},
    {"c", 1.0},
    {"winding_l", 1},
    // ensemble (sigma_c = 0: point evaluation, no averaging)
    {"sigma_c", 0.0},
    {"ens_truncation", 6},
    {"ens_nodes", 257},
    {"ens_fixed_probe", 0},
    // fork grating
    {"fork_p", 1},
    {"fork_period_m", 2e-3},
    // raster / propagation scene
    {"grid_n", 1024},
    {"grid_pitch_m", 40e-6},
    {"aperture_radius_m", 0.0},
    {"waist_m", 1e-3},
    {"distance_m", 0.0},  // 0 -> one Rayleigh range
    // pipeline
    {"delta_l", 1},
    {"samples", 2048},
    {"bright_omega_c", 1.0},
    // oracle knobs
    {"oracle_omega_s", 1e-4},
    {"oracle_settle", 0.0},   // 0 -> 30*T1/T2
    {"oracle_periods", 8},
    {"oracle_step", 0.0},     // 0 -> min(0.01, beat period/2000)
};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

RunConfig::RunConfig() {
    for (const auto& [key, value] : kDefaults)
        entries_[key] = {value, KeyProvenance::defaulted};
}

const RunConfig::Entry& RunConfig::lookup(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw config_error("unknown configuration key '" + key + "'");
    return it->second;
}

void RunConfig::set(const std::string& key, const std::string& value,
                    KeyProvenance from) {
    if (!entries_.contains(key))
        throw config_error("unknown configuration key '" + key + "'");
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("unparsable value for key '" + key + "': " + value);
    }
    if (used != value.size() || !std::isfinite(v))
        throw config_error("unparsable value for key '" + key + "': " + value);
    entries_[key] = {v, from};
}

void RunConfig::apply_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file " + path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
            KeyProvenance::file);
    }
}

void RunConfig::apply_flag(const std::string& key, const std::string& value) {
    set(key, value, KeyProvenance::flag);
}

double RunConfig::get(const std::string& key) const { return lookup(key).value; }

int RunConfig::get_int(const std::string& key) const {
    const double v = lookup(key).value;
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9)
        throw config_error("key '" + key + "' must be an integer");
    return static_cast<int>(r);
}

KeyProvenance RunConfig::provenance(const std::string& key) const {
    return lookup(key).from;
}

std::vector<std::string> RunConfig::keys() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [key, entry] : entries_) out.push_back(key);
    return out;
}

SystemParams RunConfig::system_params() const {
    return {get("t1_s"), get("t2_s"), get("omega_c"), get("delta_c")};
}

ProbeDetuning RunConfig::probe() const { return {get("delta_s")}; }

AzimuthalPumpProfile RunConfig::pump_profile() const {
    return {get("a"), get("b"), get("c"), get_int("winding_l")};
}

ForkGratingSpec RunConfig::fork_spec() const {
    return {get_int("fork_p"), get("fork_period_m"), get("aperture_radius_m")};
}

RasterGrid RunConfig::raster_geometry() const {
    RasterGrid grid;
    grid.n = get_int("grid_n");
    grid.pitch_m = get("grid_pitch_m");
    grid.aperture_radius_m = get("aperture_radius_m");
    return grid;
}

OracleConfig RunConfig::oracle_config() const {
    return {get("oracle_omega_s"), get("oracle_settle"), get_int("oracle_periods"),
            get("oracle_step")};
}

std::optional<EnsembleSpec> RunConfig::ensemble_spec() const {
    if (get("sigma_c") == 0.0) return std::nullopt;
    EnsembleSpec spec;
    spec.sigma_c = get("sigma_c");
    spec.truncation = get("ens_truncation");
    spec.nodes = get_int("ens_nodes");
    spec.convention = get_int("ens_fixed_probe") != 0
                          ? AveragingConvention::fixed_probe
                          : AveragingConvention::fixed_beat;
    return spec;
}

double RunConfig::propagation_distance() const {
    const double d = get("distance_m");
    if (d != 0.0) return d;
    const double w = get("waist_m");
    return std::numbers::pi * w * w / get("lambda_m");
}

void RunConfig::validate() const {
    system_params().validate();
    probe().validate();
    pump_profile().validate();
    fork_spec().validate();
    if (!(get("lambda_m") > 0.0)) throw config_error("lambda_m must be positive");
    if (get_int("samples") < 64) throw config_error("samples must be >= 64");
    if (get_int("delta_l") == 0) throw config_error("delta_l must be nonzero");
    raster_geometry().validate_geometry();
    oracle_config().validate();
    if (const auto ens = ensemble_spec()) ens->validate();
    if (get("sigma_c") < 0.0) throw config_error("sigma_c must be >= 0");
    if (get("waist_m") <= 0.0) throw config_error("waist_m must be positive");
}

std::string RunConfig::describe() const {
    std::ostringstream out;
    for (const auto& [key, entry] : entries_) {
        const char* from = entry.from == KeyProvenance::defaulted ? "default"
                           : entry.from == KeyProvenance::file    ? "file"
                                                                  : "flag";
        out << key << " = " << format_number(entry.value) << "  # " << from
            << '\n';
    }
    return out.str();
}

}  // namespace cposlm
