#ifndef CPOSLM_CONFIG_HPP
#define CPOSLM_CONFIG_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cposlm/bloch_oracle.hpp"
#include "cposlm/cpo_core.hpp"
#include "cposlm/ensemble.hpp"
#include "cposlm/pump_masks.hpp"

namespace cposlm {

enum class KeyProvenance { defaulted, file, flag };

/// Flat key-value run configuration. Defaults are the paper point wherever
/// the source material pins a value. Unknown keys are rejected.
class RunConfig {
public:
    RunConfig();

    /// Parse `key = value` lines ('#' comments) and overlay onto defaults.
    void apply_file(const std::filesystem::path& path);
    /// A single key=value override from the command line.
    void apply_flag(const std::string& key, const std::string& value);

    double get(const std::string& key) const;
    int get_int(const std::string& key) const;
    KeyProvenance provenance(const std::string& key) const;
    std::vector<std::string> keys() const;

    // Assembled views over the flat keys.
    SystemParams system_params() const;
    ProbeDetuning probe() const;
    AzimuthalPumpProfile pump_profile() const;
    ForkGratingSpec fork_spec() const;
    RasterGrid raster_geometry() const;
    OracleConfig oracle_config() const;
    std::optional<EnsembleSpec> ensemble_spec() const;  ///< nullopt if sigma_c = 0
    /// distance_m = 0 means one Rayleigh range of the configured waist.
    double propagation_distance() const;

    /// Validates every cross-key invariant; throws config_error naming the key.
    void validate() const;

    /// Rendered `key = value` listing with provenance comments.
    std::string describe() const;

private:
    struct Entry {
        double value;
        KeyProvenance from;
    };
    std::map<std::string, Entry> entries_;

    void set(const std::string& key, const std::string& value, KeyProvenance from);
    const Entry& lookup(const std::string& key) const;
};

}  // namespace cposlm

#endif
