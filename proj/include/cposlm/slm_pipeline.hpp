#ifndef CPOSLM_SLM_PIPELINE_HPP
#define CPOSLM_SLM_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cposlm/cpo_core.hpp"
#include "cposlm/ensemble.hpp"
#include "cposlm/pump_masks.hpp"

namespace cposlm {

/// Susceptibility sampled along the pump profile's fold-local angle psi
/// (equal to the mask azimuth for winding_l <= 1). Samples sit on a uniform
/// grid over [0, 2pi) plus the psi -> 2pi limit row, so endpoint values are
/// exact rather than extrapolated.
struct AzimuthalResponseTable {
    struct Sample {
        double phi;      ///< fold-local angle
        double omega_c;  ///< pump Rabi frequency at this angle
        double re_chi;
        double im_chi;
    };
    std::vector<Sample> samples;  ///< uniform over [0, 2pi)
    Sample end;                   ///< limit at phi = 2pi
    int winding_l = 1;
    std::optional<EnsembleSpec> ensemble;

    /// Linear interpolation of chi on [0, 2pi].
    ComplexSusceptibility chi_at(double phi) const;
    double re_chi_0() const { return samples.front().re_chi; }
    double re_chi_2pi() const { return end.re_chi; }
};

struct ThicknessResult {
    double d_m;
    int delta_l;
    double re_chi_0;
    double re_chi_2pi;
    bool ramp_reversed;  ///< endpoints were swapped (negative raw thickness)
    std::string discrepancy_note;
};

/// Per-pixel complex transmittance t = exp(i*phase) * amplitude imprinted on
/// the probe by the pumped medium. Pixels with local gain (Im chi < 0) are
/// counted, never clamped.
struct ModulationMap {
    int n = 0;
    double pitch_m = 0;
    double aperture_radius_m = 0;
    std::vector<double> phase;      ///< radians
    std::vector<double> amplitude;  ///< field amplitude factor exp(-alpha*d/2)
    long gain_pixels = 0;

    complexd transmittance(size_t idx) const {
        return std::polar(amplitude[idx], phase[idx]);
    }
};

struct TransmissionStats {
    double min_t;
    double max_t;
    double fraction_above_0p8;
};

/// Sweep the pump profile over one fold and tabulate the (optionally
/// ensemble-averaged) susceptibility.
AzimuthalResponseTable azimuthal_response(const AzimuthalPumpProfile& profile,
                                          const SystemParams& params,
                                          const ProbeDetuning& probe,
                                          const std::optional<EnsembleSpec>& ensemble,
                                          int n_samples);

/// Medium thickness giving a 2pi*delta_l phase winding between the fold
/// endpoints: d = 2*delta_l*lambda / (Re chi(2pi) - Re chi(0)).
ThicknessResult required_thickness(const AzimuthalResponseTable& table,
                                   double lambda_m, int delta_l);

/// Phase/amplitude modulation imprinted by thickness d:
/// phase(phi) = (pi*d/lambda) * (Re chi(phi) - Re chi(0)), referenced to
/// phi = 0; amplitude exp(-alpha(phi)*d/2). winding_l folds repeat around
/// the full circle.
ModulationMap phase_modulation_map(const AzimuthalResponseTable& table,
                                   double d_m, double lambda_m,
                                   const RasterGrid& grid);

/// Binary-contrast modulation from a fork mask: bright-pump susceptibility
/// on transparent pixels, dark (pump-off) susceptibility on opaque ones.
ModulationMap amplitude_modulation_map(const RasterGrid& fork_mask,
                                       const SystemParams& params_bright,
                                       const SystemParams& params_dark,
                                       const ProbeDetuning& probe,
                                       double d_m, double lambda_m);

/// Intensity transmission T(phi) = exp(-alpha(phi)*d) along the table.
std::vector<std::pair<double, double>> transmission_profile(
    const AzimuthalResponseTable& table, double d_m, double lambda_m);

TransmissionStats transmission_stats(
    const std::vector<std::pair<double, double>>& profile);

}  // namespace cposlm

#endif
