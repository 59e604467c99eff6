#include "cposlm/slm_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cposlm/errors.hpp"

namespace cposlm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double paper_thickness_m = 71e-6;
}  // namespace

ComplexSusceptibility AzimuthalResponseTable::chi_at(double phi) const {
    const size_t m = samples.size();
    const double h = two_pi / static_cast<double>(m);
    double p = std::clamp(phi, 0.0, two_pi);
    const size_t k = std::min(static_cast<size_t>(p / h), m - 1);
    const Sample& lo = samples[k];
    const Sample& hi = (k + 1 < m) ? samples[k + 1] : end;
    const double t = (p - lo.phi) / h;
    return {lo.re_chi + t * (hi.re_chi - lo.re_chi),
            lo.im_chi + t * (hi.im_chi - lo.im_chi)};
}

AzimuthalResponseTable azimuthal_response(const AzimuthalPumpProfile& profile,
                                          const SystemParams& params,
                                          const ProbeDetuning& probe,
                                          const std::optional<EnsembleSpec>& ensemble,
                                          int n_samples) {
    profile.validate();
    params.validate();
    probe.validate();
    if (n_samples < 64)
        throw config_error("azimuthal_response: need at least 64 samples");

    // Single-fold profile for the sweep: the fold-local angle runs the full
    // [0, 2pi] ramp regardless of winding_l (folds repeat in the map stage).
    AzimuthalPumpProfile fold = profile;
    fold.winding_l = profile.winding_l == 0 ? 0 : 1;

    auto eval = [&](double psi) {
        AzimuthalResponseTable::Sample s{};
        s.phi = psi;
        SystemParams local = params;
        // psi = 2pi is the fold limit, reachable only asymptotically on the
        // mask; evaluate the profile formula there directly.
        if (fold.winding_l == 0)
            local.omega_c = azimuthal_rabi(fold, 0.0);
        else
            local.omega_c = psi < two_pi
                                ? azimuthal_rabi(fold, psi)
                                : std::sqrt(fold.a / (fold.b * two_pi + fold.c));
        s.omega_c = local.omega_c;
        const ComplexSusceptibility chi =
            ensemble ? averaged_susceptibility(local, *ensemble, probe)
                     : susceptibility(local, probe);
        s.re_chi = chi.re;
        s.im_chi = chi.im;
        return s;
    };

    AzimuthalResponseTable table;
    table.winding_l = profile.winding_l;
    table.ensemble = ensemble;
    table.samples.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k)
        table.samples.push_back(eval(two_pi * k / n_samples));
    table.end = eval(two_pi);
    return table;
}

ThicknessResult required_thickness(const AzimuthalResponseTable& table,
                                   double lambda_m, int delta_l) {
    if (!(lambda_m > 0.0))
        throw config_error("required_thickness: lambda must be positive");
    if (delta_l == 0)
        throw config_error("required_thickness: delta_l must be nonzero");
    ThicknessResult res{};
    res.delta_l = delta_l;
    res.re_chi_0 = table.re_chi_0();
    res.re_chi_2pi = table.re_chi_2pi();
    const double d_re = res.re_chi_2pi - res.re_chi_0;
    if (std::abs(d_re) < 1e-12)
        throw config_error(
            "required_thickness: flat response, endpoint susceptibilities "
            "degenerate");
    double d = 2.0 * delta_l * lambda_m / d_re;
    res.ramp_reversed = d < 0.0;
    res.d_m = std::abs(d);

    std::ostringstream note;
    note << "computed d = " << res.d_m * 1e6 << " um (reference 71 um, ratio "
         << res.d_m / paper_thickness_m << "); Re chi endpoints "
         << res.re_chi_0 << " -> " << res.re_chi_2pi
         << (res.ramp_reversed ? "; ramp direction reversed" : "");
    res.discrepancy_note = note.str();
    return res;
}

namespace {

ModulationMap make_map(const RasterGrid& grid) {
    grid.validate_geometry();
    ModulationMap map;
    map.n = grid.n;
    map.pitch_m = grid.pitch_m;
    map.aperture_radius_m = grid.aperture_radius_m;
    map.phase.assign(static_cast<size_t>(grid.n) * grid.n, 0.0);
    map.amplitude.assign(static_cast<size_t>(grid.n) * grid.n, 1.0);
    return map;
}

double polar_angle(double x, double y) {
    double phi = std::atan2(y, x);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return phi;
}

}  // namespace

ModulationMap phase_modulation_map(const AzimuthalResponseTable& table,
                                   double d_m, double lambda_m,
                                   const RasterGrid& grid) {
    if (!(d_m > 0.0))
        throw config_error("phase_modulation_map: thickness must be positive");
    if (!(lambda_m > 0.0))
        throw config_error("phase_modulation_map: lambda must be positive");
    ModulationMap map = make_map(grid);
    const double re0 = table.re_chi_0();
    const double phase_scale = std::numbers::pi * d_m / lambda_m;
    const int l = table.winding_l;
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.pixel_y(j);
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.pixel_x(i);
            const size_t idx = static_cast<size_t>(j) * grid.n + i;
            if (grid.aperture_radius_m > 0.0 &&
                std::hypot(x, y) > grid.aperture_radius_m) {
                map.amplitude[idx] = 0.0;
                continue;
            }
            const double phi = polar_angle(x, y);
            const double psi = l == 0 ? 0.0 : std::fmod(l * phi, two_pi);
            const ComplexSusceptibility chi = table.chi_at(psi);
            map.phase[idx] = phase_scale * (chi.re - re0);
            const double alpha = two_pi * chi.im / lambda_m;
            if (chi.im < 0.0) ++map.gain_pixels;
            map.amplitude[idx] = std::exp(-0.5 * alpha * d_m);
        }
    }
    return map;
}

ModulationMap amplitude_modulation_map(const RasterGrid& fork_mask,
                                       const SystemParams& params_bright,
                                       const SystemParams& params_dark,
                                       const ProbeDetuning& probe,
                                       double d_m, double lambda_m) {
    if (!(d_m > 0.0))
        throw config_error("amplitude_modulation_map: thickness must be positive");
    if (params_dark.omega_c != 0.0)
        throw config_error("amplitude_modulation_map: dark params must have omega_c = 0");
    if (!(params_bright.omega_c >= 10.0 * params_bright.t2_over_t1()))
        throw config_error(
            "amplitude_modulation_map: bright pump must dominate the "
            "relaxation rate (omega_c >= 10*T2/T1)");
    const ComplexSusceptibility chi_bright = susceptibility(params_bright, probe);
    const ComplexSusceptibility chi_dark = susceptibility(params_dark, probe);

    ModulationMap map = make_map(fork_mask);
    const double phase_scale = std::numbers::pi * d_m / lambda_m;
    for (size_t idx = 0; idx < fork_mask.values.size(); ++idx) {
        const bool bright = fork_mask.values[idx] != 0.0;
        const ComplexSusceptibility& chi = bright ? chi_bright : chi_dark;
        // phase referenced to the bright (transmitting) regions
        map.phase[idx] = phase_scale * (chi.re - chi_bright.re);
        const double alpha = two_pi * chi.im / lambda_m;
        if (chi.im < 0.0) ++map.gain_pixels;
        map.amplitude[idx] = std::exp(-0.5 * alpha * d_m);
    }
    return map;
}

std::vector<std::pair<double, double>> transmission_profile(
    const AzimuthalResponseTable& table, double d_m, double lambda_m) {
    if (!(d_m >= 0.0))
        throw config_error("transmission_profile: thickness must be >= 0");
    std::vector<std::pair<double, double>> out;
    out.reserve(table.samples.size() + 1);
    auto push = [&](const AzimuthalResponseTable::Sample& s) {
        const double alpha = two_pi * s.im_chi / lambda_m;
        out.emplace_back(s.phi, transmission(alpha, d_m));
    };
    for (const auto& s : table.samples) push(s);
    push(table.end);
    return out;
}

TransmissionStats transmission_stats(
    const std::vector<std::pair<double, double>>& profile) {
    TransmissionStats stats{1.0, 0.0, 0.0};
    if (profile.empty()) return stats;
    stats.min_t = stats.max_t = profile.front().second;
    size_t above = 0;
    for (const auto& [phi, t] : profile) {
        stats.min_t = std::fmin(stats.min_t, t);
        stats.max_t = std::fmax(stats.max_t, t);
        if (t > 0.8) ++above;
    }
    stats.fraction_above_0p8 =
        static_cast<double>(above) / static_cast<double>(profile.size());
    return stats;
}

}  // namespace cposlm
