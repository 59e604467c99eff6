#include "cposlm/pump_masks.hpp"

#include <cmath>
#include <numbers>

#include "cposlm/errors.hpp"

namespace cposlm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// atan2 mapped to [0, 2pi), measured from the +x axis.
double polar_angle(double x, double y) {
    double phi = std::atan2(y, x);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return phi;
}
}  // namespace

void AzimuthalPumpProfile::validate() const {
    if (!(a > 0.0)) throw config_error("pump profile: a must be positive");
    if (!(c > 0.0)) throw config_error("pump profile: c must be positive");
    if (!(b * two_pi + c > 0.0))
        throw config_error("pump profile: b*psi + c must stay positive on [0, 2pi]");
    if (winding_l < 0) throw config_error("pump profile: winding_l must be >= 0");
}

void ForkGratingSpec::validate() const {
    if (!(period_m > 0.0)) throw config_error("fork grating: period must be positive");
    if (aperture_radius_m < 0.0)
        throw config_error("fork grating: aperture radius must be >= 0");
}

void RasterGrid::validate_geometry() const {
    if (n <= 0 || n % 2 != 0)
        throw config_error("raster grid: n must be positive and even");
    if (!(pitch_m > 0.0)) throw config_error("raster grid: pitch must be positive");
    if (aperture_radius_m < 0.0)
        throw config_error("raster grid: aperture radius must be >= 0");
}

double azimuthal_rabi(const AzimuthalPumpProfile& profile, double phi) {
    profile.validate();
    const double psi =
        profile.winding_l == 0 ? 0.0 : std::fmod(profile.winding_l * phi, two_pi);
    const double den = profile.b * psi + profile.c;
    if (!(den > 0.0))
        throw config_error("azimuthal_rabi: b*psi + c <= 0 at this angle");
    return std::sqrt(profile.a / den);
}

namespace {

template <typename PerPixel>
RasterGrid render(RasterGrid grid, PerPixel f) {
    grid.validate_geometry();
    grid.values.assign(static_cast<size_t>(grid.n) * grid.n, 0.0);
    const double r_cut = grid.aperture_radius_m;
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.pixel_y(j);
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.pixel_x(i);
            const double r = std::hypot(x, y);
            if (r_cut > 0.0 && r > r_cut) continue;
            grid.at(i, j) = f(r, polar_angle(x, y));
        }
    }
    return grid;
}

}  // namespace

RasterGrid render_pump_rabi(const AzimuthalPumpProfile& profile,
                            RasterGrid grid) {
    profile.validate();
    return render(std::move(grid), [&](double, double phi) {
        return azimuthal_rabi(profile, phi);
    });
}

RasterGrid render_pump_intensity(const AzimuthalPumpProfile& profile,
                                 RasterGrid grid) {
    profile.validate();
    RasterGrid out = render(std::move(grid), [&](double, double phi) {
        const double omega = azimuthal_rabi(profile, phi);
        return omega * omega;
    });
    double peak = 0.0;
    for (double v : out.values) peak = std::fmax(peak, v);
    if (peak > 0.0)
        for (double& v : out.values) v /= peak;
    return out;
}

double fork_phase_function(const ForkGratingSpec& spec, double r, double phi) {
    return spec.charge_p * phi / std::numbers::pi -
           (2.0 * r / spec.period_m) * std::cos(phi);
}

RasterGrid render_fork_mask(const ForkGratingSpec& spec, RasterGrid grid) {
    spec.validate();
    grid.validate_geometry();
    if (spec.period_m < 4.0 * grid.pitch_m)
        throw sampling_error(
            "render_fork_mask: grating period under 4 pixel pitches");
    RasterGrid out = render(std::move(grid), [&](double r, double phi) {
        const double f = fork_phase_function(spec, r, phi);
        const long long cell = static_cast<long long>(std::floor(f));
        return (cell % 2 == 0) ? 1.0 : 0.0;
    });
    // aperture override: the renderer already zeroed outside pixels (opaque)
    return out;
}

}  // namespace cposlm
