#ifndef CPOSLM_PUMP_MASKS_HPP
#define CPOSLM_PUMP_MASKS_HPP

#include <vector>

namespace cposlm {

/// Azimuthal pump profile Omega_c(phi) = sqrt(a / (b*psi + c)) with the
/// folded angle psi = (l*phi) mod 2pi (psi = 0 for l = 0). The branch cut
/// sits on the +x axis.
struct AzimuthalPumpProfile {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    int winding_l = 1;

    void validate() const;
};

/// Forked binary grating: boundaries are the level sets of
/// f(r, phi) = p*phi/pi - (2r/D)*cos(phi) at integer values.
struct ForkGratingSpec {
    int charge_p = 1;
    double period_m = 1e-3;         ///< fringe period far from the fork center
    double aperture_radius_m = 0;   ///< 0 = no aperture

    void validate() const;
};

/// Square scalar raster, row-major. Pixel (i, j) is centered at
/// x = (i + 0.5 - n/2)*pitch, y = (n/2 - j - 0.5)*pitch (row 0 on top).
struct RasterGrid {
    int n = 0;
    double pitch_m = 0;
    double aperture_radius_m = 0;  ///< 0 = no aperture
    std::vector<double> values;    ///< size n*n once rendered

    void validate_geometry() const;
    double& at(int i, int j) { return values[static_cast<size_t>(j) * n + i]; }
    double at(int i, int j) const { return values[static_cast<size_t>(j) * n + i]; }
    double pixel_x(int i) const { return (i + 0.5 - 0.5 * n) * pitch_m; }
    double pixel_y(int j) const { return (0.5 * n - j - 0.5) * pitch_m; }
};

/// Pump Rabi frequency at azimuthal angle phi in [0, 2pi).
double azimuthal_rabi(const AzimuthalPumpProfile& profile, double phi);

/// Pump intensity Omega_c(phi)^2 rasterized and normalized to max 1;
/// pixels outside the grid aperture (if set) are 0.
RasterGrid render_pump_intensity(const AzimuthalPumpProfile& profile,
                                 RasterGrid grid);

/// Unnormalized Rabi frequency raster (what the physics consumes).
RasterGrid render_pump_rabi(const AzimuthalPumpProfile& profile,
                            RasterGrid grid);

/// Fork grating phase function f(r, phi).
double fork_phase_function(const ForkGratingSpec& spec, double r, double phi);

/// Binary fork mask: 1 (transparent) iff floor(f) is even.
RasterGrid render_fork_mask(const ForkGratingSpec& spec, RasterGrid grid);

}  // namespace cposlm

#endif
