#ifndef CPOSLM_BEAM_PROPAGATION_HPP
#define CPOSLM_BEAM_PROPAGATION_HPP

#include <vector>

#include "cposlm/cpo_core.hpp"
#include "cposlm/slm_pipeline.hpp"

namespace cposlm {

/// Sampled complex scalar field on a square power-of-two grid, row-major,
/// same pixel-center convention as RasterGrid.
struct FieldGrid {
    int n = 0;
    double pitch_m = 0;
    std::vector<complexd> amplitudes;

    void validate_geometry() const;
    double pixel_x(int i) const { return (i + 0.5 - 0.5 * n) * pitch_m; }
    double pixel_y(int j) const { return (0.5 * n - j - 0.5) * pitch_m; }
    /// Total power sum |E|^2 * pitch^2.
    double power() const;
};

/// Azimuthal power decomposition: fractions[k] is the power fraction in the
/// winding-number channel l = k - l_max; residual is everything the
/// decomposition did not capture (higher harmonics, corner pixels).
struct OamSpectrum {
    int l_max = 0;
    std::vector<double> fractions;
    double residual = 0;

    double at(int l) const { return fractions[static_cast<size_t>(l + l_max)]; }
    int dominant_l() const;
};

/// Unit-peak flat-phase Gaussian exp(-r^2/waist^2).
FieldGrid gaussian_field(int n, double pitch_m, double waist_m);

/// Pointwise multiplication by the map's complex transmittance.
FieldGrid apply_map(const FieldGrid& field, const ModulationMap& map);

/// Free-space propagation by the angular-spectrum method (exact scalar
/// transfer function e^{i z sqrt(k^2 - kx^2 - ky^2)}; evanescent components
/// are zeroed). distance may be negative.
FieldGrid propagate_angular_spectrum(const FieldGrid& field, double distance_m,
                                     double lambda_m);

/// Azimuthal Fourier decomposition on pixel-width radius rings, 512 angular
/// samples per ring with bilinear interpolation.
OamSpectrum oam_spectrum(const FieldGrid& field, int l_max);

/// Second-moment beam radius sqrt(2 <r^2>) (equals the 1/e^2 intensity
/// radius for a Gaussian).
double second_moment_radius(const FieldGrid& field);

/// |amplitude|^2 raster (for serialization).
RasterGrid intensity_raster(const FieldGrid& field);

/// arg(amplitude) mapped to [0, 2pi) raster.
RasterGrid phase_raster(const FieldGrid& field);

}  // namespace cposlm

#endif
