#include "cposlm/beam_propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>

#include "cposlm/errors.hpp"

namespace cposlm {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void FieldGrid::validate_geometry() const {
    if (n <= 0 || (n & (n - 1)) != 0)
        throw config_error("field grid: n must be a power of two");
    if (!(pitch_m > 0.0)) throw config_error("field grid: pitch must be positive");
}

double FieldGrid::power() const {
    double p = 0.0;
    for (const complexd& a : amplitudes) p += std::norm(a);
    return p * pitch_m * pitch_m;
}

int OamSpectrum::dominant_l() const {
    int best = -l_max;
    for (int l = -l_max; l <= l_max; ++l)
        if (at(l) > at(best)) best = l;
    return best;
}

FieldGrid gaussian_field(int n, double pitch_m, double waist_m) {
    FieldGrid field;
    field.n = n;
    field.pitch_m = pitch_m;
    field.validate_geometry();
    if (!(waist_m >= 4.0 * pitch_m))
        throw config_error("gaussian_field: waist under 4 pixel pitches");
    if (!(waist_m <= 0.25 * n * pitch_m))
        throw config_error("gaussian_field: waist over a quarter of the grid");
    field.amplitudes.resize(static_cast<size_t>(n) * n);
    const double inv_w2 = 1.0 / (waist_m * waist_m);
    for (int j = 0; j < n; ++j) {
        const double y = field.pixel_y(j);
        for (int i = 0; i < n; ++i) {
            const double x = field.pixel_x(i);
            field.amplitudes[static_cast<size_t>(j) * n + i] =
                std::exp(-(x * x + y * y) * inv_w2);
        }
    }
    return field;
}

FieldGrid apply_map(const FieldGrid& field, const ModulationMap& map) {
    field.validate_geometry();
    if (map.n != field.n || map.pitch_m != field.pitch_m)
        throw config_error("apply_map: geometry mismatch");
    FieldGrid out = field;
    for (size_t idx = 0; idx < out.amplitudes.size(); ++idx)
        out.amplitudes[idx] *= map.transmittance(idx);
    return out;
}

FieldGrid propagate_angular_spectrum(const FieldGrid& field, double distance_m,
                                     double lambda_m) {
    field.validate_geometry();
    if (!(lambda_m > 0.0))
        throw config_error("propagate: lambda must be positive");
    const int n = field.n;
    const size_t count = static_cast<size_t>(n) * n;

    std::vector<complexd> buf(field.amplitudes);
    fftw_complex* data = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan fwd = fftw_plan_dft_2d(n, n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);

    const double k = two_pi / lambda_m;
    const double dk = two_pi / (n * field.pitch_m);
    using namespace std::complex_literals;
    for (int j = 0; j < n; ++j) {
        const double ky = dk * (j < n / 2 ? j : j - n);
        for (int i = 0; i < n; ++i) {
            const double kx = dk * (i < n / 2 ? i : i - n);
            const double kz2 = k * k - kx * kx - ky * ky;
            complexd& c = buf[static_cast<size_t>(j) * n + i];
            if (kz2 > 0.0)
                c *= std::exp(1i * (distance_m * std::sqrt(kz2)));
            else
                c = 0.0;  // evanescent
        }
    }

    fftw_plan inv = fftw_plan_dft_2d(n, n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(inv);
    fftw_destroy_plan(inv);

    FieldGrid out;
    out.n = n;
    out.pitch_m = field.pitch_m;
    out.amplitudes = std::move(buf);
    const double scale = 1.0 / static_cast<double>(count);
    for (complexd& c : out.amplitudes) c *= scale;
    return out;
}

namespace {

complexd bilinear(const FieldGrid& field, double x, double y) {
    const int n = field.n;
    const double fi = x / field.pitch_m + 0.5 * n - 0.5;
    const double fj = 0.5 * n - 0.5 - y / field.pitch_m;
    const int i0 = static_cast<int>(std::floor(fi));
    const int j0 = static_cast<int>(std::floor(fj));
    const double tx = fi - i0;
    const double ty = fj - j0;
    auto value = [&](int i, int j) -> complexd {
        if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
        return field.amplitudes[static_cast<size_t>(j) * n + i];
    };
    return (1 - tx) * (1 - ty) * value(i0, j0) + tx * (1 - ty) * value(i0 + 1, j0) +
           (1 - tx) * ty * value(i0, j0 + 1) + tx * ty * value(i0 + 1, j0 + 1);
}

}  // namespace

OamSpectrum oam_spectrum(const FieldGrid& field, int l_max) {
    field.validate_geometry();
    if (l_max < 1) throw config_error("oam_spectrum: l_max must be >= 1");

    constexpr int n_angles = 512;
    const int n_rings = field.n / 2 - 1;
    OamSpectrum spec;
    spec.l_max = l_max;
    spec.fractions.assign(static_cast<size_t>(2 * l_max) + 1, 0.0);

    using namespace std::complex_literals;
    std::vector<complexd> ring(n_angles);
    double total_power = 0.0;
    for (int kr = 0; kr < n_rings; ++kr) {
        const double r = (kr + 0.5) * field.pitch_m;
        double ring_power = 0.0;
        for (int m = 0; m < n_angles; ++m) {
            const double phi = two_pi * m / n_angles;
            ring[m] = bilinear(field, r * std::cos(phi), r * std::sin(phi));
            ring_power += std::norm(ring[m]);
        }
        total_power += ring_power / n_angles * r;
        for (int l = -l_max; l <= l_max; ++l) {
            complexd c = 0.0;
            for (int m = 0; m < n_angles; ++m) {
                const double phi = two_pi * m / n_angles;
                c += ring[m] * std::exp(-1i * (l * phi));
            }
            c /= static_cast<double>(n_angles);
            spec.fractions[static_cast<size_t>(l + l_max)] += std::norm(c) * r;
        }
    }
    if (total_power > 0.0)
        for (double& f : spec.fractions) f /= total_power;
    double captured = 0.0;
    for (double f : spec.fractions) captured += f;
    spec.residual = std::fmax(0.0, 1.0 - captured);
    return spec;
}

double second_moment_radius(const FieldGrid& field) {
    double power = 0.0;
    double r2_weighted = 0.0;
    for (int j = 0; j < field.n; ++j) {
        const double y = field.pixel_y(j);
        for (int i = 0; i < field.n; ++i) {
            const double x = field.pixel_x(i);
            const double w = std::norm(
                field.amplitudes[static_cast<size_t>(j) * field.n + i]);
            power += w;
            r2_weighted += w * (x * x + y * y);
        }
    }
    if (power <= 0.0) throw config_error("second_moment_radius: zero power");
    return std::sqrt(2.0 * r2_weighted / power);
}

RasterGrid intensity_raster(const FieldGrid& field) {
    RasterGrid out;
    out.n = field.n;
    out.pitch_m = field.pitch_m;
    out.values.resize(field.amplitudes.size());
    for (size_t i = 0; i < field.amplitudes.size(); ++i)
        out.values[i] = std::norm(field.amplitudes[i]);
    return out;
}

RasterGrid phase_raster(const FieldGrid& field) {
    RasterGrid out;
    out.n = field.n;
    out.pitch_m = field.pitch_m;
    out.values.resize(field.amplitudes.size());
    for (size_t i = 0; i < field.amplitudes.size(); ++i) {
        double p = std::arg(field.amplitudes[i]);
        if (p < 0.0) p += two_pi;
        out.values[i] = p;
    }
    return out;
}

}  // namespace cposlm
