#include "cposlm/beam_propagation.hpp"

#include <cmath>
#include <numbers>

#include "cposlm/errors.hpp"
#include "doctest.h"

using namespace cposlm;

namespace {
constexpr double lambda = 530e-9;
constexpr double two_pi = 2.0 * std::numbers::pi;

// small scene resolving the waist well: 256 x 256, 40 um pitch, 1 mm waist
FieldGrid small_gaussian() { return gaussian_field(256, 40e-6, 1e-3); }

FieldGrid with_phase_winding(FieldGrid field, int l) {
    using namespace std::complex_literals;
    for (int j = 0; j < field.n; ++j)
        for (int i = 0; i < field.n; ++i) {
            const double phi = std::atan2(field.pixel_y(j), field.pixel_x(i));
            field.amplitudes[static_cast<size_t>(j) * field.n + i] *=
                std::exp(1i * (l * phi));
        }
    return field;
}
}  // namespace

TEST_CASE("gaussian field values") {
    const FieldGrid g = small_gaussian();
    // innermost pixel sits at (pitch/2, -pitch/2), almost on axis
    const int c = g.n / 2;
    const double x0 = g.pixel_x(c);
    const double y0 = g.pixel_y(c);
    CHECK(std::abs(g.amplitudes[static_cast<size_t>(c) * g.n + c]) ==
          doctest::Approx(std::exp(-(x0 * x0 + y0 * y0) / 1e-6)));
    CHECK(std::abs(g.amplitudes[static_cast<size_t>(c) * g.n + c]) ==
          doctest::Approx(1.0).epsilon(1e-3));
    // r = waist: 25 pixels out along x from the axis
    const double x = g.pixel_x(c + 25);
    const double expect = std::exp(-x * x / (1e-3 * 1e-3) -
                                   g.pixel_y(c) * g.pixel_y(c) / 1e-6);
    CHECK(std::abs(g.amplitudes[static_cast<size_t>(c) * g.n + c + 25]) ==
          doctest::Approx(expect));
}

TEST_CASE("gaussian sampling guards") {
    CHECK_THROWS_AS(gaussian_field(256, 40e-6, 1e-4), config_error);   // waist < 4 px
    CHECK_THROWS_AS(gaussian_field(256, 40e-6, 5e-3), config_error);   // waist > extent/4
    CHECK_THROWS_AS(gaussian_field(255, 40e-6, 1e-3), config_error);   // not a power of 2
}

TEST_CASE("gaussian OAM spectrum is pure l = 0") {
    const OamSpectrum spec = oam_spectrum(small_gaussian(), 4);
    CHECK(spec.at(0) > 0.999);
    double sum = 0.0;
    for (double f : spec.fractions) sum += f;
    CHECK(sum <= 1.0 + 1e-9);
}

TEST_CASE("exact e^(i phi) winding lands in the l = 1 channel") {
    const OamSpectrum spec = oam_spectrum(with_phase_winding(small_gaussian(), 1), 4);
    CHECK(spec.at(1) > 0.999);
    CHECK(spec.dominant_l() == 1);
    const OamSpectrum spec3 =
        oam_spectrum(with_phase_winding(small_gaussian(), -3), 4);
    // higher |l| loses a little more to pixelation near the core
    CHECK(spec3.at(-3) > 0.99);
    CHECK(spec3.dominant_l() == -3);
}

TEST_CASE("apply_map: identity and unimodular maps conserve power") {
    const FieldGrid g = small_gaussian();
    ModulationMap identity;
    identity.n = g.n;
    identity.pitch_m = g.pitch_m;
    identity.phase.assign(g.amplitudes.size(), 0.0);
    identity.amplitude.assign(g.amplitudes.size(), 1.0);
    const FieldGrid same = apply_map(g, identity);
    for (size_t i = 0; i < g.amplitudes.size(); ++i)
        CHECK(same.amplitudes[i] == g.amplitudes[i]);

    ModulationMap swirl = identity;
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            swirl.phase[static_cast<size_t>(j) * g.n + i] =
                std::atan2(g.pixel_y(j), g.pixel_x(i));
    const FieldGrid twisted = apply_map(g, swirl);
    CHECK(twisted.power() == doctest::Approx(g.power()).epsilon(1e-12));

    ModulationMap wrong = identity;
    wrong.n = 128;
    wrong.phase.resize(128 * 128);
    wrong.amplitude.resize(128 * 128);
    CHECK_THROWS_AS(apply_map(g, wrong), config_error);
}

TEST_CASE("zero-distance propagation is the identity") {
    const FieldGrid g = small_gaussian();
    const FieldGrid same = propagate_angular_spectrum(g, 0.0, lambda);
    for (size_t i = 0; i < g.amplitudes.size(); ++i)
        CHECK(std::abs(same.amplitudes[i] - g.amplitudes[i]) < 1e-12);
}

TEST_CASE("propagation conserves power for paraxial fields") {
    const FieldGrid g = small_gaussian();
    const double z_r = std::numbers::pi * 1e-3 * 1e-3 / lambda;
    const FieldGrid far = propagate_angular_spectrum(g, z_r, lambda);
    CHECK(far.power() == doctest::Approx(g.power()).epsilon(1e-9));
}

TEST_CASE("gaussian beam waist evolution matches the analytic formula") {
    const double w0 = 1e-3;
    const FieldGrid g = gaussian_field(512, 40e-6, w0);
    const double z_r = std::numbers::pi * w0 * w0 / lambda;
    CHECK(second_moment_radius(g) == doctest::Approx(w0).epsilon(1e-3));
    for (double zf : {0.5, 1.0, 2.0}) {
        const FieldGrid out = propagate_angular_spectrum(g, zf * z_r, lambda);
        const double expect = w0 * std::sqrt(1.0 + zf * zf);
        CHECK(second_moment_radius(out) == doctest::Approx(expect).epsilon(0.01));
    }
}

TEST_CASE("reciprocity: forward then backward returns the input") {
    const FieldGrid g = small_gaussian();
    const double z = 0.5;
    const FieldGrid there = propagate_angular_spectrum(g, z, lambda);
    const FieldGrid back = propagate_angular_spectrum(there, -z, lambda);
    double worst = 0.0;
    for (size_t i = 0; i < g.amplitudes.size(); ++i)
        worst = std::max(worst, std::abs(back.amplitudes[i] - g.amplitudes[i]));
    CHECK(worst < 1e-9);
}

TEST_CASE("vortex null survives propagation") {
    const FieldGrid vortex = with_phase_winding(small_gaussian(), 1);
    const double z_r = std::numbers::pi * 1e-3 * 1e-3 / lambda;
    const FieldGrid out = propagate_angular_spectrum(vortex, 0.25 * z_r, lambda);
    const RasterGrid intensity = intensity_raster(out);
    double peak = 0.0;
    for (double v : intensity.values) peak = std::max(peak, v);
    // the axis sits between pixels; the interpolated field there cancels
    // for odd l, while nearest pixels legitimately carry ~(pitch/ring)^2
    const int c = out.n / 2;
    std::complex<double> axis = 0.0;
    for (int j = c - 1; j <= c; ++j)
        for (int i = c - 1; i <= c; ++i)
            axis += out.amplitudes[static_cast<size_t>(j) * out.n + i];
    CHECK(std::norm(axis / 4.0) < 1e-3 * peak);
    CHECK(intensity.at(c, c) < 1e-2 * peak);
}

TEST_CASE("phase raster is in [0, 2pi)") {
    const FieldGrid vortex = with_phase_winding(small_gaussian(), 2);
    const RasterGrid ph = phase_raster(vortex);
    for (double v : ph.values) {
        CHECK(v >= 0.0);
        CHECK(v < two_pi);
    }
}
