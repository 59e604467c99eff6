#include "cposlm/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "cposlm/errors.hpp"

namespace cposlm {

void EnsembleSpec::validate() const {
    if (!(sigma_c >= 0.0) || !std::isfinite(sigma_c))
        throw config_error("sigma_c must be non-negative and finite");
    if (!(truncation >= 4.0))
        throw config_error("ensemble truncation must be >= 4 half-widths");
    if (nodes < 33 || nodes % 2 == 0)
        throw config_error("ensemble nodes must be odd and >= 33");
}

double gaussian_weight(const EnsembleSpec& spec, double center, double delta_g) {
    if (!(spec.sigma_c > 0.0))
        throw config_error(
            "gaussian_weight: sigma_c = 0 is degenerate; evaluate the point "
            "susceptibility instead");
    const double z = (delta_g - center) / spec.sigma_c;
    return std::exp(-0.5 * z * z) /
           (std::sqrt(2.0 * std::numbers::pi) * spec.sigma_c);
}

namespace {

// Composite Simpson over the truncated interval; returns the weight-
// normalized average of chi. Summation order is fixed (ascending node
// index) for bit-reproducibility.
complexd simpson_average(const SystemParams& params, const EnsembleSpec& spec,
                         const ProbeDetuning& probe, int nodes) {
    const double center = params.delta_c;
    const double half = spec.truncation * spec.sigma_c;
    const double h = 2.0 * half / (nodes - 1);
    const double beat = probe.delta_s + center;  // shared laser beat

    complexd chi_sum = 0.0;
    double weight_sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double delta_g = center - half + i * h;
        const double simpson_w =
            (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double g = gaussian_weight(spec, center, delta_g) * simpson_w;

        SystemParams dot = params;
        dot.delta_c = delta_g;
        ProbeDetuning dot_probe{};
        dot_probe.delta_s = spec.convention == AveragingConvention::fixed_beat
                                ? beat - delta_g
                                : probe.delta_s;
        chi_sum += g * susceptibility(dot, dot_probe).value();
        weight_sum += g;
    }
    return chi_sum / weight_sum;
}

}  // namespace

ComplexSusceptibility averaged_susceptibility(const SystemParams& params,
                                              const EnsembleSpec& spec,
                                              const ProbeDetuning& probe) {
    params.validate();
    probe.validate();
    spec.validate();
    if (spec.sigma_c == 0.0) return susceptibility(params, probe);

    const complexd base = simpson_average(params, spec, probe, spec.nodes);
    const complexd fine = simpson_average(params, spec, probe, 2 * spec.nodes - 1);
    const double scale = std::max(std::abs(base), 1e-12);
    if (std::abs(fine - base) / scale > 1e-6)
        throw convergence_error(
            "averaged_susceptibility: quadrature not converged; increase nodes");
    return {base.real(), base.imag()};
}

}  // namespace cposlm
