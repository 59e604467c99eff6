#include "cposlm/cpo_core.hpp"

#include <cmath>
#include <numbers>

#include "cposlm/errors.hpp"

namespace cposlm {

void SystemParams::validate() const {
    if (!(t1_s > 0.0) || !std::isfinite(t1_s))
        throw config_error("t1_s must be positive and finite");
    if (!(t2_s > 0.0) || !std::isfinite(t2_s))
        throw config_error("t2_s must be positive and finite");
    if (!(omega_c >= 0.0) || !std::isfinite(omega_c))
        throw config_error("omega_c must be non-negative and finite");
    if (!std::isfinite(delta_c))
        throw config_error("delta_c must be finite");
}

void ProbeDetuning::validate() const {
    if (!std::isfinite(delta_s))
        throw config_error("delta_s must be finite");
}

SystemParams paper_point() {
    return SystemParams{1.5e-11, 3e-13, 0.3, 0.05};
}

double population_inversion(const SystemParams& params) {
    params.validate();
    const double d2 = 1.0 + params.delta_c * params.delta_c;
    const double sat = 4.0 * params.omega_c * params.omega_c * params.t1_over_t2();
    return -d2 / (d2 + sat);
}

complexd cpo_denominator(const SystemParams& params, double delta_beat) {
    params.validate();
    using namespace std::complex_literals;
    const double gamma = params.t2_over_t1();
    const double d2 = 1.0 + params.delta_c * params.delta_c;
    const complexd one_minus_id = 1.0 - 1i * delta_beat;
    const double oc2 = params.omega_c * params.omega_c;
    return (gamma - 1i * delta_beat) * d2 *
               (one_minus_id * one_minus_id + params.delta_c * params.delta_c) +
           4.0 * oc2 * one_minus_id * d2;
}

ComplexSusceptibility susceptibility(const SystemParams& params,
                                     const ProbeDetuning& probe) {
    params.validate();
    probe.validate();
    using namespace std::complex_literals;
    const double dc = probe.delta_s + params.delta_c;  // beat detuning
    const double w0 = population_inversion(params);
    const complexd den = cpo_denominator(params, dc);
    if (std::abs(den) < 1e-300)
        throw config_error("susceptibility: CPO denominator is singular");
    const double oc2 = params.omega_c * params.omega_c;
    const complexd lead = -1i * w0 / (1.0 + 1i * (params.delta_c - dc));
    const complexd brace =
        1.0 - (2.0 * oc2 / den) * (1.0 + 1i * params.delta_c) *
                  (1.0 - 1i * (params.delta_c + dc)) * (2.0 - 1i * dc);
    const complexd chi = lead * brace;
    return {chi.real(), chi.imag()};
}

OpticalConstants optical_constants(const ComplexSusceptibility& chi,
                                   double lambda_m) {
    if (!(lambda_m > 0.0))
        throw config_error("optical_constants: lambda must be positive");
    return {1.0 + 0.5 * chi.re, 2.0 * std::numbers::pi * chi.im / lambda_m,
            lambda_m};
}

double transmission(double alpha, double thickness_m) {
    if (!(thickness_m >= 0.0))
        throw config_error("transmission: thickness must be non-negative");
    const double t = std::exp(-alpha * thickness_m);
    if (alpha >= 0.0) return std::fmin(1.0, std::fmax(0.0, t));
    return t;  // gain: > 1, caller flags it
}

}  // namespace cposlm
