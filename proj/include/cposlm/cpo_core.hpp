#ifndef CPOSLM_CPO_CORE_HPP
#define CPOSLM_CPO_CORE_HPP

#include <complex>

namespace cposlm {

using complexd = std::complex<double>;

/// Driven two-level exciton configuration, everything dimensionless except
/// the relaxation times. Rabi frequency and detunings are normalized by the
/// dephasing time T2.
struct SystemParams {
    double t1_s;      ///< exciton lifetime, seconds
    double t2_s;      ///< exciton dephasing time, seconds
    double omega_c;   ///< pump Rabi frequency (dimensionless)
    double delta_c;   ///< pump-exciton detuning (dimensionless)

    double t1_over_t2() const { return t1_s / t2_s; }
    double t2_over_t1() const { return t2_s / t1_s; }

    /// Throws config_error on non-positive lifetimes, negative omega_c, or
    /// non-finite values.
    void validate() const;
};

/// Probe-exciton detuning; the beat detuning against the pump follows as
/// delta_beat() = delta_s + delta_c.
struct ProbeDetuning {
    double delta_s;

    void validate() const;
};

struct ComplexSusceptibility {
    double re;
    double im;

    complexd value() const { return {re, im}; }
};

struct OpticalConstants {
    double n;         ///< refractive index
    double alpha;     ///< absorption coefficient, 1/m
    double lambda_m;  ///< probe wavelength, m
};

/// Paper-point defaults: room-temperature SQD relaxation times, pump at
/// Omega_c = 0.3 slightly above resonance.
SystemParams paper_point();

constexpr double paper_lambda_m = 530e-9;

/// Steady-state population inversion w0 of the pump-driven exciton,
/// w0 = -(1+Dc^2)/(1+Dc^2+4*Oc^2*T1/T2). Always in [-1, 0).
double population_inversion(const SystemParams& params);

/// The resonance denominator D(delta_c) of the first-harmonic polarization.
complexd cpo_denominator(const SystemParams& params, double delta_beat);

/// Dimensionless first-order pump-probe susceptibility of the driven
/// two-level exciton (closed form, steady state).
ComplexSusceptibility susceptibility(const SystemParams& params,
                                     const ProbeDetuning& probe);

/// n = 1 + Re(chi)/2, alpha = 2*pi*Im(chi)/lambda.
OpticalConstants optical_constants(const ComplexSusceptibility& chi,
                                   double lambda_m);

/// Intensity transmission e^(-alpha*d). Clamped to [0,1] for alpha >= 0;
/// values > 1 (gain, alpha < 0) are returned unclamped.
double transmission(double alpha, double thickness_m);

}  // namespace cposlm

#endif
