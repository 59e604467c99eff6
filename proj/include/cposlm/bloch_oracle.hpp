#ifndef CPOSLM_BLOCH_ORACLE_HPP
#define CPOSLM_BLOCH_ORACLE_HPP

#include <vector>

#include "cposlm/cpo_core.hpp"

namespace cposlm {

/// Knobs for the brute-force time-domain check of the closed-form
/// susceptibility. settle_time and step are in dimensionless time tau = t/T2;
/// a step <= 0, settle_time <= 0 means "use the default for these params".
struct OracleConfig {
    double omega_s = 1e-4;   ///< probe Rabi amplitude (linear-response probe)
    double settle_time = 0;  ///< 0 -> 30*T1/T2
    int demod_periods = 8;   ///< beat periods in the demodulation window
    double step = 0;         ///< 0 -> min(0.01, beat period / 2000)

    void validate() const;
};

/// Scaled polarization q = p/mu and population inversion w.
struct BlochState {
    double tau;
    complexd q;
    double w;
};

/// Integrates the two-level optical Bloch equations under the bichromatic
/// field Omega(tau) = Omega_c + Omega_s e^(-i delta_c tau) with fixed-step
/// classical RK4 from q = 0, w = -1, and returns uniformly spaced samples
/// covering the final demodulation window (an exact integer number of beat
/// periods). Requires a nonzero beat delta_c = delta_s + delta_c.
std::vector<BlochState> integrate_bloch(const SystemParams& params,
                                        const ProbeDetuning& probe,
                                        const OracleConfig& cfg);

/// First beat-frequency harmonic q1 = (1/Tw) int q(tau) e^(+i delta_c tau)
/// dtau by trapezoid over the sampled window. The window must span an
/// integer number (>= 2) of beat periods or the harmonics leak.
complexd demodulate_first_harmonic(const std::vector<BlochState>& series,
                                   double delta_beat);

/// chi = q1 / Omega_s. Independent of the closed form: pure time-domain
/// integration plus harmonic extraction.
ComplexSusceptibility oracle_susceptibility(const SystemParams& params,
                                            const ProbeDetuning& probe,
                                            const OracleConfig& cfg);

}  // namespace cposlm

#endif
