#ifndef CPOSLM_ENSEMBLE_HPP
#define CPOSLM_ENSEMBLE_HPP

#include "cposlm/cpo_core.hpp"

namespace cposlm {

/// Which detuning is held fixed per dot while averaging over the ensemble.
/// One laser pair illuminates all dots, so the pump-probe beat is the same
/// everywhere and only the dot transition frequency varies: fixed_beat.
/// fixed_probe keeps delta_s per dot instead (for comparison only).
enum class AveragingConvention { fixed_beat, fixed_probe };

/// Gaussian distribution of pump-exciton detunings across the dot ensemble.
struct EnsembleSpec {
    double sigma_c = 0.15;    ///< half-width (dimensionless detuning)
    double truncation = 6.0;  ///< integrate over center +- truncation*sigma_c
    int nodes = 257;          ///< Simpson node count, odd
    AveragingConvention convention = AveragingConvention::fixed_beat;

    void validate() const;
};

/// Normalized Gaussian weight centered on params-style delta_c.
/// sigma_c = 0 is a degenerate distribution: error, use the point evaluation.
double gaussian_weight(const EnsembleSpec& spec, double center, double delta_g);

/// Susceptibility averaged over the detuning distribution by composite
/// Simpson quadrature, renormalized by the quadrature of the weight over the
/// same truncated interval. The distribution is centered on params.delta_c.
/// A doubled-node check guards convergence.
ComplexSusceptibility averaged_susceptibility(const SystemParams& params,
                                              const EnsembleSpec& spec,
                                              const ProbeDetuning& probe);

}  // namespace cposlm

#endif
