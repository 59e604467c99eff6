#include "cposlm/bloch_oracle.hpp"

#include <cmath>
#include <numbers>

#include "cposlm/errors.hpp"

namespace cposlm {

void OracleConfig::validate() const {
    if (!(omega_s > 0.0)) throw config_error("oracle omega_s must be positive");
    if (settle_time < 0.0) throw config_error("oracle settle_time must be >= 0");
    if (demod_periods < 2) throw config_error("oracle demod_periods must be >= 2");
    if (step < 0.0) throw config_error("oracle step must be >= 0");
}

namespace {

struct Derivs {
    complexd dq;
    double dw;
};

// Two-level Bloch equations in tau = t/T2 with the full-amplitude Rabi
// convention (matches the closed form's saturation scale 4*Oc^2*T1/T2):
//   dq/dtau = -(1 + i*Dc) q - i w Omega(tau)
//   dw/dtau = -(T2/T1)(w + 1) + 4 Im(q Omega*(tau))
inline Derivs rhs(double tau, const complexd& q, double w, double delta_c,
                  double gamma, double omega_c, double omega_s,
                  double delta_beat) {
    using namespace std::complex_literals;
    const complexd field =
        omega_c + omega_s * std::exp(-1i * delta_beat * tau);
    return {-(1.0 + 1i * delta_c) * q - 1i * w * field,
            -gamma * (w + 1.0) + 4.0 * std::imag(q * std::conj(field))};
}

}  // namespace

std::vector<BlochState> integrate_bloch(const SystemParams& params,
                                        const ProbeDetuning& probe,
                                        const OracleConfig& cfg) {
    params.validate();
    probe.validate();
    cfg.validate();

    const double delta_beat = probe.delta_s + params.delta_c;
    if (delta_beat == 0.0)
        throw config_error(
            "integrate_bloch: zero pump-probe beat; perturb delta_s");

    const double beat_period = 2.0 * std::numbers::pi / std::abs(delta_beat);
    const double settle =
        cfg.settle_time > 0.0 ? cfg.settle_time : 30.0 * params.t1_over_t2();
    double step = cfg.step > 0.0 ? cfg.step : std::min(0.01, beat_period / 2000.0);

    // Make the demodulation window an exact integer number of uniform steps.
    const double window = cfg.demod_periods * beat_period;
    const long n_window = std::lround(window / step);
    const double h = window / static_cast<double>(n_window);
    const long n_settle = static_cast<long>(std::ceil(settle / h));

    const double gamma = params.t2_over_t1();
    complexd q = 0.0;
    double w = -1.0;
    double tau = 0.0;

    auto rk4_step = [&](double t, complexd& q_io, double& w_io) {
        const Derivs k1 = rhs(t, q_io, w_io, params.delta_c, gamma,
                              params.omega_c, cfg.omega_s, delta_beat);
        const Derivs k2 = rhs(t + 0.5 * h, q_io + 0.5 * h * k1.dq,
                              w_io + 0.5 * h * k1.dw, params.delta_c, gamma,
                              params.omega_c, cfg.omega_s, delta_beat);
        const Derivs k3 = rhs(t + 0.5 * h, q_io + 0.5 * h * k2.dq,
                              w_io + 0.5 * h * k2.dw, params.delta_c, gamma,
                              params.omega_c, cfg.omega_s, delta_beat);
        const Derivs k4 = rhs(t + h, q_io + h * k3.dq, w_io + h * k3.dw,
                              params.delta_c, gamma, params.omega_c,
                              cfg.omega_s, delta_beat);
        const double dw = h / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
        if (std::abs(dw) > 0.1)
            throw convergence_error(
                "integrate_bloch: step too large for stable integration");
        q_io += h / 6.0 * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
        w_io += dw;
    };

    for (long i = 0; i < n_settle; ++i) {
        rk4_step(tau, q, w);
        tau += h;
    }

    std::vector<BlochState> series;
    series.reserve(static_cast<size_t>(n_window) + 1);
    series.push_back({tau, q, w});
    for (long i = 0; i < n_window; ++i) {
        rk4_step(tau, q, w);
        tau += h;
        series.push_back({tau, q, w});
    }
    return series;
}

complexd demodulate_first_harmonic(const std::vector<BlochState>& series,
                                   double delta_beat) {
    if (series.size() < 3)
        throw sampling_error("demodulate: series too short");
    const double window = series.back().tau - series.front().tau;
    const double periods =
        window * std::abs(delta_beat) / (2.0 * std::numbers::pi);
    if (periods < 2.0 - 1e-9 ||
        std::abs(periods - std::round(periods)) > 1e-6)
        throw sampling_error(
            "demodulate: window is not an integer number (>= 2) of beat "
            "periods; harmonics would leak");

    using namespace std::complex_literals;
    const double h = window / static_cast<double>(series.size() - 1);
    complexd acc = 0.0;
    for (size_t i = 0; i < series.size(); ++i) {
        const complexd term =
            series[i].q * std::exp(1i * delta_beat * series[i].tau);
        acc += (i == 0 || i == series.size() - 1) ? 0.5 * term : term;
    }
    return acc * h / window;
}

ComplexSusceptibility oracle_susceptibility(const SystemParams& params,
                                            const ProbeDetuning& probe,
                                            const OracleConfig& cfg) {
    const auto series = integrate_bloch(params, probe, cfg);
    const double delta_beat = probe.delta_s + params.delta_c;
    const complexd q1 = demodulate_first_harmonic(series, delta_beat);
    const complexd chi = q1 / cfg.omega_s;
    return {chi.real(), chi.imag()};
}

}  // namespace cposlm
