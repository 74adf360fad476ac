#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/quadrature.hpp"
#include "isaclim/rng.hpp"

namespace isaclim::hw {

/// Two-parameter AM-AM / AM-PM amplifier model.
/// A(r) = alpha_a r / (1 + beta_a r^2),  Phi(r) = alpha_phi r^2 / (1 + beta_phi r^2).
/// The AM-AM curve peaks at r = 1/sqrt(beta_a) with value alpha_a / (2 sqrt(beta_a)).
struct SalehParams {
    double alpha_a = 2.0;
    double beta_a = 1.0;
    double alpha_phi = pi / 3.0;
    double beta_phi = 1.0;

    void validate() const {
        check_positive(alpha_a, "SalehParams::alpha_a");
        check_positive(beta_a, "SalehParams::beta_a");
        check_positive(alpha_phi, "SalehParams::alpha_phi");
        check_positive(beta_phi, "SalehParams::beta_phi");
    }

    double am_am(double r) const { return alpha_a * r / (1.0 + beta_a * r * r); }
    double am_pm(double r) const { return alpha_phi * r * r / (1.0 + beta_phi * r * r); }
    double peak_output() const { return alpha_a / (2.0 * std::sqrt(beta_a)); }
};

/// Ideal envelope clipper: linear up to the saturation amplitude, flat beyond.
/// kappa = p_in / a_sat^2 is the drive level (input power over saturation power).
struct SoftLimiterParams {
    double a_sat = 1.0;  // sqrt(W)
    double p_in = 1.0;   // W

    void validate() const {
        check_positive(a_sat, "SoftLimiterParams::a_sat");
        check_positive(p_in, "SoftLimiterParams::p_in");
    }

    double kappa() const { return p_in / (a_sat * a_sat); }
};

using PaModel = std::variant<SoftLimiterParams, SalehParams>;

inline std::complex<double> saleh_transfer(std::complex<double> s, const SalehParams& pa) {
    const double r = std::abs(s);
    if (r == 0.0) return {0.0, 0.0};
    const double amp = pa.am_am(r);
    const double phase = std::arg(s) + pa.am_pm(r);
    return std::polar(amp, phase);
}

inline std::complex<double> soft_limiter_transfer(std::complex<double> s, double a_sat) {
    const double r = std::abs(s);
    if (r <= a_sat) return s;
    return s * (a_sat / r);
}

/// Effective linear gain of the envelope clipper under a circular Gaussian
/// input, as a function of kappa only. Obtained by integrating E[U(x) x*]
/// over the Rayleigh amplitude density:
///   B(kappa) = 1 - e^{-1/kappa} + sqrt(pi/(4 kappa)) erfc(1/sqrt(kappa)).
/// Decreases monotonically from 1 (light drive) towards 0 (deep saturation).
inline double bussgang_gain_soft_limiter(double kappa) {
    check_positive(kappa, "bussgang_gain_soft_limiter: kappa");
    const double a = 1.0 / kappa;            // a_sat^2 / p_in
    const double b = std::sqrt(a);           // a_sat / sqrt(p_in)
    return 1.0 - std::exp(-a) + 0.5 * std::sqrt(pi / kappa) * std::erfc(b);
}

/// Total clipper output power E[|U(x)|^2] = p_in (1 - e^{-1/kappa}).
/// Saturates at a_sat^2 as the drive grows without bound.
inline double soft_limiter_output_power(double kappa, double p_in) {
    check_positive(kappa, "soft_limiter_output_power: kappa");
    check_positive(p_in, "soft_limiter_output_power: p_in");
    return p_in * (1.0 - std::exp(-1.0 / kappa));
}

/// Linear + uncorrelated-distortion split of a nonlinearity driven by a
/// circular Gaussian input: U(x) = gain * x + eta, E[eta x*] = 0.
struct BussgangDecomposition {
    std::complex<double> gain{1.0, 0.0};
    double distortion_power = 0.0;  // E|eta|^2, W

    double gain_magnitude() const { return std::abs(gain); }
};

inline BussgangDecomposition bussgang_decompose(const SoftLimiterParams& pa, double p_in) {
    pa.validate();
    check_positive(p_in, "bussgang_decompose: p_in");
    const double kappa = p_in / (pa.a_sat * pa.a_sat);
    const double gain = bussgang_gain_soft_limiter(kappa);
    const double out_power = soft_limiter_output_power(kappa, p_in);
    BussgangDecomposition d;
    d.gain = {gain, 0.0};
    d.distortion_power = std::max(0.0, out_power - gain * gain * p_in);
    return d;
}

/// Saleh decomposition has no closed form; the Rayleigh-density expectations
/// are evaluated by Gauss-Laguerre quadrature in u = r^2 / p_in.
inline BussgangDecomposition bussgang_decompose(const SalehParams& pa, double p_in,
                                                int quadrature_nodes = 96) {
    pa.validate();
    check_positive(p_in, "bussgang_decompose: p_in");
    const QuadratureRule rule = gauss_laguerre(quadrature_nodes);
    std::complex<double> corr{0.0, 0.0};  // E[r A(r) e^{j Phi(r)}]
    double out_power = 0.0;               // E[A(r)^2]
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = std::sqrt(p_in * rule.nodes[i]);
        const double amp = pa.am_am(r);
        corr += rule.weights[i] * r * amp * std::polar(1.0, pa.am_pm(r));
        out_power += rule.weights[i] * amp * amp;
    }
    BussgangDecomposition d;
    d.gain = corr / p_in;
    d.distortion_power = std::max(0.0, out_power - std::norm(d.gain) * p_in);
    return d;
}

inline BussgangDecomposition bussgang_decompose(const PaModel& pa, double p_in) {
    return std::visit([&](const auto& m) { return bussgang_decompose(m, p_in); }, pa);
}

/// Sampling estimate of the same expectations; oracle for the closed-form and
/// quadrature paths. Deterministic for a fixed seed.
inline BussgangDecomposition bussgang_decompose_mc(const PaModel& pa, double p_in,
                                                   std::int64_t n_samples, std::uint64_t seed) {
    check_positive(p_in, "bussgang_decompose_mc: p_in");
    check(n_samples > 0, "bussgang_decompose_mc: n_samples must be positive");
    Rng rng(seed);
    std::complex<double> corr{0.0, 0.0};
    double out_power = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const std::complex<double> x = rng.cnormal(p_in);
        const std::complex<double> u = std::visit(
            [&](const auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, SoftLimiterParams>)
                    return soft_limiter_transfer(x, m.a_sat);
                else
                    return saleh_transfer(x, m);
            },
            pa);
        corr += u * std::conj(x);
        out_power += std::norm(u);
    }
    const double inv_n = 1.0 / static_cast<double>(n_samples);
    BussgangDecomposition d;
    d.gain = corr * inv_n / p_in;
    d.distortion_power = std::max(0.0, out_power * inv_n - std::norm(d.gain) * p_in);
    return d;
}

/// Drive levels past kappa ~ 1 leave the quasi-linear region in which the
/// distortion-to-signal ratio can be treated as power-independent.
inline bool bussgang_linear_region(double kappa) { return kappa <= 1.0; }

/// Stationary small-phase oscillator model: zero-mean Gaussian phase with
/// variance sigma_phi^2 and exponentially decaying correlation set by the
/// 3-dB linewidth.
struct PhaseNoiseModel {
    double variance = 0.0;      // sigma_phi^2, rad^2
    double linewidth_hz = 0.0;  // 3-dB linewidth
    double jitter_rms_s = 0.0;

    void validate() const {
        check_nonnegative(variance, "PhaseNoiseModel::variance");
        check_nonnegative(linewidth_hz, "PhaseNoiseModel::linewidth_hz");
        check_nonnegative(jitter_rms_s, "PhaseNoiseModel::jitter_rms_s");
    }

    double correlation(double dt_s) const {
        return std::exp(-2.0 * pi * linewidth_hz * std::abs(dt_s));
    }

    /// Coherent-power factor |E e^{j phi}|^2.
    double coherence_factor() const { return std::exp(-variance); }
};

/// Accumulated phase variance of a free-running oscillator over an
/// observation window: sigma_phi^2 = 2 pi * linewidth * t_obs.
inline double sigma_phi2_from_linewidth(double linewidth_hz, double t_obs_s) {
    check_nonnegative(linewidth_hz, "sigma_phi2_from_linewidth: linewidth");
    check_nonnegative(t_obs_s, "sigma_phi2_from_linewidth: t_obs");
    return 2.0 * pi * linewidth_hz * t_obs_s;
}

/// Covariance of the phase exponentials over a pilot time grid:
///   [R]_kl = exp(-sigma^2 (1 - rho_kl)) - exp(-sigma^2),
/// rho_kl = exp(-2 pi linewidth |t_k - t_l|). Symmetric PSD with diagonal
/// 1 - e^{-sigma^2}; entries vanish for widely separated samples.
inline Eigen::MatrixXd phase_correlation_matrix(std::span<const double> times_s,
                                                const PhaseNoiseModel& model) {
    model.validate();
    const int m = static_cast<int>(times_s.size());
    check(m >= 1, "phase_correlation_matrix: empty time grid");
    for (int k = 1; k < m; ++k)
        check(times_s[k] > times_s[k - 1],
              "phase_correlation_matrix: times must be strictly increasing");
    const double s2 = model.variance;
    Eigen::MatrixXd r(m, m);
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l <= k; ++l) {
            const double rho = model.correlation(times_s[k] - times_s[l]);
            const double v = std::exp(-s2 * (1.0 - rho)) - std::exp(-s2);
            r(k, l) = v;
            r(l, k) = v;
        }
    }
    return r;
}

struct GammaBreakdown {
    double pa = 0.0;
    double lo = 0.0;
    double adc = 0.0;

    double total() const { return pa + lo + adc; }
};

/// Aggregate distortion-to-signal ratio from component specs:
/// PA error-vector magnitude, oscillator jitter over the signal bandwidth,
/// and converter quantization floor.
inline GammaBreakdown gamma_components(double evm_pa, double b_sig_hz, double jitter_rms_s,
                                       double enob) {
    check_finite(evm_pa, "gamma_components: evm_pa");
    check(evm_pa >= 0.0 && evm_pa < 1.0, "gamma_components: evm_pa must lie in [0, 1)");
    check_positive(b_sig_hz, "gamma_components: b_sig_hz");
    check_nonnegative(jitter_rms_s, "gamma_components: jitter_rms_s");
    check_positive(enob, "gamma_components: enob");
    GammaBreakdown g;
    g.pa = evm_pa * evm_pa;
    const double phase_jitter = pi * b_sig_hz * jitter_rms_s;
    g.lo = phase_jitter * phase_jitter;
    g.adc = std::pow(10.0, -(6.02 * enob + 1.76) / 10.0);
    return g;
}

/// Transceiver hardware class. `gamma_eff_asserted` is the system-level
/// quality factor the profile is defined by; `derived_gammas()` is the
/// component-spec sum. The two need not agree and are never reconciled
/// silently -- callers choose which to use.
struct HardwareProfile {
    std::string key;   // config identifier
    std::string name;  // display label
    double evm_pa = 0.0;
    double jitter_rms_s = 0.0;
    double enob = 0.0;
    double linewidth_hz = 0.0;
    double signal_bandwidth_hz = 10e9;         // bandwidth at which the LO term is evaluated
    double characteristic_bandwidth_hz = 10e9; // operating bandwidth for rate metrics
    double gamma_eff_asserted = 0.0;
    double sigma_phi2 = 0.0;

    GammaBreakdown derived_gammas() const {
        return gamma_components(evm_pa, signal_bandwidth_hz, jitter_rms_s, enob);
    }

    PhaseNoiseModel phase_noise() const {
        return PhaseNoiseModel{sigma_phi2, linewidth_hz, jitter_rms_s};
    }
};

/// Built-in profile ladder. High-Performance and SWaP-Efficient component
/// specs are measured device values; the other two use representative specs
/// chosen so the component sums approximate the asserted quality factors.
inline const std::vector<HardwareProfile>& builtin_profiles() {
    static const std::vector<HardwareProfile> profiles = {
        {"state_of_the_art", "State-of-the-Art", 0.069, 10e-15, 7.0, 10e3, 10e9, 100e9, 0.005, 0.0},
        {"high_performance", "High-Performance", 0.106, 20.9e-15, 6.0, 50e3, 10e9, 20e9, 0.010, 0.0},
        {"swap_efficient", "SWaP-Efficient", 0.2093, 70e-15, 5.0, 200e3, 10e9, 10e9, 0.025, 0.0},
        {"low_cost", "Low-Cost", 0.22, 200e-15, 4.0, 500e3, 10e9, 5e9, 0.050, 0.0},
    };
    return profiles;
}

inline const HardwareProfile& profile_by_key(std::string_view key) {
    for (const auto& p : builtin_profiles())
        if (p.key == key) return p;
    throw std::domain_error("unknown hardware profile: " + std::string(key));
}

} // namespace isaclim::hw
