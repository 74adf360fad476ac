#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/hardware.hpp"
#include "isaclim/link.hpp"

namespace isaclim::sensing {

/// Constant-modulus pilot grid. Times are referenced to the frame midpoint,
/// so range and range-rate information decouple for a uniform grid and the
/// estimates refer to the state at mid-frame.
struct PilotFrame {
    int m_pilots = 0;
    int frame_symbols = 0;
    std::vector<double> times_s;
    double symbol_amp = 1.0;  // |s|, sqrt(W)
    double frame_duration_s = 0.0;

    static PilotFrame uniform(int m_pilots, int frame_symbols, double frame_duration_s,
                              double symbol_amp) {
        PilotFrame f;
        f.m_pilots = m_pilots;
        f.frame_symbols = frame_symbols;
        f.frame_duration_s = frame_duration_s;
        f.symbol_amp = symbol_amp;
        f.times_s.resize(static_cast<std::size_t>(m_pilots));
        for (int k = 0; k < m_pilots; ++k)
            f.times_s[static_cast<std::size_t>(k)] =
                ((k + 0.5) / m_pilots - 0.5) * frame_duration_s;
        f.validate();
        return f;
    }

    void validate() const {
        check(m_pilots >= 2, "PilotFrame: need at least 2 pilots");
        check(m_pilots <= frame_symbols, "PilotFrame: pilots cannot exceed frame symbols");
        check(static_cast<int>(times_s.size()) == m_pilots,
              "PilotFrame: time grid length must equal pilot count");
        check_positive(symbol_amp, "PilotFrame::symbol_amp");
        check_positive(frame_duration_s, "PilotFrame::frame_duration_s");
        for (std::size_t k = 1; k < times_s.size(); ++k)
            check(times_s[k] > times_s[k - 1], "PilotFrame: times must be strictly increasing");
    }

    double pilot_power_w() const { return symbol_amp * symbol_amp; }
};

enum class Param { range = 0, range_rate = 1, pointing_x = 2, pointing_y = 3 };

inline const char* param_label(Param p) {
    switch (p) {
        case Param::range: return "range";
        case Param::range_rate: return "range_rate";
        case Param::pointing_x: return "pointing_x";
        case Param::pointing_y: return "pointing_y";
    }
    throw std::domain_error("param_label: unknown parameter");
}

/// Everything the bound computation needs about one link snapshot.
struct SensingState {
    link::ScenarioGeometry geometry;
    link::AntennaConfig antenna;
    link::PointingState pointing;
    PilotFrame frame;
    std::complex<double> bussgang_gain{1.0, 0.0};
    hw::PhaseNoiseModel phase_noise;
    link::NoiseBudget noise;
};

/// Channel gain seen by pilot k, conditioned on zero oscillator phase:
/// Friis gain at the mid-frame range, pointing amplitude factor, and the
/// carrier phase evolving with range rate across the frame.
inline std::complex<double> channel_gain_at(const SensingState& st, double t_s) {
    const std::complex<double> g0 = link::friis_gain(st.geometry, st.antenna);
    const double amp_pointing =
        std::exp(-st.antenna.amp_rolloff * st.pointing.error_rad.squaredNorm());
    const double rate_phase =
        link::carrier_phase(st.antenna.carrier_hz, st.geometry.range_rate_mps * t_s);
    return g0 * amp_pointing * std::polar(1.0, rate_phase);
}

inline Eigen::VectorXcd conditional_mean(const SensingState& st) {
    const int m = st.frame.m_pilots;
    Eigen::VectorXcd mean(m);
    for (int k = 0; k < m; ++k)
        mean(k) = channel_gain_at(st, st.frame.times_s[static_cast<std::size_t>(k)]) *
                  st.bussgang_gain * st.frame.symbol_amp;
    return mean;
}

/// Analytic derivative of the conditional mean with respect to one estimated
/// parameter. Range couples through both the inverse-distance amplitude and
/// the carrier phase (the phase term dominates at THz carriers); range rate
/// couples through the per-pilot phase ramp; pointing through the Gaussian
/// amplitude rolloff.
inline Eigen::VectorXcd mean_gradient(Param param, const SensingState& st) {
    const Eigen::VectorXcd mean = conditional_mean(st);
    const int m = st.frame.m_pilots;
    const double k_c = 2.0 * pi * st.antenna.carrier_hz / speed_of_light_mps;
    Eigen::VectorXcd grad(m);
    switch (param) {
        case Param::range:
            grad = mean * std::complex<double>(-1.0 / st.geometry.range_m, -k_c);
            break;
        case Param::range_rate:
            for (int k = 0; k < m; ++k)
                grad(k) = mean(k) * std::complex<double>(
                                        0.0, -k_c * st.frame.times_s[static_cast<std::size_t>(k)]);
            break;
        case Param::pointing_x:
            grad = mean * (-st.antenna.power_rolloff * st.pointing.error_rad.x());
            break;
        case Param::pointing_y:
            grad = mean * (-st.antenna.power_rolloff * st.pointing.error_rad.y());
            break;
        default: throw std::domain_error("mean_gradient: unknown parameter");
    }
    return grad;
}

/// Pilot observation covariance: a correlated phase-noise part riding on the
/// signal plus white additive noise,
///   Sigma_kl = g_k g_l^* |B s|^2 [R_phi]_kl + sigma_add^2 delta_kl.
/// For a frame-constant gain this is |g B s|^2 R_phi + sigma_add^2 I; a
/// Doppler ramp across the frame rotates the phase part with the mean.
struct ObservationCovariance {
    Eigen::MatrixXcd matrix;
    Eigen::MatrixXcd phase_part;
    double additive_w = 0.0;
};

inline ObservationCovariance build_covariance(const PilotFrame& frame,
                                              const Eigen::VectorXcd& per_pilot_gain,
                                              const hw::BussgangDecomposition& bussgang,
                                              const hw::PhaseNoiseModel& pn,
                                              const link::NoiseBudget& noise) {
    frame.validate();
    check(per_pilot_gain.size() == frame.m_pilots,
          "build_covariance: gain vector length must match pilot count");
    const double scale = std::norm(bussgang.gain) * frame.pilot_power_w();
    const Eigen::MatrixXd r_phi = hw::phase_correlation_matrix(frame.times_s, pn);
    ObservationCovariance cov;
    cov.phase_part =
        scale * (per_pilot_gain * per_pilot_gain.adjoint()).cwiseProduct(r_phi.cast<std::complex<double>>());
    cov.additive_w = noise.effective_w();
    check_positive(cov.additive_w, "build_covariance: additive noise must be positive");
    cov.matrix = cov.phase_part;
    cov.matrix.diagonal().array() += cov.additive_w;
    return cov;
}

inline ObservationCovariance build_covariance(const PilotFrame& frame, std::complex<double> g,
                                              const hw::BussgangDecomposition& bussgang,
                                              const hw::PhaseNoiseModel& pn,
                                              const link::NoiseBudget& noise) {
    return build_covariance(frame, Eigen::VectorXcd::Constant(frame.m_pilots, g), bussgang, pn,
                            noise);
}

/// Mean and covariance contributions to the Fisher information, kept apart so
/// the oscillator coherence loss can be applied to the mean term alone.
struct FimTerms {
    Eigen::MatrixXd mean_term;
    Eigen::MatrixXd trace_term;

    Eigen::MatrixXd total() const { return mean_term + trace_term; }
};

/// Fisher information for circular complex Gaussian observations:
///   J_ij = 2 Re{ d_i^H Sigma^-1 d_j } + tr(Sigma^-1 dSigma_i Sigma^-1 dSigma_j),
/// with the covariance sensitivity restricted to scalar multiples of the
/// identity, dSigma_i = s_i I. The trace coefficient is the circular-complex
/// one (a real-vector observation of twice the dimension carries 1/2 instead);
/// a score-function simulation pins this down in the test suite.
inline FimTerms slepian_bangs_terms(const std::vector<Eigen::VectorXcd>& gradients,
                                    const ObservationCovariance& cov,
                                    const Eigen::VectorXd& noise_sensitivity) {
    const int n = static_cast<int>(gradients.size());
    check(n >= 1, "slepian_bangs_terms: need at least one gradient");
    check(noise_sensitivity.size() == n,
          "slepian_bangs_terms: noise sensitivity length must match gradient count");

    Eigen::LLT<Eigen::MatrixXcd> llt(cov.matrix);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(cov.matrix, Eigen::EigenvaluesOnly);
        const double cond = es.eigenvalues().maxCoeff() /
                            std::max(es.eigenvalues().minCoeff(), 1e-300);
        throw std::domain_error("slepian_bangs_terms: covariance not invertible (condition ~ " +
                                std::to_string(cond) + ")");
    }

    std::vector<Eigen::VectorXcd> solved(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) solved[static_cast<std::size_t>(i)] = llt.solve(gradients[static_cast<std::size_t>(i)]);

    FimTerms terms;
    terms.mean_term.setZero(n, n);
    terms.trace_term.setZero(n, n);
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(cov.matrix.rows(), cov.matrix.cols());
    const Eigen::MatrixXcd inv = llt.solve(identity);
    const double tr_inv_sq = inv.cwiseProduct(inv.transpose()).sum().real();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double mean_ij =
                2.0 * gradients[static_cast<std::size_t>(i)].dot(solved[static_cast<std::size_t>(j)]).real();
            const double trace_ij = noise_sensitivity(i) * noise_sensitivity(j) * tr_inv_sq;
            terms.mean_term(i, j) = mean_ij;
            terms.mean_term(j, i) = mean_ij;
            terms.trace_term(i, j) = trace_ij;
            terms.trace_term(j, i) = trace_ij;
        }
    }
    return terms;
}

/// Fisher information with per-parameter identifiability. Parameters whose
/// information is negligible against the dominant one are flagged instead of
/// being pushed through a near-singular inverse.
struct FisherResult {
    Eigen::MatrixXd fim;
    Eigen::MatrixXd bcrlb;  // +inf diagonal on unidentifiable parameters
    std::vector<std::string> labels;
    std::vector<bool> identifiable;
    double condition_number = 0.0;
    Eigen::MatrixXd prior;

    bool fully_identifiable() const {
        for (bool b : identifiable)
            if (!b) return false;
        return true;
    }
};

namespace detail {

/// Parameters carry different units, so identifiability cannot be judged by
/// comparing raw diagonals. Zero-information parameters are dropped, the rest
/// are equilibrated to unit diagonal, and rank deficiency is detected on the
/// resulting correlation-form matrix.
inline FisherResult invert_information(const Eigen::MatrixXd& fim,
                                       std::vector<std::string> labels,
                                       const Eigen::MatrixXd& prior) {
    const int n = static_cast<int>(fim.rows());
    FisherResult res;
    res.fim = fim;
    res.prior = prior;
    res.labels = std::move(labels);
    res.identifiable.assign(static_cast<std::size_t>(n), true);
    res.bcrlb.setConstant(n, n, std::numeric_limits<double>::infinity());

    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(fim(i, i)) && fim(i, i) > 0.0) {
            keep.push_back(i);
        } else {
            res.identifiable[static_cast<std::size_t>(i)] = false;
        }
    }

    // A rank-deficient block (e.g. the two pointing components, whose
    // gradients are collinear because the beam only senses the radial
    // offset) is trimmed greedily: drop the parameter most involved in the
    // null direction, keep the rest bounded.
    Eigen::MatrixXd sub;
    Eigen::VectorXd scale;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    while (!keep.empty()) {
        const int k = static_cast<int>(keep.size());
        sub.resize(k, k);
        scale.resize(k);
        for (int a = 0; a < k; ++a)
            scale(a) = 1.0 / std::sqrt(fim(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(a)]));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                sub(a, b) = fim(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]) *
                            scale(a) * scale(b);
        es.compute(sub);
        const double lam_min = es.eigenvalues().minCoeff();
        const double lam_max = es.eigenvalues().maxCoeff();
        res.condition_number = lam_max / std::max(lam_min, 1e-300);
        if (lam_min > 0.0 && res.condition_number <= 1e12) break;
        int worst = 0;
        es.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
        res.identifiable[static_cast<std::size_t>(keep[static_cast<std::size_t>(worst)])] = false;
        keep.erase(keep.begin() + worst);
    }
    if (keep.empty()) {
        res.condition_number = std::numeric_limits<double>::infinity();
        return res;
    }

    const int k = static_cast<int>(keep.size());
    const Eigen::MatrixXd sub_inv = es.eigenvectors() *
                                    es.eigenvalues().cwiseInverse().asDiagonal() *
                                    es.eigenvectors().transpose();
    res.bcrlb.setZero(n, n);
    for (int i = 0; i < n; ++i)
        if (!res.identifiable[static_cast<std::size_t>(i)])
            res.bcrlb(i, i) = std::numeric_limits<double>::infinity();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            res.bcrlb(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]) =
                sub_inv(a, b) * scale(a) * scale(b);
    return res;
}

} // namespace detail

/// Conditional (known oscillator phase) Fisher information.
inline FisherResult slepian_bangs_fim(const std::vector<Eigen::VectorXcd>& gradients,
                                      const ObservationCovariance& cov,
                                      const Eigen::VectorXd& noise_sensitivity,
                                      std::vector<std::string> labels = {}) {
    const FimTerms terms = slepian_bangs_terms(gradients, cov, noise_sensitivity);
    if (labels.empty())
        labels.assign(static_cast<std::size_t>(gradients.size()), "param");
    return detail::invert_information(terms.total(), std::move(labels), Eigen::MatrixXd());
}

/// Marginal information after averaging over the oscillator phase: the
/// coherent mean shrinks by e^{-sigma_phi^2 / 2}, so mean-term information
/// carries the factor e^{-sigma_phi^2}; the scattered power is already part
/// of the covariance. An optional prior adds on top.
inline FisherResult bayesian_fim(const FimTerms& terms, const hw::PhaseNoiseModel& pn,
                                 const Eigen::MatrixXd* prior = nullptr,
                                 std::vector<std::string> labels = {}) {
    Eigen::MatrixXd fim = pn.coherence_factor() * terms.mean_term + terms.trace_term;
    Eigen::MatrixXd prior_m = Eigen::MatrixXd::Zero(fim.rows(), fim.cols());
    if (prior != nullptr) {
        check(prior->rows() == fim.rows() && prior->cols() == fim.cols(),
              "bayesian_fim: prior dimension mismatch");
        prior_m = *prior;
        fim += prior_m;
    }
    if (labels.empty()) labels.assign(static_cast<std::size_t>(fim.rows()), "param");
    return detail::invert_information(fim, std::move(labels), prior_m);
}

inline std::optional<double> bcrlb(const FisherResult& result, int param_index) {
    check(param_index >= 0 && param_index < result.fim.rows(), "bcrlb: parameter index out of range");
    if (!result.identifiable[static_cast<std::size_t>(param_index)]) return std::nullopt;
    return result.bcrlb(param_index, param_index);
}

inline std::optional<double> bcrlb(const FisherResult& result, Param p) {
    return bcrlb(result, static_cast<int>(p));
}

/// Sensitivity of the effective noise power to each estimated parameter.
/// Signal-dependent terms ride on |g|^2, which falls off as 1/R^2 and rolls
/// off with pointing offset; range rate leaves the noise untouched.
inline Eigen::VectorXd noise_sensitivity(const SensingState& st) {
    const double signal_dependent = st.noise.received_distortion_w + st.noise.dse_residual_w;
    Eigen::VectorXd s(4);
    s(0) = -2.0 / st.geometry.range_m * signal_dependent;
    s(1) = 0.0;
    s(2) = -2.0 * st.antenna.power_rolloff * st.pointing.error_rad.x() * signal_dependent;
    s(3) = -2.0 * st.antenna.power_rolloff * st.pointing.error_rad.y() * signal_dependent;
    return s;
}

/// Full pipeline for the observable set [R, Rdot, theta_x, theta_y].
inline FisherResult compute_bounds(const SensingState& st,
                                   const Eigen::MatrixXd* prior = nullptr) {
    std::vector<Eigen::VectorXcd> grads;
    grads.reserve(4);
    for (Param p : {Param::range, Param::range_rate, Param::pointing_x, Param::pointing_y})
        grads.push_back(mean_gradient(p, st));
    hw::BussgangDecomposition bd;
    bd.gain = st.bussgang_gain;
    Eigen::VectorXcd per_pilot_gain(st.frame.m_pilots);
    for (int k = 0; k < st.frame.m_pilots; ++k)
        per_pilot_gain(k) = channel_gain_at(st, st.frame.times_s[static_cast<std::size_t>(k)]);
    const ObservationCovariance cov =
        build_covariance(st.frame, per_pilot_gain, bd, st.phase_noise, st.noise);
    const FimTerms terms = slepian_bangs_terms(grads, cov, noise_sensitivity(st));
    std::vector<std::string> labels;
    for (Param p : {Param::range, Param::range_rate, Param::pointing_x, Param::pointing_y})
        labels.emplace_back(param_label(p));
    return bayesian_fim(terms, st.phase_noise, prior, std::move(labels));
}

/// Conservative pointing variance bound at perfect alignment, where
/// first-order information vanishes and only the beam-pattern curvature
/// constrains the estimate:
///   sigma_eff^2 e^{sigma_phi^2} / (2 gamma^2 M |g B s|^2).
inline double pointing_bcrlb_at_boresight(const SensingState& st) {
    const double gamma = st.antenna.amp_rolloff;
    if (!(gamma > 0.0)) return std::numeric_limits<double>::infinity();
    const std::complex<double> g = channel_gain_at(st, 0.0);
    const double signal = std::norm(g) * std::norm(st.bussgang_gain) * st.frame.pilot_power_w();
    check_positive(signal, "pointing_bcrlb_at_boresight: signal power");
    return st.noise.effective_w() * std::exp(st.phase_noise.variance) /
           (2.0 * gamma * gamma * st.frame.m_pilots * signal);
}

} // namespace isaclim::sensing
