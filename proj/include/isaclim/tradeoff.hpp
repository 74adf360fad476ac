#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "isaclim/capacity.hpp"
#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/quadrature.hpp"
#include "isaclim/rng.hpp"
#include "isaclim/sensing.hpp"

namespace isaclim::tradeoff {

struct InputDistribution {
    Eigen::VectorXd probs;

    static InputDistribution uniform(int n) {
        check(n >= 1, "InputDistribution::uniform: empty support");
        InputDistribution d;
        d.probs = Eigen::VectorXd::Constant(n, 1.0 / n);
        return d;
    }

    void validate() const {
        check(probs.size() >= 1, "InputDistribution: empty");
        check(probs.minCoeff() >= 0.0, "InputDistribution: negative probability");
        check(std::abs(probs.sum() - 1.0) <= 1e-12, "InputDistribution: probabilities must sum to 1");
    }

    bool degenerate() const {
        for (Eigen::Index i = 0; i < probs.size(); ++i)
            if (probs(i) > 1.0 - 1e-15) return true;
        return false;
    }
};

/// Euclidean projection onto the probability simplex (sorted-threshold rule).
/// Idempotent: a valid distribution projects to itself.
inline InputDistribution project_simplex(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    check(n >= 1, "project_simplex: empty vector");
    for (int i = 0; i < n; ++i) check_finite(v(i), "project_simplex: entry");
    // The projection is invariant to constant shifts; anchoring the maximum
    // at zero keeps the threshold arithmetic exact for extreme inputs.
    const double shift = v.maxCoeff();
    std::vector<double> u(v.data(), v.data() + n);
    for (double& x : u) x -= shift;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double theta = 0.0;
    int support = 0;
    for (int i = 0; i < n; ++i) {
        cum += u[static_cast<std::size_t>(i)];
        const double t = (cum - 1.0) / (i + 1);
        if (u[static_cast<std::size_t>(i)] - t > 0.0) {
            theta = t;
            support = i + 1;
        }
    }
    check(support >= 1, "project_simplex: degenerate projection");
    InputDistribution d;
    d.probs = (v.array() - shift - theta).cwiseMax(0.0);
    d.probs /= d.probs.sum();
    return d;
}

/// Finite signalling alphabet, stored with unit average power under the
/// uniform distribution. A skewed input distribution therefore shifts the
/// transmitted average power, which is exactly the lever the sensing
/// distortion responds to.
struct Constellation {
    std::vector<std::complex<double>> points;
    std::vector<std::string> labels;

    static Constellation from_points(std::vector<std::complex<double>> pts) {
        check(pts.size() >= 2, "Constellation: need at least 2 points");
        double power = 0.0;
        for (const auto& p : pts) power += std::norm(p);
        power /= static_cast<double>(pts.size());
        check_positive(power, "Constellation: zero average power");
        const double scale = 1.0 / std::sqrt(power);
        Constellation c;
        c.points.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            c.points.push_back(pts[i] * scale);
            c.labels.push_back("x" + std::to_string(i));
        }
        return c;
    }

    /// Square grid of the given order (4, 16, 64).
    static Constellation qam(int order) {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(order))));
        check(side * side == order && side >= 2, "Constellation::qam: order must be a square >= 4");
        std::vector<std::complex<double>> pts;
        for (int i = 0; i < side; ++i)
            for (int q = 0; q < side; ++q)
                pts.emplace_back(2.0 * i - side + 1.0, 2.0 * q - side + 1.0);
        return from_points(std::move(pts));
    }

    /// Constant-modulus ring.
    static Constellation ring(int order) {
        check(order >= 2, "Constellation::ring: need at least 2 points");
        std::vector<std::complex<double>> pts;
        for (int k = 0; k < order; ++k)
            pts.push_back(std::polar(1.0, 2.0 * pi * k / order));
        return from_points(std::move(pts));
    }

    static Constellation by_name(const std::string& name) {
        if (name == "qam4") return qam(4);
        if (name == "qam16") return qam(16);
        if (name == "qam64") return qam(64);
        if (name == "ring8") return ring(8);
        if (name == "ring16") return ring(16);
        throw std::domain_error("Constellation::by_name: unknown constellation '" + name + "'");
    }

    int size() const { return static_cast<int>(points.size()); }

    /// Relative average power under a distribution (1 under uniform).
    double average_power(const InputDistribution& dist) const {
        check(dist.probs.size() == size(), "Constellation::average_power: size mismatch");
        double p = 0.0;
        for (int i = 0; i < size(); ++i)
            p += dist.probs(i) * std::norm(points[static_cast<std::size_t>(i)]);
        return p;
    }
};

/// Memoryless Gaussian-equivalent channel y = gain e^{j phi} x + n with
/// n ~ CN(0, noise_w) and per-symbol oscillator phase phi ~ N(0, sigma_phi2).
/// `gain` absorbs channel gain, linearized PA gain, and the square root of the
/// configured transmit power, so constellation symbols are unit scale.
struct ImpairedChannel {
    std::complex<double> gain{1.0, 0.0};
    double noise_w = 1.0;
    double sigma_phi2 = 0.0;

    void validate() const {
        check_positive(noise_w, "ImpairedChannel: noise");
        check_nonnegative(sigma_phi2, "ImpairedChannel: sigma_phi2");
    }
};

struct MiEstimate {
    double bits = 0.0;
    double std_error = 0.0;
};

/// Common-random-numbers sample bank for mutual information estimates.
/// Per-letter densities are cached once in row-shifted exponential form
/// (exp(log p(y|x_k) - max_k)), so an estimate at any input distribution is a
/// single matrix-vector product -- smooth, deterministic, and cheap enough to
/// sit inside an optimizer loop. Densities are exact Gaussians; a nonzero
/// phase-noise variance is marginalized by Gauss-Hermite quadrature.
class MiBatch {
public:
    MiBatch(const Constellation& constellation, const ImpairedChannel& channel, int n_samples,
            std::uint64_t seed)
        : k_(constellation.size()) {
        channel.validate();
        check(n_samples >= 10000, "MiBatch: need at least 1e4 samples");
        nb_ = n_samples / k_;
        const double sigma_phi = std::sqrt(channel.sigma_phi2);
        QuadratureRule hermite;
        if (channel.sigma_phi2 > 0.0) hermite = gauss_hermite(17);

        Rng rng(seed);
        const Eigen::Index rows = static_cast<Eigen::Index>(k_) * nb_;
        dens_.resize(rows, k_);
        row_shift_.resize(rows);
        own_logp_.resize(rows);
        const double inv_noise = 1.0 / channel.noise_w;
        const double log_norm = -std::log(pi * channel.noise_w);
        Eigen::VectorXd logp_row(k_);
        for (int j = 0; j < k_; ++j) {
            const std::complex<double> sj = channel.gain * constellation.points[static_cast<std::size_t>(j)];
            for (int b = 0; b < nb_; ++b) {
                std::complex<double> y;
                if (channel.sigma_phi2 > 0.0) {
                    const double phi = sigma_phi * rng.normal();
                    y = sj * std::polar(1.0, phi) + rng.cnormal(channel.noise_w);
                } else {
                    y = sj + rng.cnormal(channel.noise_w);
                }
                const Eigen::Index row = static_cast<Eigen::Index>(j) * nb_ + b;
                for (int k = 0; k < k_; ++k) {
                    const std::complex<double> sk =
                        channel.gain * constellation.points[static_cast<std::size_t>(k)];
                    if (channel.sigma_phi2 == 0.0) {
                        logp_row(k) = -std::norm(y - sk) * inv_noise + log_norm;
                    } else {
                        // log E_phi[N(y; e^{j phi} s_k, noise)] via quadrature over phi.
                        double max_e = -std::numeric_limits<double>::infinity();
                        std::array<double, 32> exps{};
                        const int nq = static_cast<int>(hermite.nodes.size());
                        for (int q = 0; q < nq; ++q) {
                            const double phi = std::sqrt(2.0) * sigma_phi * hermite.nodes[static_cast<std::size_t>(q)];
                            const double e = -std::norm(y - sk * std::polar(1.0, phi)) * inv_noise;
                            exps[static_cast<std::size_t>(q)] = e;
                            max_e = std::max(max_e, e);
                        }
                        double acc = 0.0;
                        for (int q = 0; q < nq; ++q)
                            acc += hermite.weights[static_cast<std::size_t>(q)] / std::sqrt(pi) *
                                   std::exp(exps[static_cast<std::size_t>(q)] - max_e);
                        logp_row(k) = max_e + std::log(acc) + log_norm;
                    }
                }
                own_logp_(row) = logp_row(j);
                const double shift = logp_row.maxCoeff();
                row_shift_(row) = shift;
                dens_.row(row) = (logp_row.array() - shift).exp().matrix().transpose();
            }
        }
    }

    int alphabet_size() const { return k_; }
    int samples_per_letter() const { return nb_; }

    MiEstimate mi(const InputDistribution& dist) const { return evaluate(dist, nullptr); }

    /// Exact gradient of the cached-batch estimate: d I / d p_m combines the
    /// per-letter information density and the mixture-shift term.
    Eigen::VectorXd mi_gradient(const InputDistribution& dist) const {
        Eigen::VectorXd grad(k_);
        evaluate(dist, &grad);
        return grad;
    }

    MiEstimate evaluate(const InputDistribution& dist, Eigen::VectorXd* gradient) const {
        dist.validate();
        check(dist.probs.size() == k_, "MiBatch: distribution size mismatch");
        if (dist.degenerate() && gradient == nullptr) return {0.0, 0.0};
        const double ln2 = std::log(2.0);

        // log q(y_row) = row_shift + log(dens_row . p). Rows whose mixture
        // underflows entirely (support letters far from the sample) are
        // floored; they belong to zero-probability letters and never carry
        // estimate weight, only a conservative re-entry signal in the gradient.
        Eigen::ArrayXd q = (dens_ * dist.probs).array().max(1e-290);
        const Eigen::ArrayXd lq = q.log() + row_shift_.array();
        const Eigen::ArrayXd v = (own_logp_.array() - lq) / ln2;

        MiEstimate est;
        double var_acc = 0.0;
        Eigen::VectorXd per_letter(k_);
        for (int j = 0; j < k_; ++j) {
            const Eigen::ArrayXd vj = v.segment(static_cast<Eigen::Index>(j) * nb_, nb_);
            const double mean = vj.mean();
            per_letter(j) = mean;
            const double pj = dist.probs(j);
            if (pj <= 0.0) continue;
            const double var = std::max(0.0, vj.square().mean() - mean * mean);
            est.bits += pj * mean;
            var_acc += pj * pj * var / nb_;
        }
        est.std_error = std::sqrt(var_acc);

        if (gradient != nullptr) {
            // d I/d p_m = A_m - (1/ln 2) sum_rows w_row p(y_row|x_m) / q(y_row),
            // with A_m the empirical information density of letter m.
            Eigen::ArrayXd row_weight(static_cast<Eigen::Index>(k_) * nb_);
            for (int j = 0; j < k_; ++j)
                row_weight.segment(static_cast<Eigen::Index>(j) * nb_, nb_)
                    .setConstant(dist.probs(j) / nb_);
            const Eigen::VectorXd scaled = (row_weight / q).matrix();
            const Eigen::VectorXd mixture = dens_.transpose() * scaled;
            *gradient = per_letter - mixture / ln2;
        }
        return est;
    }

private:
    int k_;
    int nb_;
    Eigen::MatrixXd dens_;      // exp(log p(y|x_k) - row_shift), (k * nb) rows by k
    Eigen::VectorXd row_shift_; // per-row max log density, nats
    Eigen::VectorXd own_logp_;  // log p(y_row | transmitted letter of that row)
};

inline MiEstimate mutual_information_mc(const InputDistribution& dist,
                                        const Constellation& constellation,
                                        const ImpairedChannel& channel, int n_samples,
                                        std::uint64_t seed) {
    dist.validate();
    if (dist.degenerate()) return {0.0, 0.0};
    MiBatch batch(constellation, channel, n_samples, seed);
    return batch.mi(dist);
}

/// Link snapshot the sensing distortion is evaluated on. The pilot power
/// tracks the data distribution's average power; the whitening references
/// make the mixed-units trace dimensionless.
struct DistortionModel {
    sensing::SensingState base;  // symbol_amp ignored; power supplied per call
    double gamma_eff = 0.0;
    double thermal_w = 0.0;
    double dse_fraction = 1e-3;
    double configured_power_w = 1.0;
    double ref_range_var = 1e-6;      // (1 mm)^2
    double ref_range_rate_var = 1e-6; // (1 mm/s)^2

    double distortion_at_power(double p_eff_w) const {
        check_positive(p_eff_w, "DistortionModel: effective power");
        sensing::SensingState st = base;
        st.frame.symbol_amp = std::sqrt(p_eff_w);
        const std::complex<double> g = sensing::channel_gain_at(st, 0.0);
        const double received_signal = std::norm(g) * std::norm(st.bussgang_gain) * p_eff_w;
        link::NoiseBudget noise;
        noise.thermal_w = thermal_w;
        noise.received_distortion_w = gamma_eff * received_signal;
        noise.dse_residual_w = dse_fraction * noise.received_distortion_w;
        st.noise = noise;
        const sensing::FisherResult bounds = sensing::compute_bounds(st);
        const auto var_r = sensing::bcrlb(bounds, sensing::Param::range);
        const auto var_v = sensing::bcrlb(bounds, sensing::Param::range_rate);
        if (!var_r || !var_v) return std::numeric_limits<double>::infinity();
        return *var_r / ref_range_var + *var_v / ref_range_rate_var;
    }
};

inline double distortion_of(const InputDistribution& dist, const Constellation& constellation,
                            const DistortionModel& model) {
    dist.validate();
    const double p_eff = model.configured_power_w * constellation.average_power(dist);
    return model.distortion_at_power(p_eff);
}

struct BaOptions {
    double d_target = std::numeric_limits<double>::infinity();
    double tolerance = 0.05;  // relative distortion slack at convergence
    int max_iters = 200;
    int mi_samples = 100000;
    std::uint64_t seed = 1;
    double initial_step = 0.5;
    double p_change_tol = 1e-4;
};

struct TradeoffPoint {
    double distortion = 0.0;
    double rate_bits = 0.0;
    double rate_std_error = 0.0;
    InputDistribution distribution;
    double lambda = 1.0;
    bool converged = false;
    int iterations = 0;
    double average_power_w = 0.0;
};

/// Lagrangian ascent for the constrained-rate problem
///   max_p I(X;Y)  s.t.  distortion(p) <= d_target.
/// Each sweep takes a projected gradient step on L = I - lambda (D - D_target)
/// with backtracking so the Lagrangian never decreases at fixed lambda, then
/// rescales the multiplier (x1.5 when infeasible, x0.8 when feasible).
inline TradeoffPoint ba_optimize(const Constellation& constellation, const DistortionModel& model,
                                 const ImpairedChannel& channel, const BaOptions& options) {
    check(options.d_target > 0.0, "ba_optimize: d_target must be positive");
    check(options.max_iters >= 1, "ba_optimize: max_iters");
    const bool constrained = std::isfinite(options.d_target);
    const int k = constellation.size();

    MiBatch batch(constellation, channel, options.mi_samples, options.seed);
    InputDistribution p = InputDistribution::uniform(k);
    double lambda = 1.0;
    double step = options.initial_step;

    Eigen::VectorXd letter_power(k);
    for (int i = 0; i < k; ++i) letter_power(i) = std::norm(constellation.points[static_cast<std::size_t>(i)]);

    // The constraint enters in relative form (distortion / target - 1), so the
    // unit multiplier start is a sane scale against rates measured in bits.
    auto lagrangian_value = [&](double rate, double dist, double lam) {
        if (!constrained) return rate;
        return std::isfinite(dist) ? rate - lam * (dist / options.d_target - 1.0)
                                   : -std::numeric_limits<double>::infinity();
    };

    double rate = batch.mi(p).bits;
    double dist = distortion_of(p, constellation, model);
    double l_current = lagrangian_value(rate, dist, lambda);
    int consecutive_ok = 0;
    int iter = 0;
    bool converged = false;

    for (iter = 1; iter <= options.max_iters; ++iter) {
        Eigen::VectorXd grad(k);
        batch.evaluate(p, &grad);
        if (constrained) {
            // dD/dp through the average transmit power, slope by central difference.
            const double p_eff = model.configured_power_w * constellation.average_power(p);
            const double h = 1e-3 * p_eff;
            const double slope =
                (model.distortion_at_power(p_eff + h) - model.distortion_at_power(p_eff - h)) /
                (2.0 * h);
            grad -= lambda / options.d_target * slope * model.configured_power_w * letter_power;
        }

        InputDistribution p_next = p;
        double rate_next = rate, dist_next = dist;
        double alpha = step;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            InputDistribution cand = project_simplex(p.probs + alpha * grad);
            const double r = batch.mi(cand).bits;
            const double d = distortion_of(cand, constellation, model);
            const double l = lagrangian_value(r, d, lambda);
            if (l >= l_current - 1e-12) {
                p_next = cand;
                rate_next = r;
                dist_next = d;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (accepted) step = std::min(alpha * 1.5, 4.0);

        const double p_change = (p_next.probs - p.probs).lpNorm<1>();
        p = p_next;
        rate = rate_next;
        dist = dist_next;

        // Multiplier schedule from the distortion side of the Lagrangian.
        if (constrained) {
            lambda *= (dist > options.d_target) ? 1.5 : 0.8;
        } else {
            lambda *= 0.8;
        }
        l_current = lagrangian_value(rate, dist, lambda);

        const bool feasible =
            !constrained || dist < options.d_target ||
            std::abs(dist - options.d_target) <= options.tolerance * options.d_target;
        consecutive_ok = (p_change < options.p_change_tol && feasible) ? consecutive_ok + 1 : 0;
        if (consecutive_ok >= 3) {
            converged = true;
            break;
        }
    }

    TradeoffPoint point;
    const MiEstimate final_mi = batch.mi(p);
    point.distortion = distortion_of(p, constellation, model);
    point.rate_bits = final_mi.bits;
    point.rate_std_error = final_mi.std_error;
    point.distribution = p;
    point.lambda = lambda;
    point.converged = converged;
    point.iterations = std::min(iter, options.max_iters);
    point.average_power_w = model.configured_power_w * constellation.average_power(p);
    return point;
}

} // namespace isaclim::tradeoff
