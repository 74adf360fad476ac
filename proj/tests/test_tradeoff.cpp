#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "isaclim/capacity.hpp"
#include "isaclim/tradeoff.hpp"

using namespace isaclim;
using namespace isaclim::tradeoff;

namespace {

DistortionModel reference_model(double gamma_eff, double power_w) {
    DistortionModel m;
    m.base.geometry = link::ScenarioGeometry::from_range(2000e3, -7.5e3, 0.0);
    m.base.antenna = link::AntennaConfig::aperture(1.0, 300e9);
    m.base.frame = sensing::PilotFrame::uniform(64, 1024, 102.4e-9, std::sqrt(power_w));
    m.base.bussgang_gain = {1.0, 0.0};
    m.gamma_eff = gamma_eff;
    m.configured_power_w = power_w;
    const double g2 = std::norm(sensing::channel_gain_at(m.base, 0.0));
    m.thermal_w = g2 * power_w / 100.0;  // per-pilot SNR 20 dB at configured power
    return m;
}

ImpairedChannel unit_channel(double snr_linear, double sigma_phi2 = 0.0) {
    ImpairedChannel ch;
    ch.gain = {std::sqrt(snr_linear), 0.0};
    ch.noise_w = 1.0;
    ch.sigma_phi2 = sigma_phi2;
    return ch;
}

} // namespace

TEST_CASE("simplex projection basics") {
    Eigen::VectorXd already(3);
    already << 0.2, 0.5, 0.3;
    const auto p = project_simplex(already);
    REQUIRE((p.probs - already).lpNorm<Eigen::Infinity>() < 1e-14);

    Eigen::VectorXd outside(2);
    outside << 1.2, -0.2;
    const auto q = project_simplex(outside);
    REQUIRE(q.probs(0) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(q.probs(1) == Catch::Approx(0.0).margin(1e-14));

    // Idempotence.
    const auto qq = project_simplex(q.probs);
    REQUIRE((qq.probs - q.probs).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("simplex projection minimizes euclidean distance (sampling oracle)") {
    Rng rng(31415);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd v(8);
        for (int i = 0; i < 8; ++i) v(i) = 4.0 * (rng.uniform() - 0.5);
        const auto p = project_simplex(v);
        p.validate();
        const double dist = (p.probs - v).squaredNorm();
        for (int s = 0; s < 20000; ++s) {
            // Random simplex point via normalized exponentials.
            Eigen::VectorXd w(8);
            for (int i = 0; i < 8; ++i) w(i) = -std::log(1.0 - rng.uniform());
            w /= w.sum();
            REQUIRE(dist <= (w - v).squaredNorm() + 1e-12);
        }
    }
}

TEST_CASE("mutual information trivial cases") {
    const auto bpsk = Constellation::ring(2);
    InputDistribution point;
    point.probs = Eigen::VectorXd::Zero(2);
    point.probs(0) = 1.0;
    REQUIRE(mutual_information_mc(point, bpsk, unit_channel(100.0), 20000, 1).bits == 0.0);

    // Antipodal pair at high SNR carries one bit.
    const auto est = mutual_information_mc(InputDistribution::uniform(2), bpsk,
                                           unit_channel(1000.0), 20000, 2);
    REQUIRE(est.bits == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("mutual information estimate is deterministic for a fixed seed") {
    const auto qam = Constellation::qam(16);
    const auto a = mutual_information_mc(InputDistribution::uniform(16), qam,
                                         unit_channel(50.0), 40000, 77);
    const auto b = mutual_information_mc(InputDistribution::uniform(16), qam,
                                         unit_channel(50.0), 40000, 77);
    REQUIRE(a.bits == b.bits);
    REQUIRE(a.std_error == b.std_error);
    REQUIRE(a.std_error > 0.0);
}

TEST_CASE("16-point uniform approaches the capped closed-form reference") {
    // SNR0 = 30 dB with gamma_eff = 0.01: the Gaussian-input bound exceeds
    // 4 bits, so the 16-point alphabet pins near its cap.
    const double sinr = capacity::sinr_eff(1000.0, 0.0, 0.01);
    const auto est = mutual_information_mc(InputDistribution::uniform(16), Constellation::qam(16),
                                           unit_channel(sinr), 60000, 5);
    const double reference = std::min(capacity::capacity_bits(sinr), 4.0);
    REQUIRE(std::abs(est.bits - reference) < std::max(3.0 * est.std_error, 5e-3));
    REQUIRE(est.bits <= reference + 3.0 * est.std_error);
}

TEST_CASE("phase noise lowers mutual information") {
    const auto qam = Constellation::qam(16);
    const auto clean = mutual_information_mc(InputDistribution::uniform(16), qam,
                                             unit_channel(100.0), 40000, 9);
    const auto jittered = mutual_information_mc(InputDistribution::uniform(16), qam,
                                                unit_channel(100.0, 0.05), 40000, 9);
    REQUIRE(jittered.bits < clean.bits);
    REQUIRE(jittered.bits > 0.0);
}

TEST_CASE("distortion scales inversely with power in the thermal-limited regime") {
    const auto model = reference_model(1e-6, 1.0);
    const auto ring = Constellation::ring(16);
    const auto uniform = InputDistribution::uniform(16);
    const double d1 = distortion_of(uniform, ring, model);
    auto boosted = model;
    boosted.configured_power_w = 4.0;
    const double d4 = distortion_of(uniform, ring, boosted);
    REQUIRE(d1 / d4 == Catch::Approx(4.0).epsilon(0.01));
}

TEST_CASE("distortion floors out in the hardware-limited regime") {
    const auto ring = Constellation::ring(16);
    const auto uniform = InputDistribution::uniform(16);
    auto model = reference_model(0.05, 1.0);
    model.thermal_w = std::norm(sensing::channel_gain_at(model.base, 0.0)) * 1e-6;
    const double d1 = distortion_of(uniform, ring, model);
    auto boosted = model;
    boosted.configured_power_w = 100.0;
    const double d100 = distortion_of(uniform, ring, boosted);
    REQUIRE(d100 > 0.0);
    REQUIRE(d1 / d100 < 1.05);  // power no longer buys accuracy
}

TEST_CASE("constant-modulus alphabets give distribution-independent distortion") {
    const auto ring = Constellation::ring(16);
    const auto model = reference_model(0.01, 1.0);
    const double d_uniform = distortion_of(InputDistribution::uniform(16), ring, model);
    Eigen::VectorXd skew = Eigen::VectorXd::Zero(16);
    skew(0) = 0.5;
    skew(7) = 0.5;
    InputDistribution skewed;
    skewed.probs = skew;
    const double d_skewed = distortion_of(skewed, ring, model);
    REQUIRE(d_uniform == Catch::Approx(d_skewed).epsilon(1e-12));
}

TEST_CASE("blahut-arimoto matches exhaustive search on a 2-point alphabet") {
    const auto bpsk = Constellation::ring(2);
    const auto model = reference_model(0.01, 1.0);
    const auto channel = unit_channel(4.0);

    BaOptions opt;
    opt.mi_samples = 40000;
    opt.seed = 2025;
    opt.max_iters = 150;
    const auto point = ba_optimize(bpsk, model, channel, opt);

    // Brute-force the 1-simplex against the same sample bank.
    MiBatch batch(bpsk, channel, opt.mi_samples, opt.seed);
    double best = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        InputDistribution d;
        d.probs = Eigen::VectorXd(2);
        d.probs << i / 1000.0, 1.0 - i / 1000.0;
        best = std::max(best, batch.mi(d).bits);
    }
    REQUIRE(point.rate_bits == Catch::Approx(best).margin(1e-2));
    REQUIRE(point.converged);
}

TEST_CASE("unconstrained optimization approaches closed-form capacity at low snr") {
    // Constant-modulus ring at -10 dB: the alphabet constraint costs less
    // than the estimator noise floor.
    const double snr = db_to_linear(-10.0);
    const auto ring = Constellation::ring(16);
    const auto model = reference_model(0.01, 1.0);
    BaOptions opt;
    opt.mi_samples = 100000;
    opt.seed = 11;
    opt.max_iters = 100;
    const auto point = ba_optimize(ring, model, unit_channel(snr), opt);
    const double cap = capacity::capacity_bits(snr * point.average_power_w / 1.0);
    REQUIRE(std::abs(point.rate_bits - cap) <= 2.0 * point.rate_std_error);
}

TEST_CASE("frontier rate is monotone in the distortion target") {
    const auto qam = Constellation::qam(16);
    const auto model = reference_model(0.01, 1.0);
    const auto channel = unit_channel(50.0);

    const double d_uniform = distortion_of(InputDistribution::uniform(16), qam, model);
    BaOptions opt;
    opt.mi_samples = 30000;
    opt.seed = 4;
    opt.max_iters = 120;

    double prev_rate = -1.0;
    double prev_se = 0.0;
    for (double mult : {1.0, 1.1, 1.3, 2.0, 10.0}) {
        opt.d_target = d_uniform * mult;
        const auto point = ba_optimize(qam, model, channel, opt);
        const double slack = std::max(2.0 * (prev_se + point.rate_std_error), 1e-6);
        REQUIRE(point.rate_bits >= prev_rate - slack);
        prev_rate = point.rate_bits;
        prev_se = point.rate_std_error;
    }
}

TEST_CASE("optimizer output is bit-for-bit reproducible") {
    const auto qam = Constellation::qam(4);
    const auto model = reference_model(0.02, 1.0);
    BaOptions opt;
    opt.mi_samples = 20000;
    opt.seed = 8;
    opt.d_target = distortion_of(InputDistribution::uniform(4), qam, model) * 1.2;
    const auto a = ba_optimize(qam, model, unit_channel(30.0), opt);
    const auto b = ba_optimize(qam, model, unit_channel(30.0), opt);
    REQUIRE(a.rate_bits == b.rate_bits);
    REQUIRE(a.distortion == b.distortion);
    REQUIRE((a.distribution.probs - b.distribution.probs).lpNorm<Eigen::Infinity>() == 0.0);
    REQUIRE(a.iterations == b.iterations);
}

TEST_CASE("multiplier schedule applies the 1.5x / 0.8x factors") {
    const auto qam = Constellation::qam(4);
    const auto model = reference_model(0.02, 1.0);
    BaOptions opt;
    opt.mi_samples = 20000;
    opt.seed = 3;
    opt.max_iters = 5;

    // Unreachable target: every sweep is infeasible, multiplier compounds up.
    opt.d_target = 1e-12;
    const auto tight = ba_optimize(qam, model, unit_channel(30.0), opt);
    REQUIRE(tight.lambda == Catch::Approx(std::pow(1.5, 5)).epsilon(1e-12));
    REQUIRE_FALSE(tight.converged);

    // Loose target: every sweep is feasible, multiplier decays (possibly
    // fewer iterations if the stop rule fires early).
    opt.d_target = 1e12;
    opt.max_iters = 5;
    const auto loose = ba_optimize(qam, model, unit_channel(30.0), opt);
    REQUIRE(loose.lambda == Catch::Approx(std::pow(0.8, loose.iterations)).epsilon(1e-12));
}

TEST_CASE("rate never exceeds the closed-form bound at the same power") {
    const auto qam = Constellation::qam(16);
    const auto model = reference_model(0.01, 1.0);
    const double snr = 50.0;
    BaOptions opt;
    opt.mi_samples = 30000;
    opt.seed = 21;
    for (double mult : {1.05, 2.0}) {
        opt.d_target = distortion_of(InputDistribution::uniform(16), qam, model) * mult;
        const auto point = ba_optimize(qam, model, unit_channel(snr), opt);
        const double bound = capacity::capacity_bits(snr * point.average_power_w);
        REQUIRE(point.rate_bits <= bound + 3.0 * point.rate_std_error);
    }
}

TEST_CASE("constellation construction") {
    const auto qam64 = Constellation::qam(64);
    REQUIRE(qam64.size() == 64);
    REQUIRE(qam64.average_power(InputDistribution::uniform(64)) == Catch::Approx(1.0).epsilon(1e-12));
    const auto ring8 = Constellation::ring(8);
    for (const auto& p : ring8.points) REQUIRE(std::abs(p) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE_THROWS_AS(Constellation::qam(5), std::domain_error);
    REQUIRE_THROWS_AS(Constellation::by_name("qam7"), std::domain_error);
}
