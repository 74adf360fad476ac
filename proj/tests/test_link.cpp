#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "isaclim/link.hpp"
#include "isaclim/rng.hpp"

using namespace isaclim;
using namespace isaclim::link;

TEST_CASE("friis gain inverse-distance law and reciprocity") {
    const auto ant = AntennaConfig::with_gains(1.0, 300e9, 1e6, 2e6);
    const auto g1 = friis_gain(ScenarioGeometry::from_range(1000e3), ant);
    const auto g2 = friis_gain(ScenarioGeometry::from_range(2000e3), ant);
    REQUIRE(std::abs(g1) == Catch::Approx(2.0 * std::abs(g2)).epsilon(1e-12));

    const auto swapped = AntennaConfig::with_gains(1.0, 300e9, 2e6, 1e6);
    REQUIRE(std::abs(friis_gain(ScenarioGeometry::from_range(1000e3), swapped)) ==
            Catch::Approx(std::abs(g1)).epsilon(1e-12));

    REQUIRE_THROWS_AS(ScenarioGeometry::from_range(0.0), std::domain_error);
}

TEST_CASE("millimetre range change walks the carrier phase through a turn") {
    const auto ant = AntennaConfig::aperture(1.0, 300e9);
    const double r0 = 2000e3;
    const auto ga = friis_gain(ScenarioGeometry::from_range(r0), ant);
    const auto gb = friis_gain(ScenarioGeometry::from_range(r0 + 1e-3), ant);
    // One millimetre at 300 GHz is 1.0007 wavelengths; the residual rotation
    // is the fractional part of that.
    const double expected = 2.0 * pi * (1e-3 / wavelength_m(300e9) - 1.0);
    const double got = std::arg(ga / gb);
    REQUIRE(got == Catch::Approx(expected).margin(1e-6));
}

TEST_CASE("aperture-derived transmit gain cancels the frequency dependence") {
    // One end aperture-derived (gain ~ f^2), other end fixed: |g| is flat in f.
    const double d = 1.0, r = 2000e3;
    const double ref = std::abs(friis_gain(
        ScenarioGeometry::from_range(r),
        AntennaConfig::with_gains(d, 100e9, aperture_gain(d, 100e9), 1.0)));
    for (double f : {200e9, 300e9, 600e9, 1000e9}) {
        const double mag = std::abs(friis_gain(
            ScenarioGeometry::from_range(r),
            AntennaConfig::with_gains(d, f, aperture_gain(d, f), 1.0)));
        REQUIRE(mag == Catch::Approx(ref).epsilon(1e-12));
    }
    // Both ends aperture-derived: |g| grows linearly with f.
    const double m300 = std::abs(friis_gain(ScenarioGeometry::from_range(r),
                                            AntennaConfig::aperture(d, 300e9)));
    const double m600 = std::abs(friis_gain(ScenarioGeometry::from_range(r),
                                            AntennaConfig::aperture(d, 600e9)));
    REQUIRE(m600 == Catch::Approx(2.0 * m300).epsilon(1e-12));
}

TEST_CASE("beamwidth") {
    REQUIRE(beamwidth(0.5, 300e9) == Catch::Approx(2.1e-3).epsilon(0.03));
    REQUIRE(beamwidth(1.0, 300e9) == Catch::Approx(1.02e-3).epsilon(0.03));
    REQUIRE(beamwidth(1.0, 300e9) == Catch::Approx(0.5 * beamwidth(0.5, 300e9)).epsilon(1e-12));
    REQUIRE_THROWS_AS(beamwidth(0.0, 300e9), std::domain_error);
}

TEST_CASE("pointing loss rolloff") {
    const auto ant = AntennaConfig::aperture(1.0, 300e9);
    REQUIRE(pointing_loss({0.0, 0.0}, ant) == 1.0);

    // Half-beamwidth offset costs 3 dB by construction of the rolloff factor.
    const double half = ant.beamwidth_rad / 2.0;
    REQUIRE(pointing_loss({half, 0.0}, ant) == Catch::Approx(0.5).epsilon(1e-12));
    // Full-beamwidth offset: exp(-4 ln 2) = 1/16.
    REQUIRE(pointing_loss({ant.beamwidth_rad, 0.0}, ant) == Catch::Approx(1.0 / 16.0).epsilon(1e-12));

    // Amplitude factor is the square root of the power factor.
    const Eigen::Vector2d th{3e-4, -2e-4};
    REQUIRE(std::exp(-ant.amp_rolloff * th.squaredNorm()) ==
            Catch::Approx(std::sqrt(pointing_loss(th, ant))).epsilon(1e-12));
    REQUIRE(ant.amp_rolloff == Catch::Approx(ant.power_rolloff / 2.0).epsilon(1e-15));

    REQUIRE(within_beam_model({half, 0.0}, ant));
    REQUIRE_FALSE(within_beam_model({3.0 * ant.beamwidth_rad, 0.0}, ant));
}

TEST_CASE("monte carlo pointing average matches analytic expectation") {
    const auto ant = AntennaConfig::aperture(1.0, 300e9);
    const double rms = 2e-4;  // substantial fraction of the beamwidth
    Rng rng(17);
    const int n = 20000;
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector2d th{rms * rng.normal(), rms * rng.normal()};
        const double v = pointing_loss(th, ant);
        mean += v;
        m2 += v * v;
    }
    mean /= n;
    const double se = std::sqrt((m2 / n - mean * mean) / n);
    const double analytic = mean_pointing_loss_analytic(rms, ant);
    REQUIRE(std::abs(mean - analytic) < 3.0 * se);
}

TEST_CASE("doppler quantities") {
    // 15 km/s closing at 1 THz: 50 MHz shift.
    const auto geom = ScenarioGeometry::from_range(2000e3, -15e3, 0.0);
    const auto d = doppler_quantities(geom, 1e12, 100e9);
    REQUIRE(std::abs(d.shift_hz) == Catch::Approx(50e6).epsilon(0.01));
    REQUIRE(d.shift_hz > 0.0);  // closing pass shifts up
    REQUIRE(d.differential_hz == Catch::Approx(5e6).epsilon(0.01));

    const auto still = doppler_quantities(ScenarioGeometry::from_range(2000e3), 1e12, 100e9);
    REQUIRE(still.shift_hz == 0.0);
    REQUIRE(still.rate_hzps == 0.0);
    REQUIRE(still.differential_hz == 0.0);
}

TEST_CASE("dse phase") {
    const auto geom = ScenarioGeometry::from_range(2000e3, -7.5e3, 12.0);
    const double fc = 300e9;

    REQUIRE(dse_phase(1e-6, 0.0, geom, fc) == 0.0);

    // Zero acceleration: phase linear in t.
    const auto lin = ScenarioGeometry::from_range(2000e3, -7.5e3, 0.0);
    const double p1 = dse_phase(1e-6, 5e9, lin, fc);
    REQUIRE(dse_phase(2e-6, 5e9, lin, fc) == Catch::Approx(2.0 * p1).epsilon(1e-12));
}

TEST_CASE("instantaneous frequency from differentiated total phase") {
    // Total received phase of a tone at baseband offset f: nominal rotation
    // plus the carrier Doppler ramp plus the residual squint term.
    const auto geom = ScenarioGeometry::from_range(2000e3, -7.5e3, 12.0);
    const double fc = 300e9;
    const double f = 20e9;
    const auto dq = doppler_quantities(geom, fc, 0.0);

    auto total_phase = [&](double t) {
        return 2.0 * pi * ((fc + f) * t + dq.shift_hz * t + 0.5 * dq.rate_hzps * t * t) +
               dse_phase(t, f, geom, fc);
    };
    const double t0 = 1e-6;
    const double dt = 1e-10;
    const double f_num = (total_phase(t0 + dt) - total_phase(t0 - dt)) / (2.0 * pi * 2.0 * dt);
    const double f_expected = (fc + f) * (1.0 + (dq.shift_hz + dq.rate_hzps * t0) / fc);
    REQUIRE(f_num == Catch::Approx(f_expected).epsilon(1e-8));
}

TEST_CASE("effective noise budget") {
    const std::complex<double> g{1e-4, 0.0};
    const auto clean = effective_noise(1e-10, g, 0.0, 0.0);
    REQUIRE(clean.effective_w() == Catch::Approx(1e-10).epsilon(1e-15));

    // Distortion rides on |g|^2: quadrupling |g| multiplies the term by 16.
    const auto n1 = effective_noise(1e-10, g, 1e-3, 0.0);
    const auto n4 = effective_noise(1e-10, 4.0 * g, 1e-3, 0.0);
    REQUIRE(n4.received_distortion_w == Catch::Approx(16.0 * n1.received_distortion_w).epsilon(1e-12));
    REQUIRE(n1.effective_w() >= n1.thermal_w);

    REQUIRE(default_dse_residual_w(1e-6) == Catch::Approx(1e-9).epsilon(1e-12));
    REQUIRE_THROWS_AS(effective_noise(-1.0, g, 0.0, 0.0), std::domain_error);
}

TEST_CASE("distortion overtakes thermal noise past the hardware knee") {
    // Low-cost hardware at 30 dBm: locate the crossover on an SNR grid and
    // check it sits at P Gamma = N0.
    const double gamma = 0.05;
    const double n0 = 1e-10;
    double crossover_snr = 0.0;
    for (double snr0 = 1.0; snr0 < 1e6; snr0 *= 1.05) {
        const double distortion = gamma * snr0 * n0;  // received distortion power
        if (distortion > n0) {
            crossover_snr = snr0;
            break;
        }
    }
    REQUIRE(crossover_snr == Catch::Approx(1.0 / gamma).epsilon(0.06));
}
