#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "isaclim/hardware.hpp"
#include "isaclim/matrix_checks.hpp"

using namespace isaclim;
using namespace isaclim::hw;

namespace {

// Independent oracle: E[U(x) x*] / p for the envelope clipper, integrated
// against the Rayleigh amplitude density with adaptive Simpson.
double clipper_gain_quadrature(double kappa) {
    const double p = 1.0;
    const double a_sat = std::sqrt(p / kappa);
    auto integrand = [&](double r) {
        const double u = std::min(r, a_sat);
        return u * r * (2.0 * r / p) * std::exp(-r * r / p);
    };
    auto simpson = [&](double lo, double hi, int n) {
        double acc = integrand(lo) + integrand(hi);
        const double h = (hi - lo) / n;
        for (int i = 1; i < n; ++i) acc += integrand(lo + i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    // Split at the clip point; the integrand has a kink there.
    const double hi = 9.0 * std::sqrt(p);
    if (a_sat < hi) return (simpson(0.0, a_sat, 4000) + simpson(a_sat, hi, 4000)) / p;
    return simpson(0.0, hi, 8000) / p;
}

} // namespace

TEST_CASE("soft limiter gain closed form matches quadrature oracle") {
    for (double kappa : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0}) {
        REQUIRE(bussgang_gain_soft_limiter(kappa) ==
                Catch::Approx(clipper_gain_quadrature(kappa)).margin(1e-9));
    }
}

TEST_CASE("soft limiter gain limits and monotonicity") {
    // No clipping limit: gain tends to 1.
    REQUIRE(bussgang_gain_soft_limiter(1e-6) == Catch::Approx(1.0).margin(1e-9));
    // Frozen oracle values (quadrature-verified closed form).
    REQUIRE(bussgang_gain_soft_limiter(1.0) == Catch::Approx(0.7715247).margin(2e-6));
    REQUIRE(bussgang_gain_soft_limiter(0.25) == Catch::Approx(0.9899757).margin(2e-6));

    double prev = 2.0;
    for (double kappa : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double b = bussgang_gain_soft_limiter(kappa);
        REQUIRE(b > 0.0);
        REQUIRE(b <= 1.0);
        REQUIRE(b < prev);
        prev = b;
    }

    REQUIRE_THROWS_AS(bussgang_gain_soft_limiter(0.0), std::domain_error);
    REQUIRE_THROWS_AS(bussgang_gain_soft_limiter(-1.0), std::domain_error);
    REQUIRE_THROWS_AS(bussgang_gain_soft_limiter(std::nan("")), std::domain_error);
}

TEST_CASE("soft limiter gain matches monte carlo oracle", "[slow]") {
    for (double kappa : {0.25, 1.0, 4.0}) {
        SoftLimiterParams pa{std::sqrt(1.0 / kappa), 1.0};
        const auto mc = bussgang_decompose_mc(pa, 1.0, 2'000'000, 99 + static_cast<int>(10 * kappa));
        REQUIRE(mc.gain.real() ==
                Catch::Approx(bussgang_gain_soft_limiter(kappa)).margin(1.5e-3));
        REQUIRE(std::abs(mc.gain.imag()) < 1.5e-3);
    }
}

TEST_CASE("soft limiter output power saturates at a_sat^2") {
    const double p_in = 4.0;
    // Light drive: nothing clips.
    REQUIRE(soft_limiter_output_power(1e-4, p_in) == Catch::Approx(p_in).epsilon(1e-10));
    // Deep saturation: output power pinned to the saturation level.
    const double a_sat2 = p_in / 100.0;  // kappa = 100
    REQUIRE(soft_limiter_output_power(100.0, p_in) == Catch::Approx(a_sat2).epsilon(0.01));
}

TEST_CASE("bussgang_decompose identity limit") {
    SoftLimiterParams nearly_linear{1e6, 1.0};
    const auto d = bussgang_decompose(nearly_linear, 1.0);
    REQUIRE(d.gain.real() == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(d.distortion_power == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("bussgang_decompose internal consistency at kappa = 1") {
    SoftLimiterParams pa{1.0, 1.0};
    const auto closed = bussgang_decompose(pa, 1.0);
    const auto mc = bussgang_decompose_mc(pa, 1.0, 1'000'000, 7);
    REQUIRE(closed.gain.real() == Catch::Approx(bussgang_gain_soft_limiter(1.0)).margin(1e-12));
    REQUIRE(mc.gain.real() == Catch::Approx(closed.gain.real()).margin(2e-3));
    REQUIRE(mc.distortion_power == Catch::Approx(closed.distortion_power).margin(2e-3));
}

TEST_CASE("saleh power bookkeeping: E|U|^2 = |B|^2 p + sigma_eta^2") {
    SalehParams pa;
    const double p_in = 0.8;
    const auto quad = bussgang_decompose(pa, p_in);
    const auto mc = bussgang_decompose_mc(pa, p_in, 1'000'000, 31);
    // Output power from the two routes must agree within sampling error.
    const double out_quad = std::norm(quad.gain) * p_in + quad.distortion_power;
    const double out_mc = std::norm(mc.gain) * p_in + mc.distortion_power;
    REQUIRE(out_mc == Catch::Approx(out_quad).epsilon(5e-3));
    REQUIRE(std::abs(mc.gain - quad.gain) < 5e-3);
    REQUIRE(quad.distortion_power >= 0.0);
}

TEST_CASE("saleh transfer basics") {
    SalehParams pa;
    REQUIRE(saleh_transfer({0.0, 0.0}, pa) == std::complex<double>(0.0, 0.0));

    // AM-AM curve peaks at r = 1/sqrt(beta_a).
    const double r_peak = 1.0 / std::sqrt(pa.beta_a);
    REQUIRE(std::abs(saleh_transfer({r_peak, 0.0}, pa)) ==
            Catch::Approx(pa.alpha_a / (2.0 * std::sqrt(pa.beta_a))).epsilon(1e-12));
    REQUIRE(std::abs(saleh_transfer({r_peak * 0.5, 0.0}, pa)) < std::abs(saleh_transfer({r_peak, 0.0}, pa)));

    // Phase equivariance: rotating the input rotates the output by the same angle.
    const std::complex<double> s{0.4, 0.3};
    const double phi0 = 1.1;
    const auto rotated = saleh_transfer(s * std::polar(1.0, phi0), pa);
    const auto base = saleh_transfer(s, pa);
    REQUIRE(std::arg(rotated / base) == Catch::Approx(phi0).margin(1e-12));

    REQUIRE_THROWS_AS([] { SalehParams bad; bad.alpha_a = -1.0; bad.validate(); }(),
                      std::domain_error);
}

TEST_CASE("gamma components reproduce reference hardware specs") {
    // High-performance transceiver class.
    const auto hp = gamma_components(0.106, 10e9, 20.9e-15, 6.0);
    REQUIRE(hp.pa == Catch::Approx(0.0112).epsilon(0.05));
    REQUIRE(hp.lo == Catch::Approx(4.3e-7).epsilon(0.05));
    REQUIRE(hp.adc == Catch::Approx(1.7e-4).epsilon(0.05));
    REQUIRE(hp.total() == Catch::Approx(hp.pa + hp.lo + hp.adc).epsilon(1e-15));

    // SWaP-efficient transceiver class.
    const auto swap = gamma_components(0.2093, 10e9, 70e-15, 5.0);
    REQUIRE(swap.pa == Catch::Approx(0.0438).epsilon(0.05));
    REQUIRE(swap.lo == Catch::Approx(4.8e-6).epsilon(0.05));
    REQUIRE(swap.adc == Catch::Approx(6.5e-4).epsilon(0.05));

    // PA distortion dominates by orders of magnitude.
    REQUIRE(hp.pa / hp.lo > 5e3);
    REQUIRE(hp.pa / hp.lo < 5e4);
    REQUIRE(hp.pa / hp.adc > 30.0);
    REQUIRE(hp.pa / hp.adc < 300.0);

    REQUIRE_THROWS_AS(gamma_components(1.2, 10e9, 1e-15, 6.0), std::domain_error);
    REQUIRE_THROWS_AS(gamma_components(0.1, -1.0, 1e-15, 6.0), std::domain_error);
    REQUIRE_THROWS_AS(gamma_components(0.1, 10e9, 1e-15, 0.0), std::domain_error);
}

TEST_CASE("phase correlation matrix structure") {
    PhaseNoiseModel pn{0.2, 100e3, 0.0};
    const std::vector<double> times{0.0, 1e-6, 2e-6, 1e-3, 2.0};
    const auto r = phase_correlation_matrix(times, pn);

    // Coincident samples: 1 - e^{-sigma^2}; far-separated samples: ~0.
    REQUIRE(r(0, 0) == Catch::Approx(1.0 - std::exp(-0.2)).epsilon(1e-12));
    REQUIRE(r(0, 4) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(r(1, 0) == r(0, 1));
    REQUIRE(r.minCoeff() >= 0.0);

    const auto rep = analyze_hermitian(r);
    REQUIRE(rep.hermitian());
    REQUIRE(rep.psd());

    // No phase noise: the matrix vanishes.
    PhaseNoiseModel quiet{0.0, 100e3, 0.0};
    REQUIRE(phase_correlation_matrix(times, quiet).cwiseAbs().maxCoeff() == 0.0);

    const std::vector<double> bad{0.0, 1e-6, 1e-6};
    REQUIRE_THROWS_AS(phase_correlation_matrix(bad, pn), std::domain_error);
}

TEST_CASE("phase correlation matrix is PSD over random grids") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 4 + static_cast<int>(rng.uniform() * 12);
        std::vector<double> times(static_cast<std::size_t>(m));
        double t = 0.0;
        for (auto& v : times) {
            t += 1e-9 + rng.uniform() * 1e-5;
            v = t;
        }
        PhaseNoiseModel pn{rng.uniform() * 0.5, rng.uniform() * 5e5, 0.0};
        const auto r = phase_correlation_matrix(times, pn);
        REQUIRE(analyze_hermitian(r).psd());
    }
}

TEST_CASE("profile registry") {
    const auto& profiles = builtin_profiles();
    REQUIRE(profiles.size() == 4);
    REQUIRE(profile_by_key("state_of_the_art").gamma_eff_asserted == Catch::Approx(0.005));
    REQUIRE(profile_by_key("high_performance").gamma_eff_asserted == Catch::Approx(0.01));
    REQUIRE(profile_by_key("swap_efficient").gamma_eff_asserted == Catch::Approx(0.025));
    REQUIRE(profile_by_key("low_cost").gamma_eff_asserted == Catch::Approx(0.05));
    REQUIRE_THROWS_AS(profile_by_key("imaginary"), std::domain_error);

    // Component-derived and asserted quality factors are both available and
    // are not forced to agree.
    const auto hp = profile_by_key("high_performance");
    const auto derived = hp.derived_gammas();
    REQUIRE(derived.total() == Catch::Approx(0.0114).epsilon(0.05));
    REQUIRE(derived.total() != hp.gamma_eff_asserted);

    // Characteristic bandwidth ladder for rate metrics.
    REQUIRE(profile_by_key("state_of_the_art").characteristic_bandwidth_hz == Catch::Approx(100e9));
    REQUIRE(profile_by_key("low_cost").characteristic_bandwidth_hz == Catch::Approx(5e9));
}

TEST_CASE("linewidth-accumulated phase variance helper") {
    REQUIRE(sigma_phi2_from_linewidth(100e3, 1e-5) == Catch::Approx(2.0 * pi).epsilon(1e-12));
    REQUIRE(sigma_phi2_from_linewidth(0.0, 1.0) == 0.0);
}

TEST_CASE("quasi-linear drive guard") {
    // The constant quality-factor treatment holds with controlled back-off;
    // past kappa ~ 1 the amplifier is into deep saturation.
    REQUIRE(bussgang_linear_region(0.25));
    REQUIRE(bussgang_linear_region(1.0));
    REQUIRE_FALSE(bussgang_linear_region(4.0));
}
