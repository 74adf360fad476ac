#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"

namespace isaclim::link {

/// Relative orbital state of the two link ends. `range_rate_mps` stores
/// dR/dt: negative while the satellites close, so the Doppler shift
/// -f_c * range_rate / c comes out positive for a closing pass.
struct ScenarioGeometry {
    double range_m = 0.0;
    double range_rate_mps = 0.0;
    double rel_accel_mps2 = 0.0;
    Eigen::Vector3d los_unit = Eigen::Vector3d::UnitX();
    Eigen::Vector3d position_offset = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity_offset = Eigen::Vector3d::Zero();

    static ScenarioGeometry from_range(double range_m, double range_rate_mps = 0.0,
                                       double rel_accel_mps2 = 0.0) {
        ScenarioGeometry g;
        g.range_m = range_m;
        g.range_rate_mps = range_rate_mps;
        g.rel_accel_mps2 = rel_accel_mps2;
        g.los_unit = Eigen::Vector3d::UnitX();
        g.position_offset = range_m * g.los_unit;
        g.velocity_offset = range_rate_mps * g.los_unit;
        g.validate();
        return g;
    }

    void validate() const {
        check_positive(range_m, "ScenarioGeometry::range_m");
        check_finite(range_rate_mps, "ScenarioGeometry::range_rate_mps");
        check_finite(rel_accel_mps2, "ScenarioGeometry::rel_accel_mps2");
        check(std::abs(los_unit.norm() - 1.0) < 1e-12,
              "ScenarioGeometry::los_unit must be a unit vector");
        check(std::abs(position_offset.norm() - range_m) <= 1e-6 * range_m,
              "ScenarioGeometry::position_offset norm must equal range_m");
    }
};

inline double beamwidth(double diameter_m, double carrier_hz) {
    check_positive(diameter_m, "beamwidth: diameter");
    check_positive(carrier_hz, "beamwidth: carrier");
    return 1.02 * wavelength_m(carrier_hz) / diameter_m;
}

/// Ideal uniform-aperture gain (pi D / lambda)^2.
inline double aperture_gain(double diameter_m, double carrier_hz) {
    check_positive(diameter_m, "aperture_gain: diameter");
    const double x = pi * diameter_m / wavelength_m(carrier_hz);
    return x * x;
}

/// Antenna geometry plus the Gaussian-beam rolloff factors derived from the
/// half-power beamwidth. The power pattern is exp(-g_power |theta|^2); the
/// amplitude pattern uses gamma = g_power / 2.
struct AntennaConfig {
    double diameter_m = 1.0;
    double carrier_hz = 300e9;
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double beamwidth_rad = 0.0;
    double amp_rolloff = 0.0;    // gamma, rad^-2
    double power_rolloff = 0.0;  // g_power = 2 gamma, rad^-2

    static AntennaConfig aperture(double diameter_m, double carrier_hz) {
        const double g = aperture_gain(diameter_m, carrier_hz);
        return with_gains(diameter_m, carrier_hz, g, g);
    }

    static AntennaConfig with_gains(double diameter_m, double carrier_hz, double tx_gain,
                                    double rx_gain) {
        check_positive(tx_gain, "AntennaConfig: tx_gain");
        check_positive(rx_gain, "AntennaConfig: rx_gain");
        AntennaConfig a;
        a.diameter_m = diameter_m;
        a.carrier_hz = carrier_hz;
        a.tx_gain = tx_gain;
        a.rx_gain = rx_gain;
        a.beamwidth_rad = beamwidth(diameter_m, carrier_hz);
        a.power_rolloff = 4.0 * std::log(2.0) / (a.beamwidth_rad * a.beamwidth_rad);
        a.amp_rolloff = a.power_rolloff / 2.0;
        return a;
    }
};

struct PointingState {
    Eigen::Vector2d error_rad = Eigen::Vector2d::Zero();
    double rms_rad = 0.0;
};

/// Propagation phase -2 pi f R / c reduced to (-2 pi, 0]. The unreduced
/// argument reaches ~1e10 rad at THz carriers, so the cycle count is reduced
/// in extended precision before any trig sees it.
inline double carrier_phase(double carrier_hz, double range_m) {
    const long double cycles =
        static_cast<long double>(carrier_hz) * static_cast<long double>(range_m) /
        static_cast<long double>(speed_of_light_mps);
    const long double frac = cycles - std::floor(cycles);
    return static_cast<double>(-2.0L * static_cast<long double>(pi) * frac);
}

/// Free-space channel gain: magnitude (c / 4 pi R f) sqrt(Gt Gr), phase
/// -2 pi f R / c. A millimetre of range moves the phase through a full turn
/// at 300 GHz.
inline std::complex<double> friis_gain(const ScenarioGeometry& geom, const AntennaConfig& ant) {
    geom.validate();
    check_positive(ant.carrier_hz, "friis_gain: carrier");
    const double mag = speed_of_light_mps / (4.0 * pi * geom.range_m * ant.carrier_hz) *
                       std::sqrt(ant.tx_gain * ant.rx_gain);
    return std::polar(mag, carrier_phase(ant.carrier_hz, geom.range_m));
}

/// Gaussian-beam power loss factor exp(-g_power |theta_e|^2).
inline double pointing_loss(const Eigen::Vector2d& theta_e, const AntennaConfig& ant) {
    return std::exp(-ant.power_rolloff * theta_e.squaredNorm());
}

/// The Gaussian pattern is a main-lobe approximation, valid for offsets below
/// twice the half-power beamwidth.
inline bool within_beam_model(const Eigen::Vector2d& theta_e, const AntennaConfig& ant) {
    return theta_e.norm() < 2.0 * ant.beamwidth_rad;
}

/// E[exp(-g_power |theta|^2)] for theta_x, theta_y ~ N(0, rms^2):
/// 1 / (1 + 2 g_power rms^2).
inline double mean_pointing_loss_analytic(double rms_rad, const AntennaConfig& ant) {
    check_nonnegative(rms_rad, "mean_pointing_loss_analytic: rms");
    return 1.0 / (1.0 + 2.0 * ant.power_rolloff * rms_rad * rms_rad);
}

struct DopplerQuantities {
    double shift_hz = 0.0;         // f_D
    double rate_hzps = 0.0;        // f_D time derivative
    double differential_hz = 0.0;  // spread of the shift across the band
};

inline DopplerQuantities doppler_quantities(const ScenarioGeometry& geom, double carrier_hz,
                                            double bandwidth_hz) {
    check_positive(carrier_hz, "doppler_quantities: carrier");
    check_nonnegative(bandwidth_hz, "doppler_quantities: bandwidth");
    DopplerQuantities d;
    d.shift_hz = -carrier_hz * geom.range_rate_mps / speed_of_light_mps;
    d.rate_hzps = -carrier_hz * geom.rel_accel_mps2 / speed_of_light_mps;
    d.differential_hz = std::abs(geom.range_rate_mps) * bandwidth_hz / speed_of_light_mps;
    return d;
}

/// Residual frequency-dependent Doppler phase after compensation:
/// 2 pi (f_D (f/f_c) t + 0.5 f_D_dot (f/f_c) t^2).
inline double dse_phase(double t_s, double f_baseband_hz, const ScenarioGeometry& geom,
                        double carrier_hz) {
    const DopplerQuantities d = doppler_quantities(geom, carrier_hz, 0.0);
    const double scale = f_baseband_hz / carrier_hz;
    return 2.0 * pi * (d.shift_hz * scale * t_s + 0.5 * d.rate_hzps * scale * t_s * t_s);
}

/// Additive noise stack at the receiver. The distortion term rides on the
/// channel gain, so it is stored already referred to the receive side.
struct NoiseBudget {
    double thermal_w = 0.0;
    double received_distortion_w = 0.0;  // |g|^2 sigma_eta^2
    double dse_residual_w = 0.0;

    double effective_w() const { return thermal_w + received_distortion_w + dse_residual_w; }
};

inline NoiseBudget effective_noise(double thermal_w, std::complex<double> g,
                                   double distortion_power_w, double dse_residual_w) {
    check_nonnegative(thermal_w, "effective_noise: thermal");
    check_nonnegative(distortion_power_w, "effective_noise: distortion");
    check_nonnegative(dse_residual_w, "effective_noise: dse residual");
    NoiseBudget n;
    n.thermal_w = thermal_w;
    n.received_distortion_w = std::norm(g) * distortion_power_w;
    n.dse_residual_w = dse_residual_w;
    return n;
}

/// Default residual after wideband compensation: 30 dB below the received
/// distortion term.
inline double default_dse_residual_w(double received_distortion_w) {
    check_nonnegative(received_distortion_w, "default_dse_residual_w: distortion");
    return 1e-3 * received_distortion_w;
}

} // namespace isaclim::link
