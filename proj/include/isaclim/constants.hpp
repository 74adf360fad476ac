#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace isaclim {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double speed_of_light_mps = 299792458.0;
inline constexpr double boltzmann_jpk = 1.380649e-23;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
    if (!(x > 0.0)) throw std::domain_error("linear_to_db: value must be positive");
    return 10.0 * std::log10(x);
}

inline double dbm_to_watt(double dbm) { return 1e-3 * db_to_linear(dbm); }
inline double watt_to_dbm(double w) { return linear_to_db(w) + 30.0; }

inline double wavelength_m(double carrier_hz) {
    if (!(carrier_hz > 0.0)) throw std::domain_error("wavelength_m: carrier must be positive");
    return speed_of_light_mps / carrier_hz;
}

/// Thermal noise floor k_B * T * B in watts.
inline double thermal_noise_w(double temperature_k, double bandwidth_hz) {
    if (!(temperature_k > 0.0) || !(bandwidth_hz > 0.0))
        throw std::domain_error("thermal_noise_w: temperature and bandwidth must be positive");
    return boltzmann_jpk * temperature_k * bandwidth_hz;
}

} // namespace isaclim
