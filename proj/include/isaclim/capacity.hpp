#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "isaclim/constants.hpp"
#include "isaclim/errors.hpp"

namespace isaclim::capacity {

/// Pre-impairment SNR: P |g|^2 |B|^2 / N0.
inline double snr0(double p_w, std::complex<double> g, std::complex<double> bussgang_gain,
                   double n0_w) {
    check_positive(p_w, "snr0: power");
    check_positive(n0_w, "snr0: noise");
    return p_w * std::norm(g) * std::norm(bussgang_gain) / n0_w;
}

/// Post-impairment SINR: the coherent signal power shrinks by e^{-sigma_phi^2}
/// while signal-dependent distortion raises the floor with power, saturating
/// the ratio at e^{-sigma_phi^2} / gamma_eff.
inline double sinr_eff(double snr0_lin, double sigma_phi2, double gamma_eff) {
    check_nonnegative(snr0_lin, "sinr_eff: snr0");
    check_nonnegative(sigma_phi2, "sinr_eff: sigma_phi2");
    check_nonnegative(gamma_eff, "sinr_eff: gamma_eff");
    return snr0_lin * std::exp(-sigma_phi2) / (1.0 + snr0_lin * gamma_eff);
}

inline double capacity_bits(double sinr) {
    check_nonnegative(sinr, "capacity_bits: sinr");
    return std::log2(1.0 + sinr);
}

/// Hardware-limited ceiling log2(1 + e^{-sigma_phi^2} / gamma_eff); unbounded
/// in the ideal-hardware limit gamma_eff = 0.
inline double ceiling_bits(double sigma_phi2, double gamma_eff) {
    check_nonnegative(sigma_phi2, "ceiling_bits: sigma_phi2");
    check_nonnegative(gamma_eff, "ceiling_bits: gamma_eff");
    if (gamma_eff == 0.0) return std::numeric_limits<double>::infinity();
    return std::log2(1.0 + std::exp(-sigma_phi2) / gamma_eff);
}

inline double awgn_capacity_bits(double snr0_lin) { return capacity_bits(snr0_lin); }

/// SNR at which signal-dependent distortion overtakes thermal noise
/// (P Gamma_eff = N0); the transition out of the power-limited regime.
inline double knee_snr0(double gamma_eff) {
    check_positive(gamma_eff, "knee_snr0: gamma_eff");
    return 1.0 / gamma_eff;
}

/// Pilot-overhead-discounted throughput (1 - M/K) C B.
inline double net_rate_bps(double capacity_bits_per_symbol, int m_pilots, int frame_symbols,
                           double bandwidth_hz) {
    check(m_pilots >= 0 && frame_symbols > 0 && m_pilots <= frame_symbols,
          "net_rate_bps: need 0 <= M <= K");
    check_positive(bandwidth_hz, "net_rate_bps: bandwidth");
    check_nonnegative(capacity_bits_per_symbol, "net_rate_bps: capacity");
    const double overhead = 1.0 - static_cast<double>(m_pilots) / frame_symbols;
    return overhead * capacity_bits_per_symbol * bandwidth_hz;
}

struct LinkBudget {
    double tx_power_w = 0.0;
    double snr0 = 0.0;
    double sinr_eff = 0.0;
    double capacity_bits = 0.0;
    double ceiling_bits = 0.0;
    double net_rate_bps = 0.0;
};

inline LinkBudget evaluate_budget(double p_w, std::complex<double> g,
                                  std::complex<double> bussgang_gain, double n0_w,
                                  double sigma_phi2, double gamma_eff, int m_pilots,
                                  int frame_symbols, double bandwidth_hz) {
    LinkBudget b;
    b.tx_power_w = p_w;
    b.snr0 = snr0(p_w, g, bussgang_gain, n0_w);
    b.sinr_eff = sinr_eff(b.snr0, sigma_phi2, gamma_eff);
    b.capacity_bits = capacity_bits(b.sinr_eff);
    b.ceiling_bits = ceiling_bits(sigma_phi2, gamma_eff);
    b.net_rate_bps = net_rate_bps(b.capacity_bits, m_pilots, frame_symbols, bandwidth_hz);
    return b;
}

} // namespace isaclim::capacity
