#pragma once

#include <chrono>
#include <complex>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "isaclim/capacity.hpp"
#include "isaclim/config.hpp"
#include "isaclim/csv.hpp"
#include "isaclim/hardware.hpp"
#include "isaclim/link.hpp"
#include "isaclim/parallel.hpp"
#include "isaclim/rng.hpp"
#include "isaclim/sensing.hpp"
#include "isaclim/svg.hpp"
#include "isaclim/tradeoff.hpp"
#include "isaclim/version.hpp"

namespace isaclim::experiment {

struct Series {
    std::string name;  // column label with unit, e.g. "capacity_low_cost(bit/symbol)"
    std::vector<double> values;
};

struct SweepResult {
    std::string experiment;
    std::string axis_name;
    std::vector<double> axis;
    std::vector<Series> series;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::string version = version_string;
    double wall_seconds = 0.0;
    std::vector<std::string> files;
};

namespace detail {

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct LinkSetup {
    link::ScenarioGeometry geometry;
    link::AntennaConfig antenna;
    double n0_w = 0.0;
    double pointing_avg = 1.0;  // Monte Carlo mean of the pointing power factor
    std::complex<double> g;
    double g2_eff = 0.0;  // |g|^2 including the averaged pointing loss
};

inline link::AntennaConfig make_antenna(const ScenarioConfig& sc, double carrier_hz,
                                        double diameter_m) {
    if (sc.gain_model == "fixed")
        return link::AntennaConfig::with_gains(diameter_m, carrier_hz,
                                               db_to_linear(sc.tx_gain_dbi),
                                               db_to_linear(sc.rx_gain_dbi));
    return link::AntennaConfig::aperture(diameter_m, carrier_hz);
}

/// The runner averages the pointing power factor over Gaussian draws before
/// computing downstream metrics; the per-point stream keeps the average
/// independent of evaluation order.
inline double pointing_average(const link::AntennaConfig& ant, double rms_rad, int samples,
                               Rng rng) {
    if (rms_rad <= 0.0) return 1.0;
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        const Eigen::Vector2d theta{rms_rad * rng.normal(), rms_rad * rng.normal()};
        acc += link::pointing_loss(theta, ant);
    }
    return acc / samples;
}

inline LinkSetup make_link(const ExperimentConfig& cfg, double carrier_hz, double diameter_m,
                           double range_m, double bandwidth_hz, std::uint64_t stream) {
    LinkSetup ls;
    ls.geometry = link::ScenarioGeometry::from_range(range_m, cfg.scenario.range_rate_mps,
                                                     cfg.scenario.accel_mps2);
    ls.antenna = make_antenna(cfg.scenario, carrier_hz, diameter_m);
    ls.n0_w = thermal_noise_w(cfg.scenario.noise_temperature_k, bandwidth_hz);
    ls.g = link::friis_gain(ls.geometry, ls.antenna);
    ls.pointing_avg =
        pointing_average(ls.antenna, cfg.scenario.pointing_rms_urad * 1e-6,
                         cfg.monte_carlo.pointing_samples,
                         Rng::derive(cfg.monte_carlo.seed, stream));
    ls.g2_eff = std::norm(ls.g) * ls.pointing_avg;
    return ls;
}

inline sensing::SensingState make_sensing_state(const ExperimentConfig& cfg,
                                                const hw::HardwareProfile& prof,
                                                const LinkSetup& ls, double p_w,
                                                double bandwidth_hz) {
    sensing::SensingState st;
    st.geometry = ls.geometry;
    st.antenna = ls.antenna;
    const double duration = cfg.frame.duration_us > 0.0 ? cfg.frame.duration_us * 1e-6
                                                        : cfg.frame.symbols / bandwidth_hz;
    // Averaged pointing loss is folded into the pilot amplitude.
    st.frame = sensing::PilotFrame::uniform(cfg.frame.pilots, cfg.frame.symbols, duration,
                                            std::sqrt(p_w * ls.pointing_avg));
    st.bussgang_gain = {1.0, 0.0};
    st.phase_noise =
        hw::PhaseNoiseModel{cfg.scenario.sigma_phi2, prof.linewidth_hz, prof.jitter_rms_s};
    const double received_signal = std::norm(ls.g) * ls.pointing_avg * p_w;
    st.noise.thermal_w = ls.n0_w;
    st.noise.received_distortion_w = prof.gamma_eff_asserted * received_signal;
    st.noise.dse_residual_w = link::default_dse_residual_w(st.noise.received_distortion_w);
    return st;
}

struct RmsePair {
    double range_m = std::numeric_limits<double>::quiet_NaN();
    double range_rate_mps = std::numeric_limits<double>::quiet_NaN();
};

inline RmsePair sensing_rmse(const ExperimentConfig& cfg, const hw::HardwareProfile& prof,
                             const LinkSetup& ls, double p_w, double bandwidth_hz) {
    const sensing::SensingState st = make_sensing_state(cfg, prof, ls, p_w, bandwidth_hz);
    const sensing::FisherResult bounds = sensing::compute_bounds(st);
    RmsePair out;
    if (const auto v = sensing::bcrlb(bounds, sensing::Param::range)) out.range_m = std::sqrt(*v);
    if (const auto v = sensing::bcrlb(bounds, sensing::Param::range_rate))
        out.range_rate_mps = std::sqrt(*v);
    return out;
}

inline hw::HardwareProfile resolve_profile(const ExperimentConfig& cfg, const std::string& key) {
    hw::HardwareProfile p = hw::profile_by_key(key);
    const auto it = cfg.profile_overrides.find(key);
    if (it != cfg.profile_overrides.end()) {
        const ProfileOverride& ov = it->second;
        if (ov.gamma_eff) p.gamma_eff_asserted = *ov.gamma_eff;
        if (ov.sigma_phi2) p.sigma_phi2 = *ov.sigma_phi2;
        if (ov.linewidth_khz) p.linewidth_hz = *ov.linewidth_khz * 1e3;
        if (ov.evm) p.evm_pa = *ov.evm;
        if (ov.jitter_fs) p.jitter_rms_s = *ov.jitter_fs * 1e-15;
        if (ov.enob) p.enob = *ov.enob;
        if (ov.characteristic_bandwidth_ghz)
            p.characteristic_bandwidth_hz = *ov.characteristic_bandwidth_ghz * 1e9;
    }
    return p;
}

inline SweepAxisConfig default_axis(const std::string& experiment) {
    if (experiment == "capacity_vs_snr" || experiment == "awgn_comparison")
        return {0.0, 50.0, 51, false};
    if (experiment == "rmse_vs_snr") return {0.0, 50.0, 26, false};
    if (experiment == "freq_sweep") return {100.0, 1000.0, 13, true};
    if (experiment == "distance_sweep") return {500.0, 5000.0, 10, false};
    if (experiment == "gamma_sweep") return {1e-3, 0.1, 25, true};
    return {0.0, 1.0, 2, false};
}

} // namespace detail

inline SweepResult run_capacity_vs_snr(const ExperimentConfig& cfg, int threads = 0) {
    (void)threads;
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "snr0(dB)";
    res.axis = cfg.sweep.value_or(detail::default_axis(cfg.experiment)).values();
    const auto profiles = cfg.resolve_profiles();

    Series awgn{"capacity_awgn(bit/symbol)", {}};
    for (double db : res.axis) awgn.values.push_back(capacity::awgn_capacity_bits(db_to_linear(db)));

    for (const auto& prof : profiles) {
        Series cap{"capacity_" + prof.key + "(bit/symbol)", {}};
        Series ceil{"ceiling_" + prof.key + "(bit/symbol)", {}};
        const double c_sat = capacity::ceiling_bits(prof.sigma_phi2, prof.gamma_eff_asserted);
        for (double db : res.axis) {
            const double sinr =
                capacity::sinr_eff(db_to_linear(db), prof.sigma_phi2, prof.gamma_eff_asserted);
            cap.values.push_back(capacity::capacity_bits(sinr));
            ceil.values.push_back(c_sat);
        }
        res.series.push_back(std::move(cap));
        res.series.push_back(std::move(ceil));
    }
    res.series.push_back(std::move(awgn));
    return res;
}

inline SweepResult run_rmse_vs_snr(const ExperimentConfig& cfg, int threads = 0) {
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "snr0(dB)";
    res.axis = cfg.sweep.value_or(detail::default_axis(cfg.experiment)).values();
    const auto profiles = cfg.resolve_profiles();
    const double bw = cfg.scenario.bandwidth_ghz * 1e9;
    const int n = static_cast<int>(res.axis.size());

    std::vector<std::vector<detail::RmsePair>> table(
        profiles.size(), std::vector<detail::RmsePair>(static_cast<std::size_t>(n)));
    std::vector<detail::RmsePair> awgn(static_cast<std::size_t>(n));
    parallel_for(n, threads, [&](int i) {
        const detail::LinkSetup ls =
            detail::make_link(cfg, cfg.scenario.carrier_ghz * 1e9, cfg.scenario.antenna_diameter_m,
                              cfg.scenario.range_km * 1e3, bw, static_cast<std::uint64_t>(i));
        const double p_w = db_to_linear(res.axis[static_cast<std::size_t>(i)]) * ls.n0_w / ls.g2_eff;
        for (std::size_t pi = 0; pi < profiles.size(); ++pi)
            table[pi][static_cast<std::size_t>(i)] =
                detail::sensing_rmse(cfg, profiles[pi], ls, p_w, bw);
        // Ideal-hardware reference: no distortion, no phase noise.
        hw::HardwareProfile ideal = profiles.front();
        ideal.gamma_eff_asserted = 0.0;
        ideal.sigma_phi2 = 0.0;
        ExperimentConfig clean = cfg;
        clean.scenario.sigma_phi2 = 0.0;
        awgn[static_cast<std::size_t>(i)] = detail::sensing_rmse(clean, ideal, ls, p_w, bw);
    });

    for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
        Series sr{"rmse_range_" + profiles[pi].key + "(m)", {}};
        Series sv{"rmse_range_rate_" + profiles[pi].key + "(m/s)", {}};
        for (int i = 0; i < n; ++i) {
            sr.values.push_back(table[pi][static_cast<std::size_t>(i)].range_m);
            sv.values.push_back(table[pi][static_cast<std::size_t>(i)].range_rate_mps);
        }
        res.series.push_back(std::move(sr));
        res.series.push_back(std::move(sv));
    }
    Series ar{"rmse_range_awgn(m)", {}};
    for (int i = 0; i < n; ++i) ar.values.push_back(awgn[static_cast<std::size_t>(i)].range_m);
    res.series.push_back(std::move(ar));
    return res;
}

inline SweepResult run_awgn_comparison(const ExperimentConfig& cfg, int threads = 0) {
    // Capacity columns from the closed forms plus the sensing columns of the
    // hardware-aware and ideal models on a common SNR axis.
    ExperimentConfig c = cfg;
    c.experiment = "capacity_vs_snr";
    c.sweep = cfg.sweep ? cfg.sweep : std::optional<SweepAxisConfig>(detail::default_axis("awgn_comparison"));
    SweepResult caps = run_capacity_vs_snr(c, threads);
    c.experiment = "rmse_vs_snr";
    SweepResult rmse = run_rmse_vs_snr(c, threads);

    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = caps.axis_name;
    res.axis = caps.axis;
    for (auto& s : caps.series) res.series.push_back(std::move(s));
    for (auto& s : rmse.series)
        if (s.name.rfind("rmse_range_", 0) == 0 && s.name.find("rate") == std::string::npos)
            res.series.push_back(std::move(s));
    return res;
}

inline SweepResult run_freq_sweep(const ExperimentConfig& cfg, int threads = 0) {
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "carrier(GHz)";
    res.axis = cfg.sweep.value_or(detail::default_axis(cfg.experiment)).values();
    const auto profiles = cfg.resolve_profiles();
    const double bw = cfg.scenario.bandwidth_ghz * 1e9;
    const int n = static_cast<int>(res.axis.size());
    const double snr0 = db_to_linear(cfg.freq_sweep_snr0_db);

    std::vector<std::vector<detail::RmsePair>> table(
        profiles.size(), std::vector<detail::RmsePair>(static_cast<std::size_t>(n)));
    parallel_for(n, threads, [&](int i) {
        const detail::LinkSetup ls = detail::make_link(
            cfg, res.axis[static_cast<std::size_t>(i)] * 1e9, cfg.scenario.antenna_diameter_m,
            cfg.scenario.range_km * 1e3, bw, static_cast<std::uint64_t>(i));
        const double p_w = snr0 * ls.n0_w / ls.g2_eff;
        for (std::size_t pi = 0; pi < profiles.size(); ++pi)
            table[pi][static_cast<std::size_t>(i)] =
                detail::sensing_rmse(cfg, profiles[pi], ls, p_w, bw);
    });

    for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
        Series sr{"rmse_range_" + profiles[pi].key + "(m)", {}};
        Series sv{"rmse_range_rate_" + profiles[pi].key + "(m/s)", {}};
        for (int i = 0; i < n; ++i) {
            sr.values.push_back(table[pi][static_cast<std::size_t>(i)].range_m);
            sv.values.push_back(table[pi][static_cast<std::size_t>(i)].range_rate_mps);
        }
        res.series.push_back(std::move(sr));
        res.series.push_back(std::move(sv));
    }
    return res;
}

inline SweepResult run_distance_sweep(const ExperimentConfig& cfg, int threads = 0) {
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "range(km)";
    res.axis = cfg.sweep.value_or(detail::default_axis(cfg.experiment)).values();
    const hw::HardwareProfile prof = detail::resolve_profile(cfg, cfg.distance.profile);
    const double bw = cfg.distance.bandwidth_ghz * 1e9;
    const double p_w = dbm_to_watt(cfg.scenario.tx_power_dbm);
    const int n = static_cast<int>(res.axis.size());

    std::vector<std::vector<double>> table(cfg.distance.frequencies_ghz.size(),
                                           std::vector<double>(static_cast<std::size_t>(n)));
    parallel_for(n, threads, [&](int i) {
        for (std::size_t fi = 0; fi < cfg.distance.frequencies_ghz.size(); ++fi) {
            const detail::LinkSetup ls = detail::make_link(
                cfg, cfg.distance.frequencies_ghz[fi] * 1e9, cfg.scenario.antenna_diameter_m,
                res.axis[static_cast<std::size_t>(i)] * 1e3, bw,
                static_cast<std::uint64_t>(i) * 31 + fi);
            const double snr0 = p_w * ls.g2_eff / ls.n0_w;
            const double sinr =
                capacity::sinr_eff(snr0, prof.sigma_phi2, prof.gamma_eff_asserted);
            table[fi][static_cast<std::size_t>(i)] = capacity::capacity_bits(sinr);
        }
    });

    for (std::size_t fi = 0; fi < cfg.distance.frequencies_ghz.size(); ++fi) {
        Series s{"capacity_" + format_number(cfg.distance.frequencies_ghz[fi]) + "ghz(bit/symbol)",
                 std::move(table[fi])};
        res.series.push_back(std::move(s));
    }
    return res;
}

inline SweepResult run_gamma_sweep(const ExperimentConfig& cfg, int threads = 0) {
    (void)threads;
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "gamma_eff(1)";
    res.axis = cfg.sweep.value_or(detail::default_axis(cfg.experiment)).values();
    for (double snr_db : cfg.gamma_snr_points_db) {
        Series s{"capacity_at_" + format_number(snr_db) + "db(bit/symbol)", {}};
        for (double gamma : res.axis)
            s.values.push_back(
                capacity::capacity_bits(capacity::sinr_eff(db_to_linear(snr_db), 0.0, gamma)));
        res.series.push_back(std::move(s));
    }
    return res;
}

inline SweepResult run_cd_frontier(const ExperimentConfig& cfg, int threads = 0) {
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "distortion_target_multiplier(1)";
    res.axis = cfg.tradeoff.target_multipliers;
    const auto profiles = cfg.resolve_profiles();
    const tradeoff::Constellation constellation =
        tradeoff::Constellation::by_name(cfg.tradeoff.constellation);
    const double p_w = dbm_to_watt(cfg.scenario.tx_power_dbm);
    const int n_targets = static_cast<int>(res.axis.size());

    struct Row {
        double distortion, rate, net_rate, converged;
    };
    std::vector<std::vector<Row>> table(profiles.size(),
                                        std::vector<Row>(static_cast<std::size_t>(n_targets)));

    parallel_for(static_cast<int>(profiles.size()), threads, [&](int pi) {
        const hw::HardwareProfile& prof = profiles[static_cast<std::size_t>(pi)];
        const double bw = prof.characteristic_bandwidth_hz;
        const detail::LinkSetup ls = detail::make_link(
            cfg, cfg.scenario.carrier_ghz * 1e9, cfg.scenario.antenna_diameter_m,
            cfg.scenario.range_km * 1e3, bw, 1000 + static_cast<std::uint64_t>(pi));

        tradeoff::ImpairedChannel channel;
        channel.gain = {std::sqrt(p_w * ls.g2_eff), 0.0};
        const double received = p_w * ls.g2_eff;
        channel.noise_w = ls.n0_w + prof.gamma_eff_asserted * received *
                                        (1.0 + 1e-3);  // distortion + squint residual
        channel.sigma_phi2 = prof.sigma_phi2;

        tradeoff::DistortionModel dm;
        dm.base = detail::make_sensing_state(cfg, prof, ls, p_w, bw);
        dm.base.frame.symbol_amp = 1.0;  // power supplied per evaluation
        dm.gamma_eff = prof.gamma_eff_asserted;
        dm.thermal_w = ls.n0_w;
        dm.configured_power_w = p_w * ls.pointing_avg;
        dm.ref_range_var = std::pow(cfg.tradeoff.reference_rmse_mm * 1e-3, 2.0);
        dm.ref_range_rate_var = std::pow(cfg.tradeoff.reference_rmse_mmps * 1e-3, 2.0);

        const double d_uniform = tradeoff::distortion_of(
            tradeoff::InputDistribution::uniform(constellation.size()), constellation, dm);

        for (int ti = 0; ti < n_targets; ++ti) {
            const double mult = res.axis[static_cast<std::size_t>(ti)];
            tradeoff::BaOptions opt;
            opt.d_target = mult > 0.0 ? mult * d_uniform
                                      : std::numeric_limits<double>::infinity();
            opt.tolerance = cfg.tradeoff.tolerance;
            opt.max_iters = cfg.tradeoff.max_iters;
            opt.mi_samples = cfg.monte_carlo.mi_samples;
            opt.seed = detail::derive_seed(cfg.monte_carlo.seed,
                                           2000 + static_cast<std::uint64_t>(pi) * 64 +
                                               static_cast<std::uint64_t>(ti));
            const tradeoff::TradeoffPoint point =
                tradeoff::ba_optimize(constellation, dm, channel, opt);
            table[static_cast<std::size_t>(pi)][static_cast<std::size_t>(ti)] = {
                point.distortion, point.rate_bits,
                capacity::net_rate_bps(point.rate_bits, cfg.frame.pilots, cfg.frame.symbols, bw),
                point.converged ? 1.0 : 0.0};
        }
    });

    for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
        Series d{"distortion_" + profiles[pi].key + "(1)", {}};
        Series r{"rate_" + profiles[pi].key + "(bit/symbol)", {}};
        Series nr{"net_rate_" + profiles[pi].key + "(bit/s)", {}};
        Series cv{"converged_" + profiles[pi].key + "(bool)", {}};
        for (int ti = 0; ti < n_targets; ++ti) {
            const Row& row = table[pi][static_cast<std::size_t>(ti)];
            d.values.push_back(row.distortion);
            r.values.push_back(row.rate);
            nr.values.push_back(row.net_rate);
            cv.values.push_back(row.converged);
        }
        res.series.push_back(std::move(d));
        res.series.push_back(std::move(r));
        res.series.push_back(std::move(nr));
        res.series.push_back(std::move(cv));
    }
    return res;
}

inline SweepResult run_feasibility_map(const ExperimentConfig& cfg, int threads = 0) {
    SweepResult res;
    res.experiment = cfg.experiment;
    res.axis_name = "cell(1)";
    const hw::HardwareProfile prof = detail::resolve_profile(cfg, cfg.feasibility.profile);
    const double bw = prof.characteristic_bandwidth_hz;
    const std::vector<double> powers = cfg.feasibility.power_dbm.values();
    const std::vector<double> diameters = cfg.feasibility.diameter_m.values();
    const int n = static_cast<int>(powers.size() * diameters.size());

    Series col_p{"tx_power(dBm)", std::vector<double>(static_cast<std::size_t>(n))};
    Series col_d{"diameter(m)", std::vector<double>(static_cast<std::size_t>(n))};
    Series col_c{"capacity(bit/symbol)", std::vector<double>(static_cast<std::size_t>(n))};
    Series col_r{"rmse_range(m)", std::vector<double>(static_cast<std::size_t>(n))};
    Series col_k{"class(0=fail,1=comm_only,2=sense_only,3=feasible)",
                 std::vector<double>(static_cast<std::size_t>(n))};

    parallel_for(n, threads, [&](int idx) {
        const std::size_t di = static_cast<std::size_t>(idx) % diameters.size();
        const std::size_t piw = static_cast<std::size_t>(idx) / diameters.size();
        const double p_w = dbm_to_watt(powers[piw]);
        const detail::LinkSetup ls =
            detail::make_link(cfg, cfg.scenario.carrier_ghz * 1e9, diameters[di],
                              cfg.scenario.range_km * 1e3, bw, static_cast<std::uint64_t>(idx));
        const double snr0 = p_w * ls.g2_eff / ls.n0_w;
        const double cap = capacity::capacity_bits(
            capacity::sinr_eff(snr0, prof.sigma_phi2, prof.gamma_eff_asserted));
        const detail::RmsePair rmse = detail::sensing_rmse(cfg, prof, ls, p_w, bw);
        const bool comm_ok = cap >= cfg.feasibility.min_capacity_bits;
        const bool sense_ok =
            std::isfinite(rmse.range_m) && rmse.range_m <= cfg.feasibility.max_rmse_m;
        const std::size_t u = static_cast<std::size_t>(idx);
        col_p.values[u] = powers[piw];
        col_d.values[u] = diameters[di];
        col_c.values[u] = cap;
        col_r.values[u] = rmse.range_m;
        col_k.values[u] = comm_ok && sense_ok ? 3.0 : (sense_ok ? 2.0 : (comm_ok ? 1.0 : 0.0));
    });

    res.axis.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) res.axis[static_cast<std::size_t>(i)] = i;
    res.series = {std::move(col_p), std::move(col_d), std::move(col_c), std::move(col_r),
                  std::move(col_k)};
    return res;
}

namespace detail {

inline void write_csv(const SweepResult& res, const std::string& path) {
    CsvWriter w(path);
    std::vector<std::string> header{res.axis_name};
    for (const auto& s : res.series) header.push_back(s.name);
    w.header(header);
    for (std::size_t i = 0; i < res.axis.size(); ++i) {
        std::vector<double> row{res.axis[i]};
        for (const auto& s : res.series) row.push_back(s.values[i]);
        w.row(row);
    }
}

inline std::string hash_note(const SweepResult& res) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "config-hash: %016llx seed: %llu",
                  static_cast<unsigned long long>(res.config_hash),
                  static_cast<unsigned long long>(res.seed));
    return buf;
}

inline void write_chart(const SweepResult& res, const ExperimentConfig& cfg,
                        const std::string& path) {
    if (res.experiment == "feasibility_map") {
        const std::vector<double> powers = cfg.feasibility.power_dbm.values();
        const std::vector<double> diameters = cfg.feasibility.diameter_m.values();
        svg::GridChart chart;
        chart.title = "Joint feasibility map (" + cfg.feasibility.profile + ")";
        chart.x_label = "transmit power (dBm)";
        chart.y_label = "antenna diameter (m)";
        chart.x_values = powers;
        chart.y_values = diameters;
        chart.categories = {"fail", "comm only", "sense only", "feasible"};
        chart.cells.assign(diameters.size(), std::vector<int>(powers.size(), 0));
        const auto& cls = res.series.back().values;
        for (std::size_t idx = 0; idx < cls.size(); ++idx) {
            const std::size_t di = idx % diameters.size();
            const std::size_t piw = idx / diameters.size();
            chart.cells[di][piw] = static_cast<int>(cls[idx]);
        }
        chart.config_note = hash_note(res);
        chart.render(path);
        return;
    }

    svg::LineChart chart;
    chart.config_note = hash_note(res);
    if (res.experiment == "cd_frontier") {
        chart.title = "Rate-distortion frontier";
        chart.x_label = "sensing distortion (whitened trace)";
        chart.y_label = "rate (bit/symbol)";
        chart.log_x = true;
        for (std::size_t i = 0; i + 3 < res.series.size(); i += 4) {
            svg::Series s;
            s.name = res.series[i + 1].name;
            s.x = res.series[i].values;
            s.y = res.series[i + 1].values;
            chart.series.push_back(std::move(s));
        }
        chart.render(path);
        return;
    }

    chart.x_label = res.axis_name;
    const bool rmse_like = res.experiment == "rmse_vs_snr" || res.experiment == "freq_sweep";
    chart.log_y = rmse_like;
    chart.log_x = res.experiment == "freq_sweep" || res.experiment == "gamma_sweep";
    chart.title = res.experiment;
    chart.y_label = rmse_like ? "range RMSE (m)" : "capacity (bit/symbol)";
    for (const auto& s : res.series) {
        if (res.experiment == "awgn_comparison" && s.name.rfind("rmse_", 0) == 0) continue;
        if (s.name.rfind("converged_", 0) == 0) continue;
        // Sensing charts show the range bound; rate columns stay in the CSV.
        if (rmse_like && s.name.find("range_rate") != std::string::npos) continue;
        svg::Series out;
        out.name = s.name;
        out.x = res.axis;
        out.y = s.values;
        chart.series.push_back(std::move(out));
    }
    chart.render(path);
}

} // namespace detail

/// Runs one named experiment and writes its artifacts (CSV data, SVG chart,
/// and a small metadata sidecar) into the configured output directory.
inline SweepResult run_experiment(const ExperimentConfig& cfg, int threads = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepResult res;
    if (cfg.experiment == "capacity_vs_snr") res = run_capacity_vs_snr(cfg, threads);
    else if (cfg.experiment == "rmse_vs_snr") res = run_rmse_vs_snr(cfg, threads);
    else if (cfg.experiment == "awgn_comparison") res = run_awgn_comparison(cfg, threads);
    else if (cfg.experiment == "freq_sweep") res = run_freq_sweep(cfg, threads);
    else if (cfg.experiment == "distance_sweep") res = run_distance_sweep(cfg, threads);
    else if (cfg.experiment == "gamma_sweep") res = run_gamma_sweep(cfg, threads);
    else if (cfg.experiment == "cd_frontier") res = run_cd_frontier(cfg, threads);
    else if (cfg.experiment == "feasibility_map") res = run_feasibility_map(cfg, threads);
    else throw ConfigError("run_experiment: unknown experiment '" + cfg.experiment + "'");

    res.config_hash = cfg.hash();
    res.seed = cfg.monte_carlo.seed;

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output.directory);
    const auto has_format = [&](const char* f) {
        return std::find(cfg.output.formats.begin(), cfg.output.formats.end(), f) !=
               cfg.output.formats.end();
    };
    if (has_format("csv")) {
        const std::string path = cfg.output.directory + "/" + res.experiment + ".csv";
        detail::write_csv(res, path);
        res.files.push_back(path);
    }
    if (has_format("svg")) {
        const std::string path = cfg.output.directory + "/" + res.experiment + ".svg";
        detail::write_chart(res, cfg, path);
        res.files.push_back(path);
    }

    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    char hash_hex[24];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(res.config_hash));
    json meta;
    meta["experiment"] = res.experiment;
    meta["config_hash"] = hash_hex;
    meta["seed"] = res.seed;
    meta["version"] = res.version;
    meta["wall_seconds"] = res.wall_seconds;
    meta["files"] = res.files;
    meta["resolved_config"] = cfg.echo();
    std::ofstream mf(cfg.output.directory + "/" + res.experiment + ".meta.json",
                     std::ios::binary);
    mf << meta.dump(2) << "\n";

    return res;
}

/// Runs the full sweep collection.
inline std::vector<SweepResult> run_all(const ExperimentConfig& cfg, int threads = 0) {
    std::vector<SweepResult> results;
    for (const auto& name : experiment_names()) {
        ExperimentConfig sub = cfg;
        sub.experiment = name;
        results.push_back(run_experiment(sub, threads));
    }
    return results;
}

} // namespace isaclim::experiment
