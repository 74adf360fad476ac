#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isaclim/constants.hpp"
#include "isaclim/hardware.hpp"

namespace isaclim::experiment {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "capacity_vs_snr", "rmse_vs_snr",   "freq_sweep",      "distance_sweep",
        "gamma_sweep",     "cd_frontier",   "feasibility_map", "awgn_comparison"};
    return names;
}

namespace detail {

/// Strict object reader: every key must be consumed, unknown keys are
/// reported with their JSON path and (best effort) source line.
class StrictReader {
public:
    StrictReader(const json& node, std::string path, const std::string* source)
        : node_(node), path_(std::move(path)), source_(source) {
        if (!node_.is_object())
            throw ConfigError("config: expected an object at " + display_path());
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    double number(const std::string& key, double fallback) {
        if (!consume(key)) return fallback;
        return expect_number(key);
    }

    int integer(const std::string& key, int fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_number_integer())
            throw ConfigError("config: " + child_path(key) + " must be an integer" + line_hint(key));
        return v.get<int>();
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw ConfigError("config: " + child_path(key) + " must be an integer" + line_hint(key));
        return v.get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_boolean())
            throw ConfigError("config: " + child_path(key) + " must be a boolean" + line_hint(key));
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_string())
            throw ConfigError("config: " + child_path(key) + " must be a string" + line_hint(key));
        return v.get<std::string>();
    }

    std::vector<std::string> string_list(const std::string& key, std::vector<std::string> fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_array())
            throw ConfigError("config: " + child_path(key) + " must be an array" + line_hint(key));
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string())
                throw ConfigError("config: " + child_path(key) + " entries must be strings" + line_hint(key));
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    std::vector<double> number_list(const std::string& key, std::vector<double> fallback) {
        if (!consume(key)) return fallback;
        const json& v = node_.at(key);
        if (!v.is_array())
            throw ConfigError("config: " + child_path(key) + " must be an array" + line_hint(key));
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError("config: " + child_path(key) + " entries must be numbers" + line_hint(key));
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::optional<StrictReader> object(const std::string& key) {
        if (!consume(key)) return std::nullopt;
        return StrictReader(node_.at(key), child_path(key), source_);
    }

    std::optional<double> optional_number(const std::string& key) {
        if (!consume(key)) return std::nullopt;
        return expect_number(key);
    }

    const json& raw(const std::string& key) {
        consume(key);
        return node_.at(key);
    }

    /// Rejects unknown keys (strict mode).
    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!consumed_.count(it.key()))
                throw ConfigError("config: unknown field '" + it.key() + "' in " + display_path() +
                                  line_hint(it.key()));
        }
    }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for (auto it = node_.begin(); it != node_.end(); ++it) out.push_back(it.key());
        return out;
    }

private:
    bool consume(const std::string& key) {
        if (!node_.contains(key)) return false;
        consumed_.insert(key);
        return true;
    }

    double expect_number(const std::string& key) {
        const json& v = node_.at(key);
        if (!v.is_number())
            throw ConfigError("config: " + child_path(key) + " must be a number" + line_hint(key));
        return v.get<double>();
    }

    std::string display_path() const { return path_.empty() ? "<root>" : path_; }
    std::string child_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    std::string line_hint(const std::string& key) const {
        if (source_ == nullptr) return "";
        const std::string needle = "\"" + key + "\"";
        const auto pos = source_->find(needle);
        if (pos == std::string::npos) return "";
        const auto line = 1 + std::count(source_->begin(), source_->begin() + static_cast<std::ptrdiff_t>(pos), '\n');
        return " (line " + std::to_string(line) + ")";
    }

    const json& node_;
    std::string path_;
    const std::string* source_;
    std::set<std::string> consumed_;
};

} // namespace detail

struct SweepAxisConfig {
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    bool log_scale = false;

    std::vector<double> values() const {
        check(points >= 1, "sweep axis: points must be >= 1");
        if (log_scale)
            check(start > 0.0 && stop > 0.0, "sweep axis: log scale needs positive bounds");
        std::vector<double> v(static_cast<std::size_t>(points));
        if (points == 1) {
            v[0] = start;
            return v;
        }
        for (int i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / (points - 1);
            v[static_cast<std::size_t>(i)] =
                log_scale ? start * std::pow(stop / start, t) : start + t * (stop - start);
        }
        return v;
    }
};

struct ScenarioConfig {
    double range_km = 2000.0;
    double range_rate_mps = 0.0;
    double accel_mps2 = 0.0;
    double carrier_ghz = 300.0;
    double antenna_diameter_m = 1.0;
    double tx_power_dbm = 30.0;
    double bandwidth_ghz = 10.0;
    double noise_temperature_k = 290.0;
    double pointing_rms_urad = 1.0;
    std::string gain_model = "aperture";  // or "fixed"
    double tx_gain_dbi = 60.0;
    double rx_gain_dbi = 60.0;
    double sigma_phi2 = 0.0;  // oscillator phase variance applied in sensing experiments
};

struct FrameConfig {
    int pilots = 64;
    int symbols = 1024;
    double duration_us = 0.0;  // 0: symbols / bandwidth
};

struct MonteCarloConfig {
    int pointing_samples = 1000;
    int mi_samples = 100000;
    std::uint64_t seed = 12345;
};

struct TradeoffConfig {
    std::string constellation = "qam64";
    // Distortion targets as multiples of the uniform-input distortion;
    // a non-positive entry requests the unconstrained point.
    std::vector<double> target_multipliers = {1.02, 1.1, 1.3, 2.0, 0.0};
    int max_iters = 120;
    double tolerance = 0.05;
    double reference_rmse_mm = 1.0;
    double reference_rmse_mmps = 1.0;
};

struct FeasibilityConfig {
    SweepAxisConfig power_dbm{0.0, 40.0, 21, false};
    SweepAxisConfig diameter_m{0.4, 1.4, 11, false};
    double min_capacity_bits = 2.0;
    double max_rmse_m = 1e-3;
    std::string profile = "high_performance";
};

struct DistanceConfig {
    std::vector<double> frequencies_ghz = {300.0, 1000.0};
    std::string profile = "state_of_the_art";
    double bandwidth_ghz = 20.0;
};

struct OutputConfig {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "svg"};
};

struct ProfileOverride {
    std::optional<double> gamma_eff;
    std::optional<double> sigma_phi2;
    std::optional<double> linewidth_khz;
    std::optional<double> evm;
    std::optional<double> jitter_fs;
    std::optional<double> enob;
    std::optional<double> characteristic_bandwidth_ghz;
};

struct ExperimentConfig {
    std::string experiment = "all";
    ScenarioConfig scenario;
    FrameConfig frame;
    MonteCarloConfig monte_carlo;
    std::vector<std::string> profiles = {"state_of_the_art", "high_performance", "swap_efficient",
                                         "low_cost"};
    std::map<std::string, ProfileOverride> profile_overrides;
    std::optional<SweepAxisConfig> sweep;
    TradeoffConfig tradeoff;
    FeasibilityConfig feasibility;
    DistanceConfig distance;
    double freq_sweep_snr0_db = 20.0;
    std::vector<double> gamma_snr_points_db = {20.0, 30.0, 40.0, 50.0};
    OutputConfig output;
    bool allow_extrapolation = false;

    static ExperimentConfig from_json(const json& root, const std::string* source_text = nullptr);
    static ExperimentConfig load(const std::string& path);
    void validate() const;
    std::vector<hw::HardwareProfile> resolve_profiles() const;
    json echo() const;
    std::uint64_t hash() const;
};

namespace detail {

inline SweepAxisConfig read_axis(StrictReader& r, const SweepAxisConfig& fallback) {
    SweepAxisConfig axis = fallback;
    axis.start = r.number("start", fallback.start);
    axis.stop = r.number("stop", fallback.stop);
    axis.points = r.integer("points", fallback.points);
    const std::string scale = r.text("scale", fallback.log_scale ? "log" : "linear");
    if (scale != "log" && scale != "linear")
        throw ConfigError("config: sweep scale must be 'log' or 'linear'");
    axis.log_scale = scale == "log";
    r.finish();
    return axis;
}

} // namespace detail

inline ExperimentConfig ExperimentConfig::from_json(const json& root,
                                                    const std::string* source_text) {
    detail::StrictReader r(root, "", source_text);
    ExperimentConfig cfg;
    cfg.experiment = r.text("experiment", cfg.experiment);

    if (auto s = r.object("scenario")) {
        cfg.scenario.range_km = s->number("range_km", cfg.scenario.range_km);
        cfg.scenario.range_rate_mps = s->number("range_rate_mps", cfg.scenario.range_rate_mps);
        cfg.scenario.accel_mps2 = s->number("accel_mps2", cfg.scenario.accel_mps2);
        cfg.scenario.carrier_ghz = s->number("carrier_ghz", cfg.scenario.carrier_ghz);
        cfg.scenario.antenna_diameter_m =
            s->number("antenna_diameter_m", cfg.scenario.antenna_diameter_m);
        cfg.scenario.tx_power_dbm = s->number("tx_power_dbm", cfg.scenario.tx_power_dbm);
        cfg.scenario.bandwidth_ghz = s->number("bandwidth_ghz", cfg.scenario.bandwidth_ghz);
        cfg.scenario.noise_temperature_k =
            s->number("noise_temperature_k", cfg.scenario.noise_temperature_k);
        cfg.scenario.pointing_rms_urad =
            s->number("pointing_rms_urad", cfg.scenario.pointing_rms_urad);
        cfg.scenario.gain_model = s->text("gain_model", cfg.scenario.gain_model);
        cfg.scenario.tx_gain_dbi = s->number("tx_gain_dbi", cfg.scenario.tx_gain_dbi);
        cfg.scenario.rx_gain_dbi = s->number("rx_gain_dbi", cfg.scenario.rx_gain_dbi);
        cfg.scenario.sigma_phi2 = s->number("sigma_phi2", cfg.scenario.sigma_phi2);
        s->finish();
    }
    if (auto f = r.object("frame")) {
        cfg.frame.pilots = f->integer("pilots", cfg.frame.pilots);
        cfg.frame.symbols = f->integer("symbols", cfg.frame.symbols);
        cfg.frame.duration_us = f->number("duration_us", cfg.frame.duration_us);
        f->finish();
    }
    if (auto m = r.object("monte_carlo")) {
        cfg.monte_carlo.pointing_samples =
            m->integer("pointing_samples", cfg.monte_carlo.pointing_samples);
        cfg.monte_carlo.mi_samples = m->integer("mi_samples", cfg.monte_carlo.mi_samples);
        cfg.monte_carlo.seed = m->unsigned64("seed", cfg.monte_carlo.seed);
        m->finish();
    }
    cfg.profiles = r.string_list("profiles", cfg.profiles);
    if (auto po = r.object("profile_overrides")) {
        for (const auto& key : po->keys()) {
            detail::StrictReader pr(po->raw(key), "profile_overrides." + key, source_text);
            ProfileOverride ov;
            ov.gamma_eff = pr.optional_number("gamma_eff");
            ov.sigma_phi2 = pr.optional_number("sigma_phi2");
            ov.linewidth_khz = pr.optional_number("linewidth_khz");
            ov.evm = pr.optional_number("evm");
            ov.jitter_fs = pr.optional_number("jitter_fs");
            ov.enob = pr.optional_number("enob");
            ov.characteristic_bandwidth_ghz = pr.optional_number("characteristic_bandwidth_ghz");
            pr.finish();
            cfg.profile_overrides[key] = ov;
        }
        po->finish();
    }
    if (auto sw = r.object("sweep")) {
        cfg.sweep = detail::read_axis(*sw, SweepAxisConfig{});
    }
    if (auto t = r.object("tradeoff")) {
        cfg.tradeoff.constellation = t->text("constellation", cfg.tradeoff.constellation);
        cfg.tradeoff.target_multipliers =
            t->number_list("target_multipliers", cfg.tradeoff.target_multipliers);
        cfg.tradeoff.max_iters = t->integer("max_iters", cfg.tradeoff.max_iters);
        cfg.tradeoff.tolerance = t->number("tolerance", cfg.tradeoff.tolerance);
        cfg.tradeoff.reference_rmse_mm = t->number("reference_rmse_mm", cfg.tradeoff.reference_rmse_mm);
        cfg.tradeoff.reference_rmse_mmps =
            t->number("reference_rmse_mmps", cfg.tradeoff.reference_rmse_mmps);
        t->finish();
    }
    if (auto fz = r.object("feasibility")) {
        if (auto ax = fz->object("power_dbm"))
            cfg.feasibility.power_dbm = detail::read_axis(*ax, cfg.feasibility.power_dbm);
        if (auto ax = fz->object("diameter_m"))
            cfg.feasibility.diameter_m = detail::read_axis(*ax, cfg.feasibility.diameter_m);
        cfg.feasibility.min_capacity_bits =
            fz->number("min_capacity_bits", cfg.feasibility.min_capacity_bits);
        cfg.feasibility.max_rmse_m = fz->number("max_rmse_m", cfg.feasibility.max_rmse_m);
        cfg.feasibility.profile = fz->text("profile", cfg.feasibility.profile);
        fz->finish();
    }
    if (auto d = r.object("distance")) {
        cfg.distance.frequencies_ghz = d->number_list("frequencies_ghz", cfg.distance.frequencies_ghz);
        cfg.distance.profile = d->text("profile", cfg.distance.profile);
        cfg.distance.bandwidth_ghz = d->number("bandwidth_ghz", cfg.distance.bandwidth_ghz);
        d->finish();
    }
    cfg.freq_sweep_snr0_db = r.number("freq_sweep_snr0_db", cfg.freq_sweep_snr0_db);
    cfg.gamma_snr_points_db = r.number_list("gamma_snr_points_db", cfg.gamma_snr_points_db);
    if (auto o = r.object("output")) {
        cfg.output.directory = o->text("directory", cfg.output.directory);
        cfg.output.formats = o->string_list("formats", cfg.output.formats);
        o->finish();
    }
    cfg.allow_extrapolation = r.boolean("allow_extrapolation", cfg.allow_extrapolation);
    r.finish();
    cfg.validate();
    return cfg;
}

inline ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json root;
    try {
        // Comments are accepted so config files can be annotated in place.
        root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("config: parse error in " + path + " at line " + std::to_string(line) +
                          ": " + e.what());
    }
    return from_json(root, &text);
}

inline void ExperimentConfig::validate() const {
    const auto& names = experiment_names();
    if (experiment != "all" &&
        std::find(names.begin(), names.end(), experiment) == names.end())
        throw ConfigError("config: unknown experiment '" + experiment + "'");
    if (profiles.empty()) throw ConfigError("config: profile list is empty");
    try {
        for (const auto& p : profiles) hw::profile_by_key(p);
        for (const auto& [key, ov] : profile_overrides) hw::profile_by_key(key);
        hw::profile_by_key(feasibility.profile);
        hw::profile_by_key(distance.profile);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (scenario.gain_model != "aperture" && scenario.gain_model != "fixed")
        throw ConfigError("config: scenario.gain_model must be 'aperture' or 'fixed'");
    if (frame.pilots < 2 || frame.pilots > frame.symbols)
        throw ConfigError("config: frame.pilots must satisfy 2 <= pilots <= symbols");
    if (frame.duration_us < 0.0)
        throw ConfigError("config: frame.duration_us must be non-negative");
    if (monte_carlo.pointing_samples < 1 || monte_carlo.mi_samples < 10000)
        throw ConfigError("config: monte_carlo sample counts out of range");
    if (tradeoff.max_iters < 1 || !(tradeoff.tolerance > 0.0) ||
        tradeoff.target_multipliers.empty())
        throw ConfigError("config: tradeoff settings out of range");
    if (gamma_snr_points_db.empty())
        throw ConfigError("config: gamma_snr_points_db must not be empty");

    if (!allow_extrapolation) {
        auto in_range = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
        if (!in_range(scenario.carrier_ghz, 100.0, 1000.0))
            throw ConfigError("config: carrier_ghz outside the supported 100-1000 GHz band "
                              "(set allow_extrapolation to override)");
        if (!in_range(scenario.range_km, 500.0, 5000.0))
            throw ConfigError("config: range_km outside the supported 500-5000 km band "
                              "(set allow_extrapolation to override)");
        if (!in_range(scenario.bandwidth_ghz, 1.0, 100.0))
            throw ConfigError("config: bandwidth_ghz outside the supported 1-100 GHz band "
                              "(set allow_extrapolation to override)");
        if (sweep) {
            if (experiment == "freq_sweep" &&
                (!in_range(sweep->start, 100.0, 1000.0) || !in_range(sweep->stop, 100.0, 1000.0)))
                throw ConfigError("config: freq_sweep axis outside 100-1000 GHz "
                                  "(set allow_extrapolation to override)");
            if (experiment == "distance_sweep" &&
                (!in_range(sweep->start, 500.0, 5000.0) || !in_range(sweep->stop, 500.0, 5000.0)))
                throw ConfigError("config: distance_sweep axis outside 500-5000 km "
                                  "(set allow_extrapolation to override)");
        }
    }
}

inline std::vector<hw::HardwareProfile> ExperimentConfig::resolve_profiles() const {
    std::vector<hw::HardwareProfile> out;
    for (const auto& key : profiles) {
        hw::HardwareProfile p = hw::profile_by_key(key);
        const auto it = profile_overrides.find(key);
        if (it != profile_overrides.end()) {
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
        out.push_back(p);
    }
    return out;
}

inline json ExperimentConfig::echo() const {
    json j;
    j["experiment"] = experiment;
    j["scenario"] = {{"range_km", scenario.range_km},
                     {"range_rate_mps", scenario.range_rate_mps},
                     {"accel_mps2", scenario.accel_mps2},
                     {"carrier_ghz", scenario.carrier_ghz},
                     {"antenna_diameter_m", scenario.antenna_diameter_m},
                     {"tx_power_dbm", scenario.tx_power_dbm},
                     {"bandwidth_ghz", scenario.bandwidth_ghz},
                     {"noise_temperature_k", scenario.noise_temperature_k},
                     {"pointing_rms_urad", scenario.pointing_rms_urad},
                     {"gain_model", scenario.gain_model},
                     {"tx_gain_dbi", scenario.tx_gain_dbi},
                     {"rx_gain_dbi", scenario.rx_gain_dbi},
                     {"sigma_phi2", scenario.sigma_phi2}};
    j["frame"] = {{"pilots", frame.pilots},
                  {"symbols", frame.symbols},
                  {"duration_us", frame.duration_us}};
    j["monte_carlo"] = {{"pointing_samples", monte_carlo.pointing_samples},
                        {"mi_samples", monte_carlo.mi_samples},
                        {"seed", monte_carlo.seed}};
    j["profiles"] = profiles;
    json ov_json = json::object();
    for (const auto& [key, ov] : profile_overrides) {
        json o = json::object();
        if (ov.gamma_eff) o["gamma_eff"] = *ov.gamma_eff;
        if (ov.sigma_phi2) o["sigma_phi2"] = *ov.sigma_phi2;
        if (ov.linewidth_khz) o["linewidth_khz"] = *ov.linewidth_khz;
        if (ov.evm) o["evm"] = *ov.evm;
        if (ov.jitter_fs) o["jitter_fs"] = *ov.jitter_fs;
        if (ov.enob) o["enob"] = *ov.enob;
        if (ov.characteristic_bandwidth_ghz)
            o["characteristic_bandwidth_ghz"] = *ov.characteristic_bandwidth_ghz;
        ov_json[key] = o;
    }
    j["profile_overrides"] = ov_json;
    if (sweep)
        j["sweep"] = {{"start", sweep->start},
                      {"stop", sweep->stop},
                      {"points", sweep->points},
                      {"scale", sweep->log_scale ? "log" : "linear"}};
    j["tradeoff"] = {{"constellation", tradeoff.constellation},
                     {"target_multipliers", tradeoff.target_multipliers},
                     {"max_iters", tradeoff.max_iters},
                     {"tolerance", tradeoff.tolerance},
                     {"reference_rmse_mm", tradeoff.reference_rmse_mm},
                     {"reference_rmse_mmps", tradeoff.reference_rmse_mmps}};
    j["feasibility"] = {{"power_dbm",
                         {{"start", feasibility.power_dbm.start},
                          {"stop", feasibility.power_dbm.stop},
                          {"points", feasibility.power_dbm.points},
                          {"scale", feasibility.power_dbm.log_scale ? "log" : "linear"}}},
                        {"diameter_m",
                         {{"start", feasibility.diameter_m.start},
                          {"stop", feasibility.diameter_m.stop},
                          {"points", feasibility.diameter_m.points},
                          {"scale", feasibility.diameter_m.log_scale ? "log" : "linear"}}},
                        {"min_capacity_bits", feasibility.min_capacity_bits},
                        {"max_rmse_m", feasibility.max_rmse_m},
                        {"profile", feasibility.profile}};
    j["distance"] = {{"frequencies_ghz", distance.frequencies_ghz},
                     {"profile", distance.profile},
                     {"bandwidth_ghz", distance.bandwidth_ghz}};
    j["freq_sweep_snr0_db"] = freq_sweep_snr0_db;
    j["gamma_snr_points_db"] = gamma_snr_points_db;
    j["output"] = {{"directory", output.directory}, {"formats", output.formats}};
    j["allow_extrapolation"] = allow_extrapolation;
    return j;
}

inline std::uint64_t ExperimentConfig::hash() const {
    // Hash the experiment identity, not where its artifacts land.
    json j = echo();
    j.erase("output");
    const std::string dump = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace isaclim::experiment
