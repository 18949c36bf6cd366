#pragma once

// Experiment configuration, figure presets and on-disk artifacts.
//
// A config is a JSON document:
//
//   {
//     "name": "fig2",
//     "seed": 20110601,
//     "constellation": "bpsk",
//     "snr_db": {"start": 0, "stop": 20, "step": 2},      // or a list
//     "stopping": {"min_errors": 100, "max_frames": 10000000},
//     "analytic": true,
//     "series": [
//       {"label": "main", "schemes": ["rs-optimal", "rs-minmax"],
//        "relays": [2, 4], "power": {"p_s": 1, "p_r": 1}}
//     ],
//     "lambda_sweep": {"p": 3, "relays": 2, "n0": [0.01],
//                      "lambda": [0.25, 0.5, 1], "simulate": true}
//   }
//
// "series" may be replaced by top-level "schemes", "relays" and "power".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twrelay/montecarlo.hpp"

namespace twr {

/// Invalid configuration; `field()` is the dotted path of the culprit.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct SeriesSpec {
    std::string label = "main";
    std::vector<Scheme> schemes;
    std::vector<std::size_t> relays;
    double p_s = 1.0;
    double p_r = 1.0;
    std::optional<double> reference_power;
};

struct LambdaSweepSpec {
    double p = 3.0;
    std::size_t relays = 2;
    std::vector<double> n0;
    std::vector<double> lambda;
    bool simulate = true;
    Scheme scheme = Scheme::RsMinmax;
};

struct RunSpec {
    std::string name = "run";
    std::uint64_t seed = 20110601;
    std::string constellation = "bpsk";
    std::vector<double> snr_grid_db;
    StoppingRule stopping{100, 10'000'000};
    bool analytic = true;
    std::vector<SeriesSpec> series;
    std::optional<LambdaSweepSpec> lambda_sweep;
};

/// Parses and validates; throws ConfigError.
RunSpec parse_run_spec(const nlohmann::json& j);

/// Reads a config file, or the "config" member of a manifest written by run().
RunSpec load_run_spec(const std::filesystem::path& path);

/// Normalized form: every field explicit, keys sorted.
nlohmann::json to_json(const RunSpec& spec);

/// FNV-1a 64 of the normalized JSON, as 16 hex digits.
std::string config_digest(const RunSpec& spec);

/// Preset for figure 2..6; throws ConfigError for any other number.
RunSpec figure_preset(int figure);

struct RunManifest {
    std::string config_digest;
    std::uint64_t master_seed = 0;
    std::vector<std::string> schemes;
    std::vector<std::string> outputs;
    double wall_clock_seconds = 0.0;
    std::string software_version;
    nlohmann::json config;
};

nlohmann::json to_json(const RunManifest& m);

/// Config of one simulated curve of a run.
ExperimentConfig curve_config(const RunSpec& spec, const SeriesSpec& series, Scheme scheme,
                              std::size_t n_relays);

/// Runs every curve, writes CSVs, the analytic overlay, a gnuplot script and
/// manifest.json under `out_dir`.
RunManifest run(const RunSpec& spec, const std::filesystem::path& out_dir,
                const RunOptions& opts = {});

/// Long-format overlay: series,n_relays,snr_db,n0,psi_s,psi_r,psi,ser_rs_asym,ser_ap_asym.
void write_analytic_csv(const RunSpec& spec, std::ostream& os);

/// n0,lambda,p_s,p_r,ser_analytic[,frames,errors_s1,errors_s2,ser_sim,ci95,censored].
void write_lambda_csv(const RunSpec& spec, const RunOptions& opts, std::ostream& os);

}  // namespace twr
