// twrelay: command-line front end for the two-way relay simulator.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "twrelay/experiment.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> min_errors;
    std::optional<std::uint64_t> max_frames;
    unsigned threads = 0;
    std::string out_dir = "out";
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--min-errors", o.min_errors, "Errors per point before stopping");
    cmd->add_option("--max-frames", o.max_frames, "Frame cap per point");
}

void apply(const Overrides& o, twr::RunSpec& spec) {
    if (o.seed) spec.seed = *o.seed;
    if (o.min_errors) spec.stopping.min_errors = *o.min_errors;
    if (o.max_frames) spec.stopping.max_frames = *o.max_frames;
    if (spec.stopping.min_errors < 1) throw twr::ConfigError("stopping.min_errors", "must be at least 1");
    if (spec.stopping.max_frames < spec.stopping.min_errors) {
        throw twr::ConfigError("stopping.max_frames", "must be >= min_errors");
    }
}

twr::RunOptions run_options(const Overrides& o) {
    twr::RunOptions opts;
    opts.threads = o.threads != 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    return opts;
}

void report(const twr::RunManifest& m, const std::string& out_dir) {
    std::cout << "config " << m.config_digest << ", seed " << m.master_seed << ", "
              << m.wall_clock_seconds << " s\n";
    for (const auto& f : m.outputs) std::cout << "  " << out_dir << "/" << f << "\n";
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-way AF relay selection: Monte Carlo SER and analytic toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(TWRELAY_VERSION));

    Overrides sim_o;
    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "Run the experiment described by a JSON config or manifest");
    simulate->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    add_override_flags(simulate, sim_o);

    Overrides rep_o;
    int figure = 0;
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in figure preset");
    reproduce->add_option("--figure", figure, "Figure number")->required()->check(CLI::Range(2, 6));
    add_override_flags(reproduce, rep_o);

    std::string an_config;
    std::vector<std::size_t> an_relays{1, 2, 3, 4};
    double an_ps = 1.0, an_pr = 1.0, an_start = 0.0, an_stop = 30.0, an_step = 2.0;
    std::string an_cons = "bpsk", an_out;
    auto* analytic = app.add_subcommand("analytic", "Write asymptotic SER curves as CSV");
    analytic->add_option("--config", an_config, "Take series and SNR grid from a config")->check(CLI::ExistingFile);
    analytic->add_option("--relays", an_relays, "Relay counts")->delimiter(',')->capture_default_str();
    analytic->add_option("--ps", an_ps, "Source power")->capture_default_str();
    analytic->add_option("--pr", an_pr, "Relay power")->capture_default_str();
    analytic->add_option("--snr-start", an_start, "First p_s/N0 in dB")->capture_default_str();
    analytic->add_option("--snr-stop", an_stop, "Last p_s/N0 in dB")->capture_default_str();
    analytic->add_option("--snr-step", an_step, "Grid step in dB")->capture_default_str();
    analytic->add_option("--constellation", an_cons, "bpsk | qpsk | 8psk")->capture_default_str();
    analytic->add_option("--out", an_out, "Output CSV (default stdout)");

    Overrides sw_o;
    double sw_p = 3.0;
    std::size_t sw_relays = 2;
    std::vector<double> sw_n0{0.1, 0.03, 0.01};
    std::vector<double> sw_lambda{0.1, 0.25, 0.4, 0.5, 0.65, 1.0, 2.0};
    bool sw_simulate = false;
    std::string sw_scheme = "rs-minmax", sw_cons = "bpsk", sw_out;
    auto* sweep = app.add_subcommand("sweep-lambda", "Tabulate SER against lambda = p_s/p_r");
    sweep->add_option("--p", sw_p, "Total power 2 p_s + p_r")->capture_default_str();
    sweep->add_option("--relays", sw_relays, "Relay count")->capture_default_str();
    sweep->add_option("--n0", sw_n0, "Noise variances")->delimiter(',')->capture_default_str();
    sweep->add_option("--lambda", sw_lambda, "Lambda grid")->delimiter(',')->capture_default_str();
    sweep->add_flag("--simulate", sw_simulate, "Add Monte Carlo columns");
    sweep->add_option("--scheme", sw_scheme, "rs-minmax | rs-optimal")->capture_default_str();
    sweep->add_option("--constellation", sw_cons, "bpsk | qpsk | 8psk")->capture_default_str();
    sweep->add_option("--out", sw_out, "Output CSV (default stdout)");
    add_override_flags(sweep, sw_o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            auto spec = twr::load_run_spec(config_path);
            apply(sim_o, spec);
            report(twr::run(spec, sim_o.out_dir, run_options(sim_o)), sim_o.out_dir);
        } else if (reproduce->parsed()) {
            auto spec = twr::figure_preset(figure);
            apply(rep_o, spec);
            report(twr::run(spec, rep_o.out_dir, run_options(rep_o)), rep_o.out_dir);
        } else if (analytic->parsed()) {
            twr::RunSpec spec;
            if (!an_config.empty()) {
                spec = twr::load_run_spec(an_config);
            } else {
                spec = twr::parse_run_spec(
                    {{"snr_db", {{"start", an_start}, {"stop", an_stop}, {"step", an_step}}},
                     {"constellation", an_cons},
                     {"schemes", {"rs-minmax"}},
                     {"relays", an_relays},
                     {"power", {{"p_s", an_ps}, {"p_r", an_pr}}}});
            }
            std::ofstream file;
            twr::write_analytic_csv(spec, open_out(an_out, file));
        } else if (sweep->parsed()) {
            twr::RunSpec spec = twr::parse_run_spec(
                {{"constellation", sw_cons},
                 {"lambda_sweep",
                  {{"p", sw_p}, {"relays", sw_relays}, {"n0", sw_n0}, {"lambda", sw_lambda},
                   {"simulate", sw_simulate}, {"scheme", sw_scheme}}}});
            apply(sw_o, spec);
            std::ofstream file;
            twr::write_lambda_csv(spec, run_options(sw_o), open_out(sw_out, file));
        }
    } catch (const twr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
