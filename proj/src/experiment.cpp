#include "twrelay/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "twrelay/analysis.hpp"
#include "twrelay/powalloc.hpp"

#ifndef TWRELAY_VERSION
#define TWRELAY_VERSION "0.0.0"
#endif

namespace twr {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}

namespace {

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError(join(path, key), "missing");
    return obj.at(key);
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
    return d;
}

double get_positive(const json& v, const std::string& path) {
    const double d = get_number(v, path);
    if (!(d > 0.0)) throw ConfigError(path, "must be positive");
    return d;
}

std::uint64_t get_count(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(path, "expected a non-negative integer");
}

std::vector<double> get_number_list(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ConfigError(path, "expected a non-empty list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> parse_grid(const json& v, const std::string& path) {
    if (v.is_array()) return get_number_list(v, path);
    if (!v.is_object()) throw ConfigError(path, "expected a list or {start, stop, step}");
    const double start = get_number(require(v, "start", path), join(path, "start"));
    const double stop = get_number(require(v, "stop", path), join(path, "stop"));
    const double step = get_positive(require(v, "step", path), join(path, "step"));
    if (stop < start) throw ConfigError(join(path, "stop"), "must not be below start");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

Scheme get_scheme(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a scheme name");
    try {
        return parse_scheme(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

SeriesSpec parse_series(const json& j, const std::string& path, bool labelled) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    SeriesSpec s;
    if (labelled) {
        const auto& label = require(j, "label", path);
        if (!label.is_string() || label.get<std::string>().empty()) {
            throw ConfigError(join(path, "label"), "expected a non-empty string");
        }
        s.label = label.get<std::string>();
    }
    const auto& schemes = require(j, "schemes", path);
    if (!schemes.is_array() || schemes.empty()) {
        throw ConfigError(join(path, "schemes"), "expected a non-empty list");
    }
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        s.schemes.push_back(get_scheme(schemes[i], join(path, "schemes") + "[" + std::to_string(i) + "]"));
    }
    const auto& relays = require(j, "relays", path);
    if (!relays.is_array() || relays.empty()) {
        throw ConfigError(join(path, "relays"), "expected a non-empty list");
    }
    for (std::size_t i = 0; i < relays.size(); ++i) {
        const std::string rp = join(path, "relays") + "[" + std::to_string(i) + "]";
        const auto n = get_count(relays[i], rp);
        if (n < 1 || n > 20) throw ConfigError(rp, "relay count must be in [1, 20]");
        s.relays.push_back(static_cast<std::size_t>(n));
    }
    const std::string pp = join(path, "power");
    if (!j.contains("power")) return s;  // p_s = p_r = 1
    const auto& power = j.at("power");
    if (!power.is_object()) throw ConfigError(pp, "expected an object");
    s.p_s = get_positive(require(power, "p_s", pp), join(pp, "p_s"));
    s.p_r = get_positive(require(power, "p_r", pp), join(pp, "p_r"));
    if (power.contains("reference_power")) {
        s.reference_power = get_positive(power.at("reference_power"), join(pp, "reference_power"));
    }
    return s;
}

LambdaSweepSpec parse_lambda_sweep(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    LambdaSweepSpec s;
    s.p = get_positive(require(j, "p", path), join(path, "p"));
    const auto n = get_count(require(j, "relays", path), join(path, "relays"));
    if (n < 1 || n > 20) throw ConfigError(join(path, "relays"), "relay count must be in [1, 20]");
    s.relays = static_cast<std::size_t>(n);
    s.n0 = get_number_list(require(j, "n0", path), join(path, "n0"));
    for (double v : s.n0) {
        if (!(v > 0.0)) throw ConfigError(join(path, "n0"), "entries must be positive");
    }
    s.lambda = get_number_list(require(j, "lambda", path), join(path, "lambda"));
    for (double v : s.lambda) {
        if (!(v > 0.0)) throw ConfigError(join(path, "lambda"), "entries must be positive");
    }
    if (j.contains("simulate")) {
        if (!j.at("simulate").is_boolean()) throw ConfigError(join(path, "simulate"), "expected a boolean");
        s.simulate = j.at("simulate").get<bool>();
    }
    if (j.contains("scheme")) s.scheme = get_scheme(j.at("scheme"), join(path, "scheme"));
    if (s.scheme == Scheme::ApAf) throw ConfigError(join(path, "scheme"), "must be a relay-selection scheme");
    return s;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string curve_file_name(const RunSpec& spec, const SeriesSpec& s, Scheme scheme, std::size_t n) {
    return spec.name + "_" + s.label + "_" + std::string(to_string(scheme)) + "_N" + std::to_string(n) + ".csv";
}

std::string gnuplot_script(const RunSpec& spec, const std::vector<std::string>& curve_files,
                           bool has_analytic, bool has_lambda) {
    std::ostringstream gp;
    gp << "# gnuplot script for run '" << spec.name << "'\n"
       << "set datafile separator ','\n"
       << "set logscale y\n"
       << "set format y '10^{%L}'\n"
       << "set grid\n"
       << "set key outside right\n"
       << "set terminal pngcairo size 900,600\n";
    if (!curve_files.empty()) {
        gp << "set output '" << spec.name << "_ser.png'\n"
           << "set xlabel 'p_s/N_0 (dB)'\nset ylabel 'SER'\n"
           << "plot \\\n";
        for (std::size_t i = 0; i < curve_files.size(); ++i) {
            const auto& f = curve_files[i];
            gp << "  '" << f << "' every ::1 using 1:7 with linespoints title '"
               << f.substr(0, f.size() - 4) << "'";
            const bool last = i + 1 == curve_files.size() && !has_analytic;
            gp << (last ? "\n" : ", \\\n");
        }
        if (has_analytic) {
            std::size_t k = 0, total = 0;
            for (const auto& s : spec.series) total += s.relays.size();
            for (const auto& s : spec.series) {
                for (std::size_t n : s.relays) {
                    gp << "  '" << spec.name << "_analytic.csv' every ::1 using 3:(strcol(1) eq '" << s.label
                       << "' && $2 == " << n << " ? $8 : 1/0) with lines dt 2 title '" << s.label
                       << " N=" << n << " asymptote'";
                    gp << (++k == total ? "\n" : ", \\\n");
                }
            }
        }
    }
    if (has_lambda) {
        gp << "set output '" << spec.name << "_lambda.png'\n"
           << "unset logscale x\nset xlabel 'lambda = p_s/p_r'\nset ylabel 'SER'\n"
           << "plot \\\n";
        const auto& ls = *spec.lambda_sweep;
        for (std::size_t i = 0; i < ls.n0.size(); ++i) {
            char n0s[32];
            std::snprintf(n0s, sizeof n0s, "%.9e", ls.n0[i]);
            gp << "  '" << spec.name << "_lambda.csv' every ::1 using 2:(strcol(1) eq '" << n0s
               << "' ? $" << (ls.simulate ? 9 : 5) << " : 1/0) with linespoints title 'N0=" << ls.n0[i] << "'";
            gp << (i + 1 == ls.n0.size() ? "\n" : ", \\\n");
        }
    }
    return gp.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
}

}  // namespace

RunSpec parse_run_spec(const json& j) {
    if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
    RunSpec spec;
    if (j.contains("name")) {
        const auto& v = j.at("name");
        if (!v.is_string() || v.get<std::string>().empty()) throw ConfigError("name", "expected a non-empty string");
        spec.name = v.get<std::string>();
    }
    if (j.contains("seed")) spec.seed = get_count(j.at("seed"), "seed");
    if (j.contains("constellation")) {
        const auto& v = j.at("constellation");
        if (!v.is_string()) throw ConfigError("constellation", "expected a string");
        try {
            Constellation::from_name(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError("constellation", e.what());
        }
        spec.constellation = v.get<std::string>();
    }
    if (j.contains("stopping")) {
        const auto& st = j.at("stopping");
        if (!st.is_object()) throw ConfigError("stopping", "expected an object");
        if (st.contains("min_errors")) spec.stopping.min_errors = get_count(st.at("min_errors"), "stopping.min_errors");
        if (st.contains("max_frames")) spec.stopping.max_frames = get_count(st.at("max_frames"), "stopping.max_frames");
    }
    if (spec.stopping.min_errors < 1) throw ConfigError("stopping.min_errors", "must be at least 1");
    if (spec.stopping.max_frames < spec.stopping.min_errors) {
        throw ConfigError("stopping.max_frames", "must be >= min_errors");
    }
    if (j.contains("analytic")) {
        if (!j.at("analytic").is_boolean()) throw ConfigError("analytic", "expected a boolean");
        spec.analytic = j.at("analytic").get<bool>();
    }

    if (j.contains("series")) {
        const auto& arr = j.at("series");
        if (!arr.is_array()) throw ConfigError("series", "expected a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            spec.series.push_back(parse_series(arr[i], "series[" + std::to_string(i) + "]", true));
        }
        for (std::size_t a = 0; a < spec.series.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                if (spec.series[a].label == spec.series[b].label) {
                    throw ConfigError("series[" + std::to_string(a) + "].label", "duplicate label");
                }
            }
        }
    } else if (j.contains("schemes") || j.contains("relays") || j.contains("power")) {
        spec.series.push_back(parse_series(j, "", false));
    }

    if (!spec.series.empty()) {
        spec.snr_grid_db = parse_grid(require(j, "snr_db", ""), "snr_db");
    } else if (j.contains("snr_db") && !(j.at("snr_db").is_array() && j.at("snr_db").empty())) {
        spec.snr_grid_db = parse_grid(j.at("snr_db"), "snr_db");
    }
    if (j.contains("lambda_sweep")) spec.lambda_sweep = parse_lambda_sweep(j.at("lambda_sweep"), "lambda_sweep");
    if (spec.series.empty() && !spec.lambda_sweep) {
        throw ConfigError("series", "config defines neither curves nor a lambda sweep");
    }
    return spec;
}

RunSpec load_run_spec(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("<file>", "cannot open " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("JSON parse error: ") + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("config_digest")) {
        return parse_run_spec(j.at("config"));
    }
    return parse_run_spec(j);
}

json to_json(const RunSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["seed"] = spec.seed;
    j["constellation"] = spec.constellation;
    j["snr_db"] = spec.snr_grid_db;
    j["stopping"] = {{"min_errors", spec.stopping.min_errors}, {"max_frames", spec.stopping.max_frames}};
    j["analytic"] = spec.analytic;
    j["series"] = json::array();
    for (const auto& s : spec.series) {
        json js;
        js["label"] = s.label;
        js["schemes"] = json::array();
        for (auto sc : s.schemes) js["schemes"].push_back(std::string(to_string(sc)));
        js["relays"] = s.relays;
        js["power"] = {{"p_s", s.p_s}, {"p_r", s.p_r}};
        if (s.reference_power) js["power"]["reference_power"] = *s.reference_power;
        j["series"].push_back(js);
    }
    if (spec.lambda_sweep) {
        const auto& l = *spec.lambda_sweep;
        j["lambda_sweep"] = {{"p", l.p},           {"relays", l.relays},
                             {"n0", l.n0},         {"lambda", l.lambda},
                             {"simulate", l.simulate}, {"scheme", std::string(to_string(l.scheme))}};
    }
    return j;
}

std::string config_digest(const RunSpec& spec) {
    const std::string text = to_json(spec).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return hex64(h);
}

RunSpec figure_preset(int figure) {
    RunSpec spec;
    spec.name = "fig" + std::to_string(figure);
    auto grid = [](double start, double stop, double step) {
        std::vector<double> g;
        for (double v = start; v <= stop + 1e-9; v += step) g.push_back(v);
        return g;
    };
    switch (figure) {
        case 2:
            spec.snr_grid_db = grid(0, 20, 2);
            spec.series.push_back({"main", {Scheme::RsOptimal, Scheme::RsMinmax}, {2, 4}, 1.0, 1.0, {}});
            spec.analytic = false;
            break;
        case 3:
            spec.snr_grid_db = grid(0, 20, 2);
            spec.series.push_back({"rs", {Scheme::RsMinmax}, {2, 3, 4}, 1.0, 1.0, {}});
            spec.series.push_back({"ap", {Scheme::ApAf}, {2, 3, 4}, 1.0, 1.0, {}});
            break;
        case 4:
            spec.snr_grid_db = grid(0, 30, 2);
            spec.series.push_back({"main", {Scheme::RsMinmax}, {1, 2, 3, 4}, 1.0, 1.0, {}});
            break;
        case 5: {
            // Both splits share N0 = 1 / 10^(snr/10), i.e. the EPA p_s/N0 axis at p = 3.
            spec.snr_grid_db = grid(0, 24, 2);
            const auto opa = opa_split(3.0);
            const auto epa = epa_split(3.0);
            spec.series.push_back({"opa", {Scheme::RsMinmax}, {1, 2, 3, 4}, opa.p_s, opa.p_r, 1.0});
            spec.series.push_back({"epa", {Scheme::RsMinmax}, {1, 2, 3, 4}, epa.p_s, epa.p_r, 1.0});
            break;
        }
        case 6:
            spec.lambda_sweep = LambdaSweepSpec{
                3.0, 2, {0.1, 0.03, 0.01},
                {0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.65, 0.8, 1.0, 1.5, 2.0},
                true, Scheme::RsMinmax};
            spec.analytic = false;
            break;
        default:
            throw ConfigError("figure", "no preset for figure " + std::to_string(figure) + " (expected 2..6)");
    }
    return spec;
}

json to_json(const RunManifest& m) {
    return {{"config_digest", m.config_digest},
            {"master_seed", m.master_seed},
            {"schemes", m.schemes},
            {"outputs", m.outputs},
            {"wall_clock_seconds", m.wall_clock_seconds},
            {"software_version", m.software_version},
            {"config", m.config}};
}

ExperimentConfig curve_config(const RunSpec& spec, const SeriesSpec& series, Scheme scheme,
                              std::size_t n_relays) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.n_relays = n_relays;
    cfg.p_s = series.p_s;
    cfg.p_r = series.p_r;
    cfg.reference_power = series.reference_power;
    cfg.constellation = Constellation::from_name(spec.constellation);
    cfg.snr_grid_db = spec.snr_grid_db;
    cfg.stopping = spec.stopping;
    cfg.master_seed = spec.seed;
    return cfg;
}

void write_analytic_csv(const RunSpec& spec, std::ostream& os) {
    const auto c = Constellation::from_name(spec.constellation).constant();
    os << "series,n_relays,snr_db,n0,psi_s,psi_r,psi,ser_rs_asym,ser_ap_asym\n";
    char buf[384];
    for (const auto& s : spec.series) {
        for (std::size_t n : s.relays) {
            for (double snr : spec.snr_grid_db) {
                const double ref = s.reference_power.value_or(s.p_s);
                const PowerProfile pp(s.p_s, s.p_r, ref / std::pow(10.0, snr / 10.0));
                std::snprintf(buf, sizeof buf, "%s,%zu,%.6g,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n",
                              s.label.c_str(), n, snr, pp.n0(), pp.psi_s(), pp.psi_r(), pp.psi(),
                              analysis::asymptotic_ser_rs(n, pp, c), analysis::asymptotic_ser_ap(n, pp, c));
                os << buf;
            }
        }
    }
}

void write_lambda_csv(const RunSpec& spec, const RunOptions& opts, std::ostream& os) {
    if (!spec.lambda_sweep) return;
    const auto& ls = *spec.lambda_sweep;
    const auto cons = Constellation::from_name(spec.constellation);
    os << "n0,lambda,p_s,p_r,ser_analytic";
    if (ls.simulate) os << ",frames,errors_s1,errors_s2,ser_sim,ci95,censored";
    os << "\n";
    char buf[384];
    for (std::size_t i = 0; i < ls.n0.size(); ++i) {
        const auto analytic = sweep_lambda(ls.p, ls.relays, cons.constant(), ls.n0[i], ls.lambda);
        std::optional<SimulatedLambdaSweep> sim;
        if (ls.simulate) {
            sim = simulate_lambda_sweep(ls.p, ls.relays, ls.n0[i], ls.lambda, ls.scheme, cons,
                                        spec.stopping, spec.seed, i * ls.lambda.size(), opts);
        }
        for (std::size_t k = 0; k < ls.lambda.size(); ++k) {
            const auto& row = analytic.rows[k];
            std::snprintf(buf, sizeof buf, "%.9e,%.6g,%.9e,%.9e,%.9e", ls.n0[i], row.lambda, row.p_s,
                          row.p_r, row.value);
            os << buf;
            if (sim) {
                const auto& pt = sim->rows[k].point;
                std::snprintf(buf, sizeof buf, ",%llu,%llu,%llu,%.9e,%.9e,%d",
                              static_cast<unsigned long long>(pt.frames),
                              static_cast<unsigned long long>(pt.errors_s1),
                              static_cast<unsigned long long>(pt.errors_s2), pt.ser_avg, pt.ci95,
                              pt.censored ? 1 : 0);
                os << buf;
            }
            os << "\n";
        }
    }
}

RunManifest run(const RunSpec& spec, const std::filesystem::path& out_dir, const RunOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);

    RunManifest m;
    m.config = to_json(spec);
    m.config_digest = config_digest(spec);
    m.master_seed = spec.seed;
    m.software_version = TWRELAY_VERSION;

    std::vector<std::string> curve_files;
    for (const auto& s : spec.series) {
        for (Scheme sc : s.schemes) {
            const std::string name(to_string(sc));
            if (std::find(m.schemes.begin(), m.schemes.end(), name) == m.schemes.end()) m.schemes.push_back(name);
            for (std::size_t n : s.relays) {
                const auto curve = estimate_ser(curve_config(spec, s, sc, n), opts);
                std::ostringstream csv;
                write_curve_csv(curve, csv);
                const std::string file = curve_file_name(spec, s, sc, n);
                write_file(out_dir / file, csv.str());
                curve_files.push_back(file);
                m.outputs.push_back(file);
            }
        }
    }

    const bool has_analytic = spec.analytic && !spec.series.empty();
    if (has_analytic) {
        std::ostringstream csv;
        write_analytic_csv(spec, csv);
        const std::string file = spec.name + "_analytic.csv";
        write_file(out_dir / file, csv.str());
        m.outputs.push_back(file);
    }
    if (spec.lambda_sweep) {
        std::ostringstream csv;
        write_lambda_csv(spec, opts, csv);
        const std::string file = spec.name + "_lambda.csv";
        write_file(out_dir / file, csv.str());
        m.outputs.push_back(file);
        const std::string name(to_string(spec.lambda_sweep->scheme));
        if (std::find(m.schemes.begin(), m.schemes.end(), name) == m.schemes.end()) m.schemes.push_back(name);
    }

    const std::string plot = spec.name + "_plot.gp";
    write_file(out_dir / plot, gnuplot_script(spec, curve_files, has_analytic, spec.lambda_sweep.has_value()));
    m.outputs.push_back(plot);
    m.outputs.push_back("manifest.json");

    m.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(out_dir / "manifest.json", to_json(m).dump(2) + "\n");
    return m;
}

}  // namespace twr
