#include "twrelay/powalloc.hpp"

#include <cmath>
#include <stdexcept>

namespace twr {

namespace {

void require_budget(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw std::domain_error("total power p must be finite and positive");
    }
}

}  // namespace

PowerSplit opa_split(double p) {
    require_budget(p);
    return {p / 4.0, p / 2.0, p, 0.5};
}

PowerSplit epa_split(double p) {
    require_budget(p);
    return {p / 3.0, p / 3.0, p, 1.0};
}

PowerSplit split_for_lambda(double p, double lambda) {
    require_budget(p);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::domain_error("lambda must be finite and positive");
    }
    const double p_r = p / (1.0 + 2.0 * lambda);
    return {lambda * p_r, p_r, p, lambda};
}

LambdaSweep sweep_lambda(double p, std::size_t n_relays, ModulationConstant c, double n0,
                         std::span<const double> grid) {
    if (grid.empty()) throw std::domain_error("sweep_lambda: empty lambda grid");
    LambdaSweep out{{}, 0};
    out.rows.reserve(grid.size());
    for (double lambda : grid) {
        const auto split = split_for_lambda(p, lambda);
        out.rows.push_back({lambda, split.p_s, split.p_r,
                            analysis::asymptotic_ser_rs(n_relays, split.profile(n0), c)});
    }
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        if (out.rows[i].value < out.rows[out.argmin].value) out.argmin = i;
    }
    return out;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
    if (!(lo < hi)) throw std::domain_error("golden_section_minimize: empty bracket");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * (std::abs(c) + std::abs(d)) / 2.0 + 1e-300) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

double optimal_lambda_numeric(double p, std::size_t n_relays, ModulationConstant c, double n0,
                              double lo, double hi) {
    // Minimizing log(SER) keeps the objective well scaled for large N.
    auto objective = [&](double lambda) {
        return std::log(analysis::asymptotic_ser_rs(n_relays, split_for_lambda(p, lambda).profile(n0), c));
    };
    return golden_section_minimize(objective, lo, hi);
}

SimulatedLambdaSweep simulate_lambda_sweep(double p, std::size_t n_relays, double n0,
                                           std::span<const double> grid, Scheme scheme,
                                           const Constellation& cons,
                                           const StoppingRule& stopping,
                                           std::uint64_t master_seed,
                                           std::uint64_t first_point_id,
                                           const RunOptions& opts) {
    if (grid.empty()) throw std::domain_error("simulate_lambda_sweep: empty lambda grid");
    SimulatedLambdaSweep out{{}, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto split = split_for_lambda(p, grid[i]);
        SerPoint pt = estimate_point(scheme, n_relays, split.profile(n0), cons, stopping,
                                     master_seed, first_point_id + i, opts);
        out.rows.push_back({grid[i], split.p_s, split.p_r, pt});
    }
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        if (out.rows[i].point.ser_avg < out.rows[out.argmin].point.ser_avg) out.argmin = i;
    }
    return out;
}

}  // namespace twr
