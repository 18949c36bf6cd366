#pragma once

// Source/relay power split under the budget 2 p_s + p_r = p.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twrelay/analysis.hpp"
#include "twrelay/montecarlo.hpp"

namespace twr {

struct PowerSplit {
    double p_s;
    double p_r;
    double p;
    double lambda;

    PowerProfile profile(double n0) const { return {p_s, p_r, n0}; }
};

/// p_s = p/4, p_r = p/2 for any relay count. Throws std::domain_error if p <= 0.
PowerSplit opa_split(double p);

/// p_s = p/3, p_r = p/3.
PowerSplit epa_split(double p);

/// p_r = p / (1 + 2 lambda), p_s = lambda p_r.
PowerSplit split_for_lambda(double p, double lambda);

struct LambdaRow {
    double lambda;
    double p_s;
    double p_r;
    double value;
};

struct LambdaSweep {
    std::vector<LambdaRow> rows;
    std::size_t argmin;  ///< index into rows; first of equal minima
};

/// Asymptotic RS-AF SER at each lambda of `grid` (values must be > 0).
LambdaSweep sweep_lambda(double p, std::size_t n_relays, ModulationConstant c, double n0,
                         std::span<const double> grid);

/// Golden-section minimizer of a unimodal f on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-10);

/// Numerical minimizer of the asymptotic RS-AF SER over lambda in [lo, hi].
double optimal_lambda_numeric(double p, std::size_t n_relays, ModulationConstant c, double n0,
                              double lo = 0.01, double hi = 10.0);

struct SimulatedLambdaRow {
    double lambda;
    double p_s;
    double p_r;
    SerPoint point;
};

struct SimulatedLambdaSweep {
    std::vector<SimulatedLambdaRow> rows;
    std::size_t argmin;
};

/// Monte Carlo version of the sweep at fixed n0; row i uses point id
/// `first_point_id + i`.
SimulatedLambdaSweep simulate_lambda_sweep(double p, std::size_t n_relays, double n0,
                                           std::span<const double> grid, Scheme scheme,
                                           const Constellation& cons,
                                           const StoppingRule& stopping,
                                           std::uint64_t master_seed,
                                           std::uint64_t first_point_id = 0,
                                           const RunOptions& opts = {});

}  // namespace twr
