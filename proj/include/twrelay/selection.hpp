#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "twrelay/analysis.hpp"
#include "twrelay/twoway.hpp"

namespace twr {

struct SelectionOutcome {
    std::size_t relay_index;
    std::vector<SnrPair> gammas;
    /// Sum SER of the chosen relay (optimal rule) or its min SNR (Min-Max).
    double criterion_value;
};

/// Relay minimizing Q(sqrt(c g1)) + Q(sqrt(c g2)); ties to the lowest index.
/// Throws std::domain_error on an empty table.
SelectionOutcome select_optimal(std::span<const SnrPair> gammas, ModulationConstant c);

/// Relay maximizing min(g1, g2); ties to the lowest index.
/// Throws std::domain_error on an empty table.
SelectionOutcome select_minmax(std::span<const SnrPair> gammas);

// Index-only forms for the per-frame loop; same rules, no copies.
std::size_t optimal_index(std::span<const SnrPair> gammas, ModulationConstant c);
std::size_t minmax_index(std::span<const SnrPair> gammas);

}  // namespace twr
