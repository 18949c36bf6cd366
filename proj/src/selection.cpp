#include "twrelay/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twr {

namespace {

void require_nonempty(std::span<const SnrPair> gammas) {
    if (gammas.empty()) {
        throw std::domain_error("relay selection needs at least one relay");
    }
}

double sum_ser(const SnrPair& g, double c) {
    return analysis::q_function(std::sqrt(c * g.gamma1)) +
           analysis::q_function(std::sqrt(c * g.gamma2));
}

double min_snr(const SnrPair& g) { return std::min(g.gamma1, g.gamma2); }

}  // namespace

std::size_t optimal_index(std::span<const SnrPair> gammas, ModulationConstant c) {
    require_nonempty(gammas);
    std::size_t best = 0;
    double best_v = sum_ser(gammas[0], c.value());
    for (std::size_t k = 1; k < gammas.size(); ++k) {
        const double v = sum_ser(gammas[k], c.value());
        if (v < best_v) {
            best_v = v;
            best = k;
        }
    }
    return best;
}

std::size_t minmax_index(std::span<const SnrPair> gammas) {
    require_nonempty(gammas);
    std::size_t best = 0;
    double best_v = min_snr(gammas[0]);
    for (std::size_t k = 1; k < gammas.size(); ++k) {
        const double v = min_snr(gammas[k]);
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    return best;
}

SelectionOutcome select_optimal(std::span<const SnrPair> gammas, ModulationConstant c) {
    const std::size_t k = optimal_index(gammas, c);
    return {k, {gammas.begin(), gammas.end()}, sum_ser(gammas[k], c.value())};
}

SelectionOutcome select_minmax(std::span<const SnrPair> gammas) {
    const std::size_t k = minmax_index(gammas);
    return {k, {gammas.begin(), gammas.end()}, min_snr(gammas[k])};
}

}  // namespace twr
