#pragma once

// All-participate AF baseline: every relay forwards on its own orthogonal
// slot with power p_r / N, and each source maximal-ratio combines the N
// post-cancellation branches before detecting.

#include <cstddef>
#include <span>

#include "twrelay/analysis.hpp"
#include "twrelay/channel.hpp"
#include "twrelay/phy.hpp"

namespace twr {

struct ApConfig {
    std::size_t n_relays;
    double per_relay_power;
};

/// Equal split of the relay budget: per_relay_power * n_relays == p_r.
ApConfig make_ap_config(std::size_t n_relays, double p_r);

/// Sum of branch SNRs. Throws std::domain_error if empty or any entry < 0.
double ap_effective_snr(std::span<const double> gammas);

struct MrcBranch {
    cplx y;
    cplx alpha;
    double noise_var;
};

struct MrcOutput {
    cplx statistic;
    /// Real signal coefficient sum |alpha_k|^2 / Var_k of the combined sample.
    double gain;
    double noise_var;
    double snr() const noexcept { return noise_var > 0.0 ? gain * gain / noise_var : 0.0; }
};

/// Combines with weights conj(alpha_k) / Var_k.
MrcOutput mrc_combine(std::span<const MrcBranch> branches);

struct ApDecisions {
    SymbolIndex s1_at_s2;  ///< S2's estimate of s1
    SymbolIndex s2_at_s1;  ///< S1's estimate of s2
};

/// One AP-AF frame; `pp` carries the total relay power, split equally.
ApDecisions simulate_ap_frame(SymbolIndex s1, SymbolIndex s2, const FrameChannels& frame,
                              const PowerProfile& pp, const Constellation& cons,
                              RandomStream& stream);

}  // namespace twr
