#pragma once

// Two-phase analog network coding through one AF relay.
//
// Phase 1: both sources transmit at once, relay k observes
//   y_r = sqrt(p_s) h1 s1 + sqrt(p_s) h2 s2 + n_r.
// Phase 2: the relay forwards beta * y_r with
//   beta = (p_s |h1|^2 + p_s |h2|^2 + N0)^(-1/2),
// and source i receives sqrt(p_r) h_i beta y_r + n_i. After removing its own
// contribution source 1 is left with alpha s2 + w_1, where
//   alpha = sqrt(p_s p_r) beta h1 h2,
//   w_i   = sqrt(p_r) beta h_i n_r + n_i,  Var(w_i) = p_r beta^2 N0 |h_i|^2 + N0.

#include <utility>

#include "twrelay/analysis.hpp"
#include "twrelay/channel.hpp"

namespace twr {

enum class Source { S1 = 1, S2 = 2 };

struct RelayObservation {
    cplx y_r;
    double beta;
};

struct EndToEndLink {
    cplx alpha;
    double noise_var_1;
    double noise_var_2;
    double gamma1;
    double gamma2;
};

struct SnrPair {
    double gamma1;
    double gamma2;
};

/// Amplification factor for one relay.
double amplification_factor(const ChannelPair& ch, const PowerProfile& pp);

/// Closed-form link gains and post-cancellation SNRs for one relay.
EndToEndLink end_to_end_link(const ChannelPair& ch, const PowerProfile& pp);

/// Superimposed uplink with an explicit relay-noise sample.
RelayObservation relay_observe(cplx s1, cplx s2, const ChannelPair& ch,
                               const PowerProfile& pp, cplx relay_noise);

/// Superimposed uplink; relay noise drawn as CN(0, N0) from `stream`.
RelayObservation relay_observe(cplx s1, cplx s2, const ChannelPair& ch,
                               const PowerProfile& pp, RandomStream& stream);

struct ForwardResult {
    /// Residual alpha * s_other + w_i after self-interference cancellation.
    cplx y;
    EndToEndLink link;
};

/// Downlink to `source` with an explicit downlink-noise sample, followed by
/// perfect cancellation of `own_symbol`.
ForwardResult forward_and_cancel(const RelayObservation& obs, cplx own_symbol,
                                 Source source, const ChannelPair& ch,
                                 const PowerProfile& pp, cplx downlink_noise);

/// As above; downlink noise drawn as CN(0, N0) from `stream`.
ForwardResult forward_and_cancel(const RelayObservation& obs, cplx own_symbol,
                                 Source source, const ChannelPair& ch,
                                 const PowerProfile& pp, RandomStream& stream);

/// gamma_i = |alpha|^2 / Var(w_i), from the full expressions above.
SnrPair effective_snr_exact(const ChannelPair& ch, const PowerProfile& pp);

/// psi_r psi_s |h1|^2 |h2|^2 / (psi_r |h_i|^2 + psi_s |h_other|^2), i.e. the
/// exact SNR with the additive constant in the denominator dropped.
SnrPair effective_snr_approx(const ChannelPair& ch, const PowerProfile& pp);

}  // namespace twr
