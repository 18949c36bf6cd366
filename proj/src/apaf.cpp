#include "twrelay/apaf.hpp"

#include <stdexcept>
#include <vector>

#include "twrelay/twoway.hpp"

namespace twr {

ApConfig make_ap_config(std::size_t n_relays, double p_r) {
    if (n_relays == 0) {
        throw std::domain_error("AP-AF needs at least one relay");
    }
    return {n_relays, p_r / static_cast<double>(n_relays)};
}

double ap_effective_snr(std::span<const double> gammas) {
    if (gammas.empty()) {
        throw std::domain_error("ap_effective_snr: empty branch list");
    }
    double sum = 0.0;
    for (double g : gammas) {
        if (!(g >= 0.0)) throw std::domain_error("ap_effective_snr: negative branch SNR");
        sum += g;
    }
    return sum;
}

MrcOutput mrc_combine(std::span<const MrcBranch> branches) {
    MrcOutput out{{0.0, 0.0}, 0.0, 0.0};
    for (const auto& b : branches) {
        if (!(b.noise_var > 0.0)) continue;
        const cplx w = std::conj(b.alpha) / b.noise_var;
        out.statistic += w * b.y;
        out.gain += std::norm(b.alpha) / b.noise_var;
    }
    // Var(sum w_k n_k) = sum |alpha_k|^2 / Var_k, the same as the gain.
    out.noise_var = out.gain;
    return out;
}

ApDecisions simulate_ap_frame(SymbolIndex s1, SymbolIndex s2, const FrameChannels& frame,
                              const PowerProfile& pp, const Constellation& cons,
                              RandomStream& stream) {
    const auto cfg = make_ap_config(frame.size(), pp.p_r());
    const PowerProfile branch_pp = pp.with_relay_power(cfg.per_relay_power);
    const cplx x1 = modulate(s1, cons);
    const cplx x2 = modulate(s2, cons);

    thread_local std::vector<RelayObservation> obs;
    thread_local std::vector<MrcBranch> at_s1;
    thread_local std::vector<MrcBranch> at_s2;
    obs.clear();
    at_s1.clear();
    at_s2.clear();

    // Uplink noise for every relay first, then the N downlink slots.
    for (const auto& ch : frame) obs.push_back(relay_observe(x1, x2, ch, branch_pp, stream));
    for (std::size_t k = 0; k < frame.size(); ++k) {
        const auto r1 = forward_and_cancel(obs[k], x1, Source::S1, frame[k], branch_pp, stream);
        const auto r2 = forward_and_cancel(obs[k], x2, Source::S2, frame[k], branch_pp, stream);
        at_s1.push_back({r1.y, r1.link.alpha, r1.link.noise_var_1});
        at_s2.push_back({r2.y, r2.link.alpha, r2.link.noise_var_2});
    }

    const auto z1 = mrc_combine(at_s1);
    const auto z2 = mrc_combine(at_s2);
    return {ml_detect(z2.statistic, cplx{z2.gain, 0.0}, cons),
            ml_detect(z1.statistic, cplx{z1.gain, 0.0}, cons)};
}

}  // namespace twr
