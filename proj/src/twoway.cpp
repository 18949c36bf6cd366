#include "twrelay/twoway.hpp"

#include <cmath>

#include "twrelay/phy.hpp"

namespace twr {

double amplification_factor(const ChannelPair& ch, const PowerProfile& pp) {
    return 1.0 / std::sqrt(pp.p_s() * std::norm(ch.h1) + pp.p_s() * std::norm(ch.h2) + pp.n0());
}

EndToEndLink end_to_end_link(const ChannelPair& ch, const PowerProfile& pp) {
    const double beta = amplification_factor(ch, pp);
    const double beta2 = beta * beta;
    const cplx alpha = std::sqrt(pp.p_s() * pp.p_r()) * beta * ch.h1 * ch.h2;
    const double a2 = std::norm(alpha);
    const double v1 = pp.p_r() * beta2 * pp.n0() * std::norm(ch.h1) + pp.n0();
    const double v2 = pp.p_r() * beta2 * pp.n0() * std::norm(ch.h2) + pp.n0();
    return {alpha, v1, v2, a2 / v1, a2 / v2};
}

RelayObservation relay_observe(cplx s1, cplx s2, const ChannelPair& ch,
                               const PowerProfile& pp, cplx relay_noise) {
    const double amp = std::sqrt(pp.p_s());
    return {amp * ch.h1 * s1 + amp * ch.h2 * s2 + relay_noise, amplification_factor(ch, pp)};
}

RelayObservation relay_observe(cplx s1, cplx s2, const ChannelPair& ch,
                               const PowerProfile& pp, RandomStream& stream) {
    return relay_observe(s1, s2, ch, pp, awgn(pp.n0(), stream));
}

ForwardResult forward_and_cancel(const RelayObservation& obs, cplx own_symbol,
                                 Source source, const ChannelPair& ch,
                                 const PowerProfile& pp, cplx downlink_noise) {
    const cplx h = source == Source::S1 ? ch.h1 : ch.h2;
    const double sqrt_pr = std::sqrt(pp.p_r());
    const cplx received = sqrt_pr * h * obs.beta * obs.y_r + downlink_noise;
    const cplx self = std::sqrt(pp.p_s() * pp.p_r()) * obs.beta * h * h * own_symbol;
    return {received - self, end_to_end_link(ch, pp)};
}

ForwardResult forward_and_cancel(const RelayObservation& obs, cplx own_symbol,
                                 Source source, const ChannelPair& ch,
                                 const PowerProfile& pp, RandomStream& stream) {
    return forward_and_cancel(obs, own_symbol, source, ch, pp, awgn(pp.n0(), stream));
}

SnrPair effective_snr_exact(const ChannelPair& ch, const PowerProfile& pp) {
    const auto link = end_to_end_link(ch, pp);
    return {link.gamma1, link.gamma2};
}

SnrPair effective_snr_approx(const ChannelPair& ch, const PowerProfile& pp) {
    const double a = std::norm(ch.h1);
    const double b = std::norm(ch.h2);
    const double pr = pp.psi_r();
    const double ps = pp.psi_s();
    const double num = pr * ps * a * b;
    const double d1 = pr * a + ps * b;
    const double d2 = pr * b + ps * a;
    return {d1 > 0.0 ? num / d1 : 0.0, d2 > 0.0 ? num / d2 : 0.0};
}

}  // namespace twr
