#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "twrelay/apaf.hpp"
#include "twrelay/twoway.hpp"

using namespace twr;

TEST_CASE("ap config splits relay power evenly") {
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto c = make_ap_config(n, 1.0);
        CHECK(c.per_relay_power * static_cast<double>(n) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(make_ap_config(0, 1.0), std::domain_error);
}

TEST_CASE("ap_effective_snr") {
    const std::vector<double> two{0.5, 0.5};
    CHECK(ap_effective_snr(two) == 1.0);
    const std::vector<double> one{3.25};
    CHECK(ap_effective_snr(one) == 3.25);
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    CHECK(ap_effective_snr(zeros) == 0.0);
    CHECK_THROWS_AS(ap_effective_snr(std::vector<double>{}), std::domain_error);
    CHECK_THROWS_AS(ap_effective_snr(std::vector<double>{1.0, -0.1}), std::domain_error);
}

TEST_CASE("MRC output SNR equals the sum of branch SNRs") {
    auto s = derive_stream(21, 0);
    for (int t = 0; t < 5000; ++t) {
        const std::size_t n = 1 + s.bits(3);
        const PowerProfile pp(1.0, 1.0 / static_cast<double>(n), std::pow(10.0, -3.0 * s.uniform()));
        std::vector<MrcBranch> br;
        std::vector<double> gam;
        cplx signal{0.0, 0.0};
        double noise = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const ChannelPair ch{s.complex_gaussian(1.0), s.complex_gaussian(1.0)};
            const auto link = end_to_end_link(ch, pp);
            br.push_back({s.complex_gaussian(1.0), link.alpha, link.noise_var_1});
            gam.push_back(link.gamma1);
            // direct evaluation from the weights
            const cplx w = std::conj(link.alpha) / link.noise_var_1;
            signal += w * link.alpha;
            noise += std::norm(w) * link.noise_var_1;
        }
        const auto out = mrc_combine(br);
        const double direct = std::norm(signal) / noise;
        const double sum = ap_effective_snr(gam);
        CHECK(std::abs(out.snr() - sum) <= 1e-9 * std::max(1.0, sum));
        CHECK(std::abs(direct - sum) <= 1e-9 * std::max(1.0, sum));
    }
}

TEST_CASE("noiseless AP frame recovers both symbols") {
    auto s = derive_stream(22, 0);
    const auto q = Constellation::from_name("qpsk");
    const PowerProfile pp(1.0, 1.0, 1e-30);
    for (int t = 0; t < 500; ++t) {
        const auto frame = draw_frame_channels(1 + s.bits(2), s);
        const SymbolIndex a = s.bits(2), b = s.bits(2);
        const auto d = simulate_ap_frame(a, b, frame, pp, q, s);
        CHECK(d.s1_at_s2 == a);
        CHECK(d.s2_at_s1 == b);
    }
}
