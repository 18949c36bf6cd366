#include "twrelay/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace twr {

namespace {

std::seed_seq make_seed_seq(std::uint64_t master_seed, std::uint64_t stream_id) {
    // A fixed tag word keeps (seed, id) and (id, seed) apart.
    return std::seed_seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream_id),
        static_cast<std::uint32_t>(stream_id >> 32),
        0x7477724cu,
    };
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id) {
    auto seq = make_seed_seq(master_seed, stream_id);
    engine_.seed(seq);
}

cplx RandomStream::complex_gaussian(double variance) {
    const double sigma = std::sqrt(0.5 * variance);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {sigma * re, sigma * im};
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RandomStream(master_seed, stream_id);
}

void draw_frame_channels(std::size_t n_relays, RandomStream& stream, FrameChannels& out) {
    if (n_relays == 0) {
        throw std::domain_error("draw_frame_channels: need at least one relay");
    }
    out.resize(n_relays);
    for (auto& pair : out) {
        pair.h1 = stream.complex_gaussian(1.0);
        pair.h2 = stream.complex_gaussian(1.0);
    }
}

FrameChannels draw_frame_channels(std::size_t n_relays, RandomStream& stream) {
    FrameChannels out;
    draw_frame_channels(n_relays, stream, out);
    return out;
}

}  // namespace twr
