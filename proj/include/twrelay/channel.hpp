#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/random/normal_distribution.hpp>

namespace twr {

using cplx = std::complex<double>;

/// A reproducible pseudo-random stream.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, and
/// Gaussians come from Boost's ziggurat sampler. Both algorithms are fully
/// specified, so a (master seed, stream id) pair yields the same sequence
/// on every platform. A stream is owned by one worker at a time.
class RandomStream {
public:
    using engine_type = std::mt19937_64;

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal.
    double gaussian() { return normal_(engine_); }
    /// Uniform index in [0, 2^bits); bits in [0, 63].
    std::uint64_t bits(unsigned nbits) { return nbits == 0 ? 0 : engine_() >> (64 - nbits); }
    /// Circularly-symmetric complex Gaussian with total variance `variance`.
    cplx complex_gaussian(double variance);

private:
    engine_type engine_;
    boost::random::normal_distribution<double> normal_;
};

/// Independent stream for (master_seed, stream_id).
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Fading coefficients between relay k and the two sources; reciprocal,
/// so the same pair serves the uplink and the downlink of a frame.
struct ChannelPair {
    cplx h1;
    cplx h2;
};

using FrameChannels = std::vector<ChannelPair>;

/// N independent Rayleigh pairs, CN(0, 1) per coefficient.
FrameChannels draw_frame_channels(std::size_t n_relays, RandomStream& stream);

/// Allocation-free variant for the simulation loop; resizes `out`.
void draw_frame_channels(std::size_t n_relays, RandomStream& stream, FrameChannels& out);

}  // namespace twr
