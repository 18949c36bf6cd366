#pragma once

// Frame-level Monte Carlo SER estimation.
//
// Work is cut into fixed chunks of frames; chunk k of SNR point p draws from
// derive_stream(master_seed, (p << 32) | k). Chunks are summed in index
// order and the run stops at the first chunk whose running total meets the
// stopping rule, so the result never depends on how many workers ran.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "twrelay/analysis.hpp"
#include "twrelay/channel.hpp"
#include "twrelay/phy.hpp"

namespace twr {

enum class Scheme { RsOptimal, RsMinmax, ApAf };

std::string_view to_string(Scheme s) noexcept;
/// Accepts "rs-optimal"/"optimal", "rs-minmax"/"minmax", "apaf"/"ap-af".
Scheme parse_scheme(std::string_view name);

struct StoppingRule {
    std::uint64_t min_errors = 100;
    std::uint64_t max_frames = 100'000'000;
};

struct ExperimentConfig {
    Scheme scheme = Scheme::RsMinmax;
    std::size_t n_relays = 1;
    double p_s = 1.0;
    double p_r = 1.0;
    /// Power that defines the SNR axis, N0 = reference / 10^(snr_db/10).
    /// Defaults to p_s, i.e. the axis is p_s / N0.
    std::optional<double> reference_power;
    Constellation constellation = Constellation::bpsk();
    std::vector<double> snr_grid_db;
    StoppingRule stopping;
    std::uint64_t master_seed = 1;

    PowerProfile profile_at(double snr_db) const;
    /// Throws std::domain_error naming the offending field.
    void validate() const;
};

struct FrameErrors {
    unsigned err_s1 = 0;  ///< S1 misdetected s2
    unsigned err_s2 = 0;  ///< S2 misdetected s1
};

/// One relay-selection frame over pre-drawn channels: draws both symbols,
/// runs the uplink at every relay, selects by exact SNR, forwards through
/// the chosen relay only and detects at both sources.
FrameErrors run_frame_rs(Scheme scheme, const PowerProfile& pp, const Constellation& cons,
                         const FrameChannels& frame, RandomStream& stream);

/// One AP-AF frame over pre-drawn channels.
FrameErrors run_frame_ap(const PowerProfile& pp, const Constellation& cons,
                         const FrameChannels& frame, RandomStream& stream);

struct SerPoint {
    double snr_db = 0.0;
    double n0 = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t errors_s1 = 0;
    std::uint64_t errors_s2 = 0;
    double ser_s1 = 0.0;
    double ser_s2 = 0.0;
    double ser_avg = 0.0;
    /// Half-width of the normal-approximation 95% interval on ser_avg.
    double ci95 = 0.0;
    /// Frame cap reached before min_errors.
    bool censored = false;
};

/// Fills the derived rates of a point from its counts.
void finalize_point(SerPoint& point);

struct SerCurve {
    Scheme scheme = Scheme::RsMinmax;
    std::size_t n_relays = 1;
    std::vector<SerPoint> points;
};

struct RunOptions {
    unsigned threads = 1;
    std::uint64_t chunk_frames = 4096;
};

/// Simulates one operating point. `point_id` selects the stream family.
SerPoint estimate_point(Scheme scheme, std::size_t n_relays, const PowerProfile& pp,
                        const Constellation& cons, const StoppingRule& stopping,
                        std::uint64_t master_seed, std::uint64_t point_id,
                        const RunOptions& opts = {});

/// Whole SNR grid. Throws std::domain_error on an invalid config.
SerCurve estimate_ser(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Least-squares slope of -log10(ser_avg) against snr_db/10 over the
/// `hi_points` highest-SNR uncensored points with nonzero errors.
double estimate_diversity_order(const SerCurve& curve, std::size_t hi_points);

/// CSV with header
/// snr_db,frames,errors_s1,errors_s2,ser_s1,ser_s2,ser_avg,ci95,censored
void write_curve_csv(const SerCurve& curve, std::ostream& os);

}  // namespace twr
