#include "twrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "twrelay/apaf.hpp"
#include "twrelay/selection.hpp"
#include "twrelay/twoway.hpp"

namespace twr {

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::RsOptimal: return "rs-optimal";
        case Scheme::RsMinmax: return "rs-minmax";
        case Scheme::ApAf: return "apaf";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "rs-optimal" || name == "optimal") return Scheme::RsOptimal;
    if (name == "rs-minmax" || name == "minmax") return Scheme::RsMinmax;
    if (name == "apaf" || name == "ap-af") return Scheme::ApAf;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

PowerProfile ExperimentConfig::profile_at(double snr_db) const {
    const double ref = reference_power.value_or(p_s);
    return PowerProfile(p_s, p_r, ref / std::pow(10.0, snr_db / 10.0));
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::domain_error(field + ": " + why);
    };
    if (n_relays == 0 || n_relays > 20) fail("n_relays", "must be in [1, 20]");
    if (!(p_s > 0.0) || !std::isfinite(p_s)) fail("p_s", "must be finite and positive");
    if (!(p_r > 0.0) || !std::isfinite(p_r)) fail("p_r", "must be finite and positive");
    if (reference_power && !(*reference_power > 0.0)) fail("reference_power", "must be positive");
    if (snr_grid_db.empty()) fail("snr_grid_db", "must not be empty");
    for (double s : snr_grid_db) {
        if (!std::isfinite(s)) fail("snr_grid_db", "entries must be finite");
    }
    if (stopping.min_errors < 1) fail("stopping.min_errors", "must be at least 1");
    if (stopping.max_frames < stopping.min_errors) fail("stopping.max_frames", "must be >= min_errors");
}

FrameErrors run_frame_rs(Scheme scheme, const PowerProfile& pp, const Constellation& cons,
                         const FrameChannels& frame, RandomStream& stream) {
    const unsigned bits = cons.bits_per_symbol();
    const auto i1 = static_cast<SymbolIndex>(stream.bits(bits));
    const auto i2 = static_cast<SymbolIndex>(stream.bits(bits));
    const cplx x1 = modulate(i1, cons);
    const cplx x2 = modulate(i2, cons);

    thread_local std::vector<RelayObservation> obs;
    thread_local std::vector<SnrPair> gammas;
    obs.clear();
    gammas.clear();
    for (const auto& ch : frame) {
        obs.push_back(relay_observe(x1, x2, ch, pp, stream));
        gammas.push_back(effective_snr_exact(ch, pp));
    }

    const std::size_t k = scheme == Scheme::RsOptimal
                              ? optimal_index(gammas, cons.constant())
                              : minmax_index(gammas);

    const auto at_s1 = forward_and_cancel(obs[k], x1, Source::S1, frame[k], pp, stream);
    const auto at_s2 = forward_and_cancel(obs[k], x2, Source::S2, frame[k], pp, stream);
    FrameErrors out;
    out.err_s1 = ml_detect(at_s1.y, at_s1.link.alpha, cons) != i2 ? 1u : 0u;
    out.err_s2 = ml_detect(at_s2.y, at_s2.link.alpha, cons) != i1 ? 1u : 0u;
    return out;
}

FrameErrors run_frame_ap(const PowerProfile& pp, const Constellation& cons,
                         const FrameChannels& frame, RandomStream& stream) {
    const unsigned bits = cons.bits_per_symbol();
    const auto i1 = static_cast<SymbolIndex>(stream.bits(bits));
    const auto i2 = static_cast<SymbolIndex>(stream.bits(bits));
    const auto d = simulate_ap_frame(i1, i2, frame, pp, cons, stream);
    FrameErrors out;
    out.err_s1 = d.s2_at_s1 != i2 ? 1u : 0u;
    out.err_s2 = d.s1_at_s2 != i1 ? 1u : 0u;
    return out;
}

void finalize_point(SerPoint& p) {
    if (p.frames == 0) {
        p.ser_s1 = p.ser_s2 = p.ser_avg = p.ci95 = 0.0;
        return;
    }
    const double f = static_cast<double>(p.frames);
    p.ser_s1 = static_cast<double>(p.errors_s1) / f;
    p.ser_s2 = static_cast<double>(p.errors_s2) / f;
    p.ser_avg = static_cast<double>(p.errors_s1 + p.errors_s2) / (2.0 * f);
    p.ci95 = 1.96 * std::sqrt(p.ser_avg * (1.0 - p.ser_avg) / (2.0 * f));
}

namespace {

struct ChunkTally {
    std::uint64_t frames = 0;
    std::uint64_t e1 = 0;
    std::uint64_t e2 = 0;
};

ChunkTally run_chunk(Scheme scheme, std::size_t n_relays, const PowerProfile& pp,
                     const Constellation& cons, std::uint64_t frames,
                     std::uint64_t master_seed, std::uint64_t stream_id) {
    RandomStream stream = derive_stream(master_seed, stream_id);
    FrameChannels frame;
    ChunkTally t;
    t.frames = frames;
    for (std::uint64_t i = 0; i < frames; ++i) {
        draw_frame_channels(n_relays, stream, frame);
        const FrameErrors e = scheme == Scheme::ApAf
                                  ? run_frame_ap(pp, cons, frame, stream)
                                  : run_frame_rs(scheme, pp, cons, frame, stream);
        t.e1 += e.err_s1;
        t.e2 += e.err_s2;
    }
    return t;
}

}  // namespace

SerPoint estimate_point(Scheme scheme, std::size_t n_relays, const PowerProfile& pp,
                        const Constellation& cons, const StoppingRule& stopping,
                        std::uint64_t master_seed, std::uint64_t point_id,
                        const RunOptions& opts) {
    if (n_relays == 0) throw std::domain_error("estimate_point: need at least one relay");
    if (opts.chunk_frames == 0) throw std::domain_error("estimate_point: chunk_frames must be > 0");
    if (point_id >= (1ull << 32)) throw std::domain_error("estimate_point: point_id exceeds 32 bits");

    const std::uint64_t chunk = opts.chunk_frames;
    const std::uint64_t total_chunks = (stopping.max_frames + chunk - 1) / chunk;
    const unsigned workers = std::max(1u, opts.threads);

    SerPoint point;
    point.n0 = pp.n0();
    std::uint64_t next = 0;
    std::uint64_t round = workers;
    bool done = false;
    std::vector<ChunkTally> tallies;

    while (!done && next < total_chunks) {
        const std::uint64_t end = std::min(total_chunks, next + round);
        tallies.assign(end - next, {});
        std::atomic<std::uint64_t> cursor{next};
        auto work = [&] {
            for (std::uint64_t c = cursor++; c < end; c = cursor++) {
                const std::uint64_t first = c * chunk;
                const std::uint64_t frames = std::min(chunk, stopping.max_frames - first);
                tallies[c - next] = run_chunk(scheme, n_relays, pp, cons, frames, master_seed,
                                              (point_id << 32) | c);
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        }

        for (const auto& t : tallies) {
            point.frames += t.frames;
            point.errors_s1 += t.e1;
            point.errors_s2 += t.e2;
            if (std::max(point.errors_s1, point.errors_s2) >= stopping.min_errors) {
                done = true;
                break;
            }
        }
        next = end;
        round = std::min<std::uint64_t>(round * 2, 256ull * workers);
    }

    point.censored = !done;
    finalize_point(point);
    return point;
}

SerCurve estimate_ser(const ExperimentConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    SerCurve curve;
    curve.scheme = cfg.scheme;
    curve.n_relays = cfg.n_relays;
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        const double snr = cfg.snr_grid_db[i];
        SerPoint p = estimate_point(cfg.scheme, cfg.n_relays, cfg.profile_at(snr), cfg.constellation,
                                    cfg.stopping, cfg.master_seed, i, opts);
        p.snr_db = snr;
        curve.points.push_back(p);
    }
    return curve;
}

double estimate_diversity_order(const SerCurve& curve, std::size_t hi_points) {
    if (hi_points < 2) throw std::domain_error("estimate_diversity_order: need at least 2 points");
    std::vector<const SerPoint*> valid;
    for (const auto& p : curve.points) {
        if (!p.censored && p.ser_avg > 0.0) valid.push_back(&p);
    }
    if (valid.size() < hi_points) {
        throw std::domain_error("estimate_diversity_order: not enough uncensored points");
    }
    std::sort(valid.begin(), valid.end(),
              [](const SerPoint* a, const SerPoint* b) { return a->snr_db < b->snr_db; });
    const auto first = valid.end() - static_cast<std::ptrdiff_t>(hi_points);

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(hi_points);
    for (auto it = first; it != valid.end(); ++it) {
        const double x = (*it)->snr_db / 10.0;
        const double y = -std::log10((*it)->ser_avg);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den <= 0.0) throw std::domain_error("estimate_diversity_order: degenerate SNR spread");
    return (n * sxy - sx * sy) / den;
}

void write_curve_csv(const SerCurve& curve, std::ostream& os) {
    os << "snr_db,frames,errors_s1,errors_s2,ser_s1,ser_s2,ser_avg,ci95,censored\n";
    char buf[320];
    for (const auto& p : curve.points) {
        std::snprintf(buf, sizeof buf, "%.6g,%llu,%llu,%llu,%.9e,%.9e,%.9e,%.9e,%d\n", p.snr_db,
                      static_cast<unsigned long long>(p.frames),
                      static_cast<unsigned long long>(p.errors_s1),
                      static_cast<unsigned long long>(p.errors_s2), p.ser_s1, p.ser_s2,
                      p.ser_avg, p.ci95, p.censored ? 1 : 0);
        os << buf;
    }
}

}  // namespace twr
