#include "walkwait/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "walkwait/errors.hpp"

namespace walkwait {

namespace {

struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    // Chan's pairwise combination; merging in chunk-index order keeps the
    // result identical to a single sequential pass over the same chunks.
    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const std::uint64_t total = n + o.n;
        const double delta = o.mean - mean;
        const double w = static_cast<double>(o.n) / static_cast<double>(total);
        mean += delta * w;
        m2 += o.m2 + delta * delta * w * static_cast<double>(n);
        n = total;
    }

    double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

// Runs `chunk_fn(begin, end)` over [0, trials) split into fixed-size chunks,
// optionally on several threads, and folds the per-chunk accumulators in
// chunk-index order. Accum needs a default state and merge().
template <typename Accum, typename ChunkFn>
Accum run_chunks(std::uint64_t trials, const McOptions& opt, const ChunkFn& chunk_fn) {
    if (trials == 0) throw ValidationError("NoTrials", "at least one trial is required");
    if (opt.threads < 1) throw ValidationError("BadMcOptions", "threads must be >= 1");
    if (opt.chunk_size < 1) throw ValidationError("BadMcOptions", "chunk_size must be >= 1");

    const std::uint64_t n_chunks = (trials + opt.chunk_size - 1) / opt.chunk_size;
    std::vector<Accum> parts(n_chunks);
    std::atomic<std::uint64_t> next{0};
    const auto worker = [&] {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
            const std::uint64_t begin = c * opt.chunk_size;
            const std::uint64_t end = std::min(trials, begin + opt.chunk_size);
            parts[c] = chunk_fn(begin, end);
        }
    };

    const std::uint64_t pool_size =
        std::min(static_cast<std::uint64_t>(opt.threads), n_chunks);
    if (pool_size <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (std::uint64_t i = 0; i < pool_size; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    Accum total;
    for (const Accum& p : parts) total.merge(p);
    return total;
}

struct McAccum {
    Welford w;
    std::uint64_t boarded = 0;
    std::uint64_t missed = 0;
    std::uint64_t no_bus = 0;

    void merge(const McAccum& o) {
        w.merge(o.w);
        boarded += o.boarded;
        missed += o.missed;
        no_bus += o.no_bus;
    }
};

struct RenewalAccum {
    Welford w;

    void merge(const RenewalAccum& o) { w.merge(o.w); }
};

}  // namespace

const char* to_string(TrialEvent e) {
    switch (e) {
        case TrialEvent::Boarded: return "boarded";
        case TrialEvent::MissedEarly: return "missed-early";
        case TrialEvent::NoBusInWindow: return "no-bus";
    }
    return "unknown";
}

TrialOutcome simulate_trial(const Scenario& s, StrategyKind strategy, double bus_t1) {
    TrialOutcome o;
    o.strategy = strategy;
    o.bus_t1 = bus_t1;
    const double walk_fallback = s.tw + s.d / s.vw;

    switch (strategy) {
        case StrategyKind::WalkThenWait: {
            const double walker_at_stop2 = s.d2 / s.vw;
            const double bus_at_stop2 = bus_t1 + s.d2 / s.vb;
            if (bus_at_stop2 < walker_at_stop2) {
                o.event = TrialEvent::MissedEarly;
                o.arrival = walk_fallback;
            } else if (bus_at_stop2 <= walker_at_stop2 + s.tw) {
                o.event = TrialEvent::Boarded;
                o.arrival = bus_t1 + s.d / s.vb;
            } else {
                o.event = TrialEvent::NoBusInWindow;
                o.arrival = walk_fallback;
            }
            break;
        }
        case StrategyKind::WaitAtStop1: {
            if (bus_t1 <= s.tw) {
                o.event = TrialEvent::Boarded;
                o.arrival = bus_t1 + s.d / s.vb;
            } else {
                o.event = TrialEvent::NoBusInWindow;
                o.arrival = walk_fallback;
            }
            break;
        }
        case StrategyKind::WalkAll: {
            o.event = TrialEvent::NoBusInWindow;
            o.arrival = s.d / s.vw;
            break;
        }
    }
    return o;
}

SimStats run_mc(const Scenario& raw, StrategyKind strategy, const ArrivalDistribution& dist,
                std::uint64_t trials, std::uint64_t seed, const McOptions& options) {
    const Scenario s = validate(raw);

    const McAccum total =
        run_chunks<McAccum>(trials, options, [&](std::uint64_t begin, std::uint64_t end) {
            McAccum acc;
            for (std::uint64_t i = begin; i < end; ++i) {
                SeededRng rng = SeededRng::substream(seed, i);
                const TrialOutcome o = simulate_trial(s, strategy, dist.sample(rng));
                acc.w.add(o.arrival);
                switch (o.event) {
                    case TrialEvent::Boarded: ++acc.boarded; break;
                    case TrialEvent::MissedEarly: ++acc.missed; break;
                    case TrialEvent::NoBusInWindow: ++acc.no_bus; break;
                }
            }
            return acc;
        });

    SimStats st;
    st.trials = trials;
    st.mean = total.w.mean;
    st.std_error = total.w.std_error();
    const double n = static_cast<double>(trials);
    st.freq_board = static_cast<double>(total.boarded) / n;
    st.freq_missed_early = static_cast<double>(total.missed) / n;
    st.freq_no_bus = static_cast<double>(total.no_bus) / n;
    return st;
}

RenewalStats run_renewal(const Scenario& raw, double tb, std::uint64_t trials, std::uint64_t seed,
                         const McOptions& options) {
    const Scenario s = validate(raw);
    if (!(tb > 0.0) || !std::isfinite(tb)) {
        throw ValidationError("NonPositiveHeadway", "t_b must be a positive finite time");
    }
    const double walk_leg = s.d2 / s.vw;
    if (!(walk_leg < tb)) {
        throw AssumptionViolated(
            "ResidualGate",
            "d2/vw must stay below t_b: otherwise a bus always overtakes the walker before "
            "stop 2 and waiting at stop 1 dominates, so the residual picture does not apply");
    }

    const ArrivalDistribution window = ArrivalDistribution::uniform(0.0, tb);
    const RenewalAccum total =
        run_chunks<RenewalAccum>(trials, options, [&](std::uint64_t begin, std::uint64_t end) {
            RenewalAccum acc;
            for (std::uint64_t i = begin; i < end; ++i) {
                SeededRng rng = SeededRng::substream(seed, i);
                const double bus1 = window.sample(rng);
                const double bus2 = tb + window.sample(rng);
                const double overtake_at = bus1 * s.vb / (s.vb - s.vw);
                if (overtake_at < walk_leg) {
                    acc.w.add(bus2 + s.d2 / s.vb - walk_leg);
                }
            }
            return acc;
        });

    RenewalStats st;
    st.trials = trials;
    st.overtakes = total.w.n;
    st.p_overtake = static_cast<double>(total.w.n) / static_cast<double>(trials);
    if (total.w.n == 0) {
        st.mean_extra_wait = std::numeric_limits<double>::quiet_NaN();
        st.std_error = std::numeric_limits<double>::quiet_NaN();
    } else {
        st.mean_extra_wait = total.w.mean;
        st.std_error = total.w.std_error();
    }
    return st;
}

}  // namespace walkwait
