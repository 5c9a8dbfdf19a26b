#pragma once

#include <cstdint>

#include "walkwait/distribution.hpp"
#include "walkwait/scenario.hpp"

namespace walkwait {

enum class TrialEvent {
    Boarded,        // bus taken at the chosen stop
    MissedEarly,    // bus cleared stop 2 before the walker got there
    NoBusInWindow,  // waiting budget exhausted
};

const char* to_string(TrialEvent e);

// One simulated journey. Two exact pathwise identities hold by construction
// and are what the test suite pins: Boarded implies
// arrival == bus_t1 + d/vb, and any non-boarded outcome of the two waiting
// strategies implies arrival == tw + d/vw (both waste exactly tw versus
// walking straight through).
struct TrialOutcome {
    StrategyKind strategy = StrategyKind::WalkAll;
    double bus_t1 = 0.0;
    TrialEvent event = TrialEvent::NoBusInWindow;
    double arrival = 0.0;
};

// Kinematics of a single trial, deterministic in its inputs. The boarding
// window at stop 2 is closed on both ends: a bus arriving at the walker's
// exact arrival instant is boarded. `s` must already be valid and
// bus_t1 >= 0.
TrialOutcome simulate_trial(const Scenario& s, StrategyKind strategy, double bus_t1);

struct SimStats {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;  // sample std / sqrt(trials)
    double freq_board = 0.0;
    double freq_missed_early = 0.0;
    double freq_no_bus = 0.0;
};

// Execution shape. Trials are numbered globally and each draws from its own
// substream of the master seed, so every (threads, chunk_size) combination
// sees the same multiset of trial outcomes. The partition into chunks is
// fixed by chunk_size alone and chunks are combined in index order, hence
// the thread count never changes the result bit for bit; a different
// chunk_size regroups the same outcomes and can move the aggregate by
// rounding only (counts stay identical).
struct McOptions {
    int threads = 1;
    std::uint64_t chunk_size = 65536;
};

// Monte Carlo estimate of the expected journey time under one strategy.
// Deterministic for a fixed (scenario, strategy, dist, trials, seed).
SimStats run_mc(const Scenario& s, StrategyKind strategy, const ArrivalDistribution& dist,
                std::uint64_t trials, std::uint64_t seed, const McOptions& options = {});

// Conditional statistics from the two-bus renewal picture: bus 1 uniform on
// [0, t_b], bus 2 uniform on [t_b, 2 t_b]. A trial counts as an overtake
// when bus 1 catches the walker strictly before stop 2 (equal-position
// time bus_t1 * vb / (vb - vw)); for those trials the extra wait at stop 2
// until bus 2 arrives there is accumulated.
struct RenewalStats {
    std::uint64_t trials = 0;
    std::uint64_t overtakes = 0;
    double p_overtake = 0.0;
    double mean_extra_wait = 0.0;  // NaN when the event never occurred
    double std_error = 0.0;        // over overtaking trials; NaN when empty
};

// Same gate as the residual formulas: requires d2/vw < t_b, otherwise
// AssumptionViolated. The estimate is a diagnostic reported next to the
// residual integral; the two are never asserted equal.
RenewalStats run_renewal(const Scenario& s, double tb, std::uint64_t trials, std::uint64_t seed,
                         const McOptions& options = {});

}  // namespace walkwait
