#pragma once

#include <string>
#include <vector>

namespace walkwait {

// Geometry, kinematics and policy parameters of one walk-or-wait problem.
// Units are caller-chosen but must be consistent: one length unit throughout
// and one time unit throughout; nothing here ever converts units.
//
//   d   distance from stop 1 to the destination
//   d2  distance from stop 1 to stop 2 (0 <= d2 <= d)
//   vw  walking speed
//   vb  bus speed (strictly greater than vw)
//   tw  maximum waiting budget at the chosen stop
struct Scenario {
    double d = 0.0;
    double d2 = 0.0;
    double vw = 0.0;
    double vb = 0.0;
    double tw = 0.0;
};

// Names of every violated constraint, in a fixed order; empty when valid.
// Names: NonPositiveDistance, Stop2BeyondDestination, SpeedOrderViolated,
// NegativeWait.
std::vector<std::string> violations(const Scenario& raw);

// Returns the scenario unchanged if all invariants hold, otherwise throws
// ValidationError named after the first violated constraint.
Scenario validate(const Scenario& raw);

// Quantities derived from a valid scenario, shared by every formula:
//
//   shift      d2/vw - d2/vb: how much earlier a bus leaving stop 1 together
//              with the walker reaches stop 2. Adding it converts a waiting
//              time measured at stop 2 into a bus arrival time at stop 1.
//   ride_rest  (d - d2)/vb: ride time from stop 2 to the destination
//   walk_rest  (d - d2)/vw: walk time from stop 2 to the destination
//   walk_all   d/vw: walk time for the whole trip
struct DerivedKinematics {
    double shift = 0.0;
    double ride_rest = 0.0;
    double walk_rest = 0.0;
    double walk_all = 0.0;
};

DerivedKinematics derive(const Scenario& s);

// The three strategies the expected-time formulas compare.
enum class StrategyKind {
    WalkThenWait,  // walk to stop 2, wait up to tw, board or walk on
    WaitAtStop1,   // wait up to tw at stop 1, board or walk the whole way
    WalkAll,       // never wait
};

const char* to_string(StrategyKind k);

// Per-term decomposition of one expected-time evaluation.
//
// total = pre_walk + board_term + fallback_term, and the three event
// probabilities partition 1: boarding, bus gone before the walker arrived,
// and no bus within the waiting window.
struct EvalBreakdown {
    double pre_walk = 0.0;
    double board_term = 0.0;
    double fallback_term = 0.0;
    double total = 0.0;
    double p_board = 0.0;
    double p_missed_early = 0.0;
    double p_no_bus = 0.0;
    // Set when an as-printed formula integrated its literal 1/t_b factor
    // beyond the distribution's support (tw > t_b).
    bool literal_out_of_support = false;
};

}  // namespace walkwait
