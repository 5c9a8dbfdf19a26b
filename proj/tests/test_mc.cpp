#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "walkwait/engine.hpp"
#include "walkwait/errors.hpp"
#include "walkwait/mc.hpp"

using namespace walkwait;

namespace {

const Scenario kS1{2.0, 0.5, 4.0, 20.0, 0.1};

bool same_stats(const SimStats& a, const SimStats& b) {
    return a.trials == b.trials && a.mean == b.mean && a.std_error == b.std_error &&
           a.freq_board == b.freq_board && a.freq_missed_early == b.freq_missed_early &&
           a.freq_no_bus == b.freq_no_bus;
}

}  // namespace

TEST_CASE("single trial kinematics") {
    // Walker reaches stop 2 at 0.125; boarding window is [0.125, 0.225].
    TrialOutcome o = simulate_trial(kS1, StrategyKind::WalkThenWait, 0.15);
    CHECK(o.event == TrialEvent::Boarded);
    CHECK(o.arrival == 0.15 + kS1.d / kS1.vb);
    CHECK(o.arrival == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(o.bus_t1 == 0.15);
    CHECK(o.strategy == StrategyKind::WalkThenWait);

    o = simulate_trial(kS1, StrategyKind::WalkThenWait, 0.05);
    CHECK(o.event == TrialEvent::MissedEarly);
    CHECK(o.arrival == kS1.tw + kS1.d / kS1.vw);
    CHECK(o.arrival == doctest::Approx(0.6).epsilon(1e-12));

    o = simulate_trial(kS1, StrategyKind::WaitAtStop1, 0.3);
    CHECK(o.event == TrialEvent::NoBusInWindow);
    CHECK(o.arrival == doctest::Approx(0.6).epsilon(1e-12));

    // Both window edges board: the window is closed.
    CHECK(simulate_trial(kS1, StrategyKind::WalkThenWait, 0.1).event == TrialEvent::Boarded);
    CHECK(simulate_trial(kS1, StrategyKind::WalkThenWait, 0.2).event == TrialEvent::Boarded);
    CHECK(simulate_trial(kS1, StrategyKind::WalkThenWait, 0.2000001).event ==
          TrialEvent::NoBusInWindow);
    CHECK(simulate_trial(kS1, StrategyKind::WaitAtStop1, 0.1).event == TrialEvent::Boarded);

    o = simulate_trial(kS1, StrategyKind::WalkAll, 0.15);
    CHECK(o.event == TrialEvent::NoBusInWindow);
    CHECK(o.arrival == kS1.d / kS1.vw);
}

TEST_CASE("event names") {
    CHECK(std::string(to_string(TrialEvent::Boarded)) == "boarded");
    CHECK(std::string(to_string(TrialEvent::MissedEarly)) == "missed-early");
    CHECK(std::string(to_string(TrialEvent::NoBusInWindow)) == "no-bus");
}

TEST_CASE("pathwise identities hold on every trial") {
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    const std::uint64_t n = 100000;
    const double ride = kS1.d / kS1.vb;
    const double fallback = kS1.tw + kS1.d / kS1.vw;
    for (StrategyKind strat : {StrategyKind::WalkThenWait, StrategyKind::WaitAtStop1}) {
        for (std::uint64_t i = 0; i < n; ++i) {
            SeededRng rng = SeededRng::substream(42, i);
            const TrialOutcome o = simulate_trial(kS1, strat, dist.sample(rng));
            if (o.event == TrialEvent::Boarded) {
                REQUIRE(o.arrival == o.bus_t1 + ride);
            } else {
                REQUIRE(o.arrival == fallback);
            }
        }
    }
}

TEST_CASE("estimates converge to the corrected expectations") {
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    const std::uint64_t n = 100000;
    const double freq_tol = 4.0 * std::sqrt(0.4 * 0.6 / static_cast<double>(n));

    const SimStats ww = run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42);
    CHECK(ww.trials == n);
    CHECK(std::fabs(ww.mean - 0.46) <= 4.0 * ww.std_error);
    CHECK(std::fabs(ww.freq_board - 0.4) <= freq_tol);
    CHECK(std::fabs(ww.freq_missed_early - 0.4) <= freq_tol);
    CHECK(std::fabs(ww.freq_no_bus - 0.2) <= freq_tol);
    CHECK(ww.freq_board + ww.freq_missed_early + ww.freq_no_bus == doctest::Approx(1.0));

    const SimStats w1 = run_mc(kS1, StrategyKind::WaitAtStop1, dist, n, 42);
    CHECK(std::fabs(w1.mean - 0.42) <= 4.0 * w1.std_error);
    CHECK(std::fabs(w1.freq_board - 0.4) <= freq_tol);
    CHECK(w1.freq_missed_early == 0.0);

    const SimStats wa = run_mc(kS1, StrategyKind::WalkAll, dist, n, 42);
    CHECK(wa.mean == kS1.d / kS1.vw);
    CHECK(wa.std_error == 0.0);
    CHECK(wa.freq_no_bus == 1.0);
    CHECK(wa.freq_board == 0.0);
}

TEST_CASE("exponential arrivals converge to the closed form") {
    const auto dist = ArrivalDistribution::exponential(4.0);
    const SimStats st = run_mc(kS1, StrategyKind::WalkThenWait, dist, 100000, 7);
    const double closed = 0.6 - 0.15 * std::exp(-0.4) + 0.05 * std::exp(-0.8);
    CHECK(std::fabs(st.mean - closed) <= 4.0 * st.std_error);
}

TEST_CASE("simulation is a pure function of its inputs") {
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    const SimStats a = run_mc(kS1, StrategyKind::WalkThenWait, dist, 20000, 42);
    const SimStats b = run_mc(kS1, StrategyKind::WalkThenWait, dist, 20000, 42);
    CHECK(same_stats(a, b));
    const SimStats c = run_mc(kS1, StrategyKind::WalkThenWait, dist, 20000, 43);
    CHECK(a.mean != c.mean);
}

TEST_CASE("thread count never changes the numbers; chunk size only regroups them") {
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    const std::uint64_t n = 12345;  // deliberately not a chunk multiple

    // Fixed partition, varying pool size: bitwise identical.
    const SimStats seq = run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42, {1, 1000});
    CHECK(same_stats(seq, run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42, {3, 1000})));
    CHECK(same_stats(seq, run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42, {8, 1000})));

    // One chunk swallowing all trials is the same partition as the default.
    const SimStats base = run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42);
    CHECK(same_stats(base, run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42, {2, 50000})));

    // A different chunk size regroups the same trial outcomes: the event
    // counts cannot move, the folded moments only by rounding.
    for (const McOptions opt : {McOptions{1, 64}, McOptions{4, 999}}) {
        const SimStats other = run_mc(kS1, StrategyKind::WalkThenWait, dist, n, 42, opt);
        CHECK(other.freq_board == base.freq_board);
        CHECK(other.freq_missed_early == base.freq_missed_early);
        CHECK(other.freq_no_bus == base.freq_no_bus);
        CHECK(std::fabs(other.mean - base.mean) <= 1e-12);
        CHECK(std::fabs(other.std_error - base.std_error) <= 1e-12);
    }
}

TEST_CASE("no stop-2 detour: both waiting strategies sample the same journey") {
    Scenario s = kS1;
    s.d2 = 0.0;
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    const SimStats a = run_mc(s, StrategyKind::WalkThenWait, dist, 50000, 42);
    const SimStats b = run_mc(s, StrategyKind::WaitAtStop1, dist, 50000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.freq_board == b.freq_board);
    CHECK(a.freq_missed_early == 0.0);
}

TEST_CASE("simulation input validation") {
    const auto dist = ArrivalDistribution::uniform(0.0, 0.25);
    CHECK_THROWS_AS(run_mc(kS1, StrategyKind::WalkAll, dist, 0, 42), ValidationError);
    CHECK_THROWS_AS(run_mc(kS1, StrategyKind::WalkAll, dist, 10, 42, {0, 100}), ValidationError);
    CHECK_THROWS_AS(run_mc(kS1, StrategyKind::WalkAll, dist, 10, 42, {1, 0}), ValidationError);
    Scenario bad = kS1;
    bad.d2 = 3.0;
    CHECK_THROWS_AS(run_mc(bad, StrategyKind::WalkAll, dist, 10, 42), ValidationError);
}

TEST_CASE("two-bus renewal diagnostic") {
    const std::uint64_t n = 100000;
    const RenewalStats st = run_renewal(kS1, 0.25, n, 42);
    CHECK(st.trials == n);
    CHECK(st.overtakes > 0);
    // Overtake before stop 2 iff bus 1 leaves within the first 0.1 of the
    // headway, so p = 0.4; conditional mean extra wait is 1.5 t_b - shift.
    CHECK(std::fabs(st.p_overtake - 0.4) <= 4.0 * std::sqrt(0.4 * 0.6 / static_cast<double>(n)));
    CHECK(std::fabs(st.mean_extra_wait - 0.275) <= 4.0 * st.std_error);
    CHECK(st.std_error > 0.0);

    const RenewalStats again = run_renewal(kS1, 0.25, n, 42);
    CHECK(st.overtakes == again.overtakes);
    CHECK(st.mean_extra_wait == again.mean_extra_wait);
    CHECK(st.std_error == again.std_error);

    // More threads over the same partition: bitwise identical.
    const RenewalStats threaded = run_renewal(kS1, 0.25, n, 42, {3, 65536});
    CHECK(st.overtakes == threaded.overtakes);
    CHECK(st.mean_extra_wait == threaded.mean_extra_wait);
    CHECK(st.std_error == threaded.std_error);

    // Regrouped chunks: same overtaking trials, moments agree to rounding.
    const RenewalStats regrouped = run_renewal(kS1, 0.25, n, 42, {1, 777});
    CHECK(st.overtakes == regrouped.overtakes);
    CHECK(std::fabs(st.mean_extra_wait - regrouped.mean_extra_wait) <= 1e-12);
    CHECK(std::fabs(st.std_error - regrouped.std_error) <= 1e-12);
}

TEST_CASE("renewal conditioning event can be empty") {
    Scenario s = kS1;
    s.d2 = 0.0;  // walker is already at stop 2, nothing to overtake
    const RenewalStats st = run_renewal(s, 0.25, 1000, 42);
    CHECK(st.overtakes == 0);
    CHECK(st.p_overtake == 0.0);
    CHECK(std::isnan(st.mean_extra_wait));
    CHECK(std::isnan(st.std_error));
}

TEST_CASE("renewal input gates") {
    Scenario s = kS1;
    s.d2 = 1.2;  // d2/vw = 0.3 >= t_b
    CHECK_THROWS_AS(run_renewal(s, 0.25, 1000, 42), AssumptionViolated);
    s.d2 = 1.0;  // equality is also out
    CHECK_THROWS_AS(run_renewal(s, 0.25, 1000, 42), AssumptionViolated);
    CHECK_THROWS_AS(run_renewal(kS1, 0.0, 1000, 42), ValidationError);
    CHECK_THROWS_AS(run_renewal(kS1, -1.0, 1000, 42), ValidationError);
    CHECK_THROWS_AS(run_renewal(kS1, 0.25, 0, 42), ValidationError);
}
