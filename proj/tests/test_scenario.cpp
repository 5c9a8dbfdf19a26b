#include <doctest.h>

#include <cmath>
#include <limits>

#include "walkwait/errors.hpp"
#include "walkwait/scenario.hpp"

using namespace walkwait;

namespace {
const Scenario kS1{2.0, 0.5, 4.0, 20.0, 0.1};
}

TEST_CASE("valid scenario passes unchanged") {
    CHECK(violations(kS1).empty());
    const Scenario s = validate(kS1);
    CHECK(s.d == 2.0);
    CHECK(s.d2 == 0.5);
    CHECK(s.vw == 4.0);
    CHECK(s.vb == 20.0);
    CHECK(s.tw == 0.1);
}

TEST_CASE("violations are named and ordered") {
    Scenario s = kS1;
    s.d = 0.0;
    s.d2 = 0.0;
    auto bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "NonPositiveDistance");

    // Leaving d2 where it was also puts stop 2 past the destination.
    s = kS1;
    s.d = 0.0;
    bad = violations(s);
    REQUIRE(bad.size() == 2);
    CHECK(bad[0] == "NonPositiveDistance");
    CHECK(bad[1] == "Stop2BeyondDestination");

    s = kS1;
    s.d2 = -0.25;
    bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "NonPositiveDistance");

    s = kS1;
    s.d2 = 3.0;
    bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "Stop2BeyondDestination");

    s = kS1;
    s.vb = 4.0;  // equal speeds are not allowed
    bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "SpeedOrderViolated");

    s = kS1;
    s.vw = 0.0;
    bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "SpeedOrderViolated");

    s = kS1;
    s.tw = -0.1;
    bad = violations(s);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == "NegativeWait");

    // A scenario can violate several constraints at once; all are listed
    // in declaration order.
    s = Scenario{-1.0, -1.0, -1.0, -2.0, -1.0};
    bad = violations(s);
    REQUIRE(bad.size() == 3);
    CHECK(bad[0] == "NonPositiveDistance");
    CHECK(bad[1] == "SpeedOrderViolated");
    CHECK(bad[2] == "NegativeWait");
}

TEST_CASE("NaN fields are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int field = 0; field < 5; ++field) {
        Scenario s = kS1;
        (field == 0 ? s.d : field == 1 ? s.d2 : field == 2 ? s.vw : field == 3 ? s.vb : s.tw) = nan;
        CHECK_FALSE(violations(s).empty());
    }
}

TEST_CASE("validate throws the first violation by name") {
    Scenario s = kS1;
    s.d2 = 3.0;
    CHECK_THROWS_WITH_AS(validate(s), "Stop2BeyondDestination: need d2 <= d", ValidationError);
    try {
        validate(s);
    } catch (const ValidationError& e) {
        CHECK(e.name() == "Stop2BeyondDestination");
    }
}

TEST_CASE("derived kinematics match their defining expressions") {
    const DerivedKinematics k = derive(kS1);
    CHECK(k.shift == kS1.d2 / kS1.vw - kS1.d2 / kS1.vb);
    CHECK(k.ride_rest == (kS1.d - kS1.d2) / kS1.vb);
    CHECK(k.walk_rest == (kS1.d - kS1.d2) / kS1.vw);
    CHECK(k.walk_all == kS1.d / kS1.vw);

    CHECK(k.shift == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(k.ride_rest == doctest::Approx(0.075).epsilon(1e-12));
    CHECK(k.walk_rest == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(k.walk_all == doctest::Approx(0.5).epsilon(1e-12));

    Scenario s = kS1;
    s.d2 = 0.0;
    CHECK(derive(s).shift == 0.0);
    CHECK(derive(s).walk_rest == derive(s).walk_all);
}

TEST_CASE("strategy names") {
    CHECK(std::string(to_string(StrategyKind::WalkThenWait)) == "walk-then-wait");
    CHECK(std::string(to_string(StrategyKind::WaitAtStop1)) == "wait-at-stop1");
    CHECK(std::string(to_string(StrategyKind::WalkAll)) == "walk-all");
}
