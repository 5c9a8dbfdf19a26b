#include "walkwait/scenario.hpp"

#include "walkwait/errors.hpp"

namespace walkwait {

std::vector<std::string> violations(const Scenario& raw) {
    std::vector<std::string> out;
    // NaN fails every comparison below, so NaN fields are rejected too.
    if (!(raw.d > 0.0)) {
        out.emplace_back("NonPositiveDistance");
    } else if (!(raw.d2 >= 0.0)) {
        out.emplace_back("NonPositiveDistance");
    }
    if (raw.d2 > raw.d) {
        out.emplace_back("Stop2BeyondDestination");
    }
    if (!(raw.vw > 0.0) || !(raw.vb > raw.vw)) {
        out.emplace_back("SpeedOrderViolated");
    }
    if (!(raw.tw >= 0.0)) {
        out.emplace_back("NegativeWait");
    }
    return out;
}

Scenario validate(const Scenario& raw) {
    const auto bad = violations(raw);
    if (!bad.empty()) {
        std::string detail;
        if (bad.front() == "NonPositiveDistance") {
            detail = "need d > 0 and d2 >= 0";
        } else if (bad.front() == "Stop2BeyondDestination") {
            detail = "need d2 <= d";
        } else if (bad.front() == "SpeedOrderViolated") {
            detail = "need vb > vw > 0";
        } else {
            detail = "need tw >= 0";
        }
        throw ValidationError(bad.front(), detail);
    }
    return raw;
}

DerivedKinematics derive(const Scenario& s) {
    DerivedKinematics k;
    k.shift = s.d2 / s.vw - s.d2 / s.vb;
    k.ride_rest = (s.d - s.d2) / s.vb;
    k.walk_rest = (s.d - s.d2) / s.vw;
    k.walk_all = s.d / s.vw;
    return k;
}

const char* to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::WalkThenWait: return "walk-then-wait";
        case StrategyKind::WaitAtStop1: return "wait-at-stop1";
        case StrategyKind::WalkAll: return "walk-all";
    }
    return "unknown";
}

}  // namespace walkwait
