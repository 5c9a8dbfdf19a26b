#include "walkwait/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "walkwait/errors.hpp"
#include "walkwait/quadrature.hpp"
#include "walkwait/root_find.hpp"

namespace walkwait {

namespace {

constexpr double kRootTol = 1e-9;

// Waiting times (measured at stop 2) at which the shifted density can kink:
// where t + shift crosses a support edge. integrate() drops any that fall
// outside the integration interval.
std::vector<double> shifted_breakpoints(const ArrivalDistribution& dist, double shift) {
    std::vector<double> bp;
    const double lo = dist.support_lo() - shift;
    const double hi = dist.support_hi() - shift;
    if (std::isfinite(lo)) bp.push_back(lo);
    if (std::isfinite(hi)) bp.push_back(hi);
    return bp;
}

std::vector<double> support_breakpoints(const ArrivalDistribution& dist) {
    return shifted_breakpoints(dist, 0.0);
}

// The as-printed stages carry a literal 1/t_b factor, so they only make
// sense for a uniform window starting at 0.
double require_uniform_headway(const ArrivalDistribution& headway, const char* stage) {
    if (headway.kind() != ArrivalDistribution::Kind::Uniform || headway.support_lo() != 0.0) {
        throw ValidationError("VariantRequiresUniform",
                              std::string(stage) +
                                  " hard-codes a 1/t_b headway factor and is only defined for "
                                  "uniform:0,<t_b> arrivals; got " +
                                  headway.spec_string());
    }
    return headway.support_hi();
}

void finish(EvalBreakdown& b) {
    b.total = b.pre_walk + b.board_term + b.fallback_term;
}

double checked_headway(double tb) {
    if (!(tb > 0.0) || !std::isfinite(tb)) {
        throw ValidationError("NonPositiveHeadway", "t_b must be a positive finite time");
    }
    return tb;
}

// Shared indifference solver. A zero exactly at the lower endpoint can be
// the degenerate waiting budget tw = 0 (waiting nothing always equals
// walking on); the caller asks to skip it by probing just inside.
double solve_indifference(const std::function<double(double)>& f, double lo, double hi,
                          bool skip_degenerate_lo) {
    if (!(lo < hi)) {
        throw ValidationError("InvalidBracket", "bracket must satisfy lo < hi");
    }
    double f_lo = f(lo);
    if (f_lo == 0.0) {
        if (!skip_degenerate_lo) return lo;
        lo = lo + (hi - lo) * 1e-6;
        f_lo = f(lo);
        if (f_lo == 0.0) return lo;
    }
    const double f_hi = f(hi);
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NoSignChange(f_lo, f_hi,
                           f_lo > 0.0 ? "no indifference point: walking on dominates waiting "
                                        "throughout the bracket"
                                      : "no indifference point: waiting dominates walking on "
                                        "throughout the bracket");
    }
    return find_root(f, lo, hi, kRootTol);
}

}  // namespace

const char* to_string(FormulaVariant v) {
    switch (v) {
        case FormulaVariant::OriginalExpr: return "original-expr";
        case FormulaVariant::OriginalIndiff: return "original-indiff";
        case FormulaVariant::DistanceCorrectedOnly: return "distance-corrected";
        case FormulaVariant::FullyCorrected: return "fully-corrected";
    }
    return "unknown";
}

EvalBreakdown original_expression_total(const Scenario& raw, const ArrivalDistribution& headway,
                                        const ArrivalDistribution* general_p) {
    const Scenario s = validate(raw);
    const double tb = require_uniform_headway(headway, "the as-printed journey expression");
    const ArrivalDistribution& p = general_p ? *general_p : headway;
    const DerivedKinematics k = derive(s);

    EvalBreakdown b;
    b.pre_walk = s.d2 / s.vw;
    // As printed: the boarding term forgets the waiting time itself.
    b.board_term = integrate([&](double) { return k.ride_rest / tb; }, 0.0, s.tw).value;
    b.p_board = p.cdf(s.tw);
    // As printed: the fallback walks the full distance d after having
    // already covered d2.
    b.fallback_term = (1.0 - b.p_board) * (k.walk_all + s.tw);
    b.p_no_bus = 1.0 - b.p_board;
    b.literal_out_of_support = s.tw > tb;
    finish(b);
    return b;
}

OriginalIndifference original_indifference(const Scenario& raw, const ArrivalDistribution& headway,
                                           const ArrivalDistribution* general_p) {
    const Scenario s = validate(raw);
    const double tb = require_uniform_headway(headway, "the as-printed break-even comparison");
    const ArrivalDistribution& p = general_p ? *general_p : headway;
    const DerivedKinematics k = derive(s);

    OriginalIndifference r;
    r.waiting.board_term =
        integrate([&](double t) { return (k.ride_rest + t) / tb; }, 0.0, s.tw).value;
    r.waiting.p_board = p.cdf(s.tw);
    r.waiting.fallback_term = (1.0 - r.waiting.p_board) * (k.walk_all + s.tw);
    r.waiting.p_no_bus = 1.0 - r.waiting.p_board;
    r.waiting.literal_out_of_support = s.tw > tb;
    finish(r.waiting);
    r.walk_on = k.walk_rest;
    return r;
}

double distance_corrected_term2(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    const DerivedKinematics k = derive(s);
    return (1.0 - dist.cdf(s.tw)) * (k.walk_rest + s.tw);
}

double corrected_time(const Scenario& raw, double t) {
    const Scenario s = validate(raw);
    return t + derive(s).shift;
}

BoardingIntegral corrected_boarding_integral(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    const DerivedKinematics k = derive(s);

    BoardingIntegral r;
    r.value = integrate([&](double t) { return dist.shifted_pdf(k.shift, t) * (k.ride_rest + t); },
                        0.0, s.tw, 1e-10, shifted_breakpoints(dist, k.shift))
                  .value;
    r.p_board = dist.cdf(k.shift + s.tw) - dist.cdf(k.shift);
    return r;
}

EvalBreakdown corrected_post_stop2(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    const DerivedKinematics k = derive(s);
    const BoardingIntegral boarding = corrected_boarding_integral(s, dist);

    EvalBreakdown b;
    b.board_term = boarding.value;
    b.p_board = boarding.p_board;
    b.fallback_term = (1.0 - boarding.p_board) * (k.walk_rest + s.tw);
    b.p_missed_early = dist.missed_mass(k.shift);
    b.p_no_bus = 1.0 - dist.cdf(k.shift + s.tw);
    finish(b);
    return b;
}

EvalBreakdown corrected_total(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    EvalBreakdown b = corrected_post_stop2(s, dist);
    b.pre_walk = s.d2 / s.vw;
    finish(b);
    return b;
}

EvalBreakdown wait_at_stop1(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    const DerivedKinematics k = derive(s);
    const double ride_all = s.d / s.vb;

    EvalBreakdown b;
    b.board_term = integrate([&](double t) { return dist.pdf(t) * (t + ride_all); }, 0.0, s.tw,
                             1e-10, support_breakpoints(dist))
                       .value;
    b.p_board = dist.cdf(s.tw);
    b.fallback_term = (1.0 - b.p_board) * (s.tw + k.walk_all);
    b.p_no_bus = 1.0 - b.p_board;
    finish(b);
    return b;
}

double residual_uniform(const Scenario& raw, double tb) {
    const Scenario s = validate(raw);
    checked_headway(tb);
    const double walk_leg = s.d2 / s.vw;
    if (!(walk_leg < tb)) {
        throw AssumptionViolated(
            "ResidualGate",
            "d2/vw must stay below t_b: otherwise a bus always overtakes the walker before "
            "stop 2 and waiting at stop 1 dominates, so the residual picture does not apply");
    }
    return integrate([&](double t) { return ((tb - t) - (s.d2 - s.vw * t) / s.vw) / tb; }, 0.0,
                     walk_leg)
        .value;
}

double residual_closed_form(const Scenario& raw, double tb) {
    const Scenario s = validate(raw);
    checked_headway(tb);
    const double walk_leg = s.d2 / s.vw;
    if (!(walk_leg < tb)) {
        throw AssumptionViolated(
            "ResidualGate",
            "d2/vw must stay below t_b: otherwise a bus always overtakes the walker before "
            "stop 2 and waiting at stop 1 dominates, so the residual picture does not apply");
    }
    return walk_leg * (tb - walk_leg) / tb;
}

double breakeven_tw(const Scenario& raw, const ArrivalDistribution& dist, double lo, double hi) {
    Scenario base = raw;
    base.tw = 0.0;
    base = validate(base);
    if (!(lo >= 0.0)) {
        throw ValidationError("InvalidBracket", "waiting budgets are nonnegative");
    }
    const double walk_on = derive(base).walk_rest;
    const auto f = [&](double tw) {
        Scenario probe = base;
        probe.tw = tw;
        return corrected_post_stop2(probe, dist).total - walk_on;
    };
    return solve_indifference(f, lo, hi, lo == 0.0);
}

double breakeven_d2(const Scenario& raw, const ArrivalDistribution& dist, double lo, double hi) {
    const Scenario base = validate(raw);
    if (!(lo >= 0.0) || !(hi <= base.d)) {
        throw ValidationError("InvalidBracket", "d2 bracket must lie within [0, d]");
    }
    const auto f = [&](double d2) {
        Scenario probe = base;
        probe.d2 = d2;
        return corrected_post_stop2(probe, dist).total - derive(probe).walk_rest;
    };
    return solve_indifference(f, lo, hi, false);
}

EvalBreakdown evaluate_variant(const Scenario& raw, const ArrivalDistribution& dist,
                               FormulaVariant v) {
    const Scenario s = validate(raw);
    switch (v) {
        case FormulaVariant::OriginalExpr:
            return original_expression_total(s, dist);
        case FormulaVariant::OriginalIndiff: {
            const OriginalIndifference sides = original_indifference(s, dist);
            EvalBreakdown b = sides.waiting;
            b.pre_walk = s.d2 / s.vw;
            finish(b);
            return b;
        }
        case FormulaVariant::DistanceCorrectedOnly: {
            const double tb =
                require_uniform_headway(dist, "the distance-corrected-only stage");
            const DerivedKinematics k = derive(s);
            EvalBreakdown b;
            b.pre_walk = s.d2 / s.vw;
            b.board_term = integrate([&](double) { return k.ride_rest / tb; }, 0.0, s.tw).value;
            b.p_board = dist.cdf(s.tw);
            b.fallback_term = distance_corrected_term2(s, dist);
            b.p_no_bus = 1.0 - b.p_board;
            b.literal_out_of_support = s.tw > tb;
            finish(b);
            return b;
        }
        case FormulaVariant::FullyCorrected:
            return corrected_total(s, dist);
    }
    throw ValidationError("UnknownVariant", "unhandled formula variant");
}

DecisionReport decide(const Scenario& raw, const ArrivalDistribution& dist) {
    const Scenario s = validate(raw);
    const DerivedKinematics k = derive(s);

    DecisionReport r;
    r.walk_then_wait = corrected_total(s, dist);
    r.wait_at_stop1 = wait_at_stop1(s, dist);
    r.walk_all.pre_walk = k.walk_all;
    r.walk_all.p_no_bus = 1.0;
    finish(r.walk_all);

    const StrategyKind priority[] = {StrategyKind::WaitAtStop1, StrategyKind::WalkThenWait,
                                     StrategyKind::WalkAll};
    const auto total_of = [&](StrategyKind kind) {
        switch (kind) {
            case StrategyKind::WalkThenWait: return r.walk_then_wait.total;
            case StrategyKind::WaitAtStop1: return r.wait_at_stop1.total;
            case StrategyKind::WalkAll: return r.walk_all.total;
        }
        return std::numeric_limits<double>::quiet_NaN();
    };

    r.recommended = priority[0];
    for (StrategyKind kind : priority) {
        if (total_of(kind) < total_of(r.recommended)) r.recommended = kind;
    }
    double totals[] = {r.walk_then_wait.total, r.wait_at_stop1.total, r.walk_all.total};
    std::sort(std::begin(totals), std::end(totals));
    r.margin = totals[1] - totals[0];
    return r;
}

}  // namespace walkwait
