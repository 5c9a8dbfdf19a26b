#pragma once

#include "walkwait/distribution.hpp"
#include "walkwait/scenario.hpp"

namespace walkwait {

// The four stages of the walk-then-wait expected-time formula that this
// library can evaluate side by side:
//
//   OriginalExpr          the published full-journey expression, verbatim,
//                         including both of its defects (its boarding term
//                         omits the waiting time, and its fallback branch
//                         walks the full distance after already covering d2)
//   OriginalIndiff        the published break-even equation's waiting side,
//                         turned into a journey total by adding the walk to
//                         stop 2 (boarding term includes the waiting time;
//                         the fallback distance defect remains)
//   DistanceCorrectedOnly OriginalExpr with only the fallback distance
//                         fixed: the no-board branch walks d - d2, not d
//   FullyCorrected        fallback distance fixed and the boarding density
//                         replaced by the shifted view (buses are met at
//                         stop 2, not stop 1), for any arrival distribution
//
// The original and distance-corrected stages hard-code a 1/t_b headway
// factor, so they require a uniform(0, t_b) distribution and throw
// ValidationError("VariantRequiresUniform") otherwise. They are evaluated
// exactly as published, never silently repaired; when tw > t_b their
// literal 1/t_b integral runs past the support and the breakdown's
// literal_out_of_support flag is set.
enum class FormulaVariant {
    OriginalExpr,
    OriginalIndiff,
    DistanceCorrectedOnly,
    FullyCorrected,
};

constexpr FormulaVariant kAllVariants[] = {
    FormulaVariant::OriginalExpr,
    FormulaVariant::OriginalIndiff,
    FormulaVariant::DistanceCorrectedOnly,
    FormulaVariant::FullyCorrected,
};

const char* to_string(FormulaVariant v);

// Expected total journey time under the published full-journey expression,
// verbatim. `headway` must be uniform(0, t_b) (it supplies the literal
// 1/t_b factor); `general_p` is the density used by the fallback branch's
// probability and defaults to `headway`.
EvalBreakdown original_expression_total(const Scenario& s, const ArrivalDistribution& headway,
                                        const ArrivalDistribution* general_p = nullptr);

// Both sides of the published break-even comparison at stop 2: `waiting`
// is the expected remaining time when waiting up to tw (boarding term with
// the waiting time included, fallback with the published full-distance
// defect), `walk_on` is the remaining walk time (d - d2)/vw.
struct OriginalIndifference {
    EvalBreakdown waiting;
    double walk_on = 0.0;
};

OriginalIndifference original_indifference(const Scenario& s, const ArrivalDistribution& headway,
                                           const ArrivalDistribution* general_p = nullptr);

// The corrected fallback term in isolation: (1 - cdf(tw)) * (walk_rest + tw),
// with the unshifted density. Valid for any distribution.
double distance_corrected_term2(const Scenario& s, const ArrivalDistribution& dist);

// Stop-1 arrival time of the bus that reaches stop 2 exactly t after the
// walker got there: t + shift.
double corrected_time(const Scenario& s, double t);

// Boarding branch of the corrected formula: expected contribution
// integral of shifted_pdf(t) * (ride_rest + t) over the waiting window,
// plus the boarding probability cdf(shift + tw) - cdf(shift).
struct BoardingIntegral {
    double value = 0.0;
    double p_board = 0.0;
};

BoardingIntegral corrected_boarding_integral(const Scenario& s, const ArrivalDistribution& dist);

// Corrected expected remaining time once the walker stands at stop 2:
// boarding branch plus (1 - p_board) * (walk_rest + tw). The shifted
// density is used consistently in both branches.
EvalBreakdown corrected_post_stop2(const Scenario& s, const ArrivalDistribution& dist);

// Corrected expected total journey time for walk-then-wait:
// d2/vw + corrected_post_stop2. Event probabilities come straight from the
// cdf so that p_board + p_missed_early + p_no_bus is exactly 1:
// p_missed_early = cdf(shift), p_no_bus = 1 - cdf(shift + tw).
EvalBreakdown corrected_total(const Scenario& s, const ArrivalDistribution& dist);

// Baseline strategy: wait up to tw at stop 1, board anything that arrives,
// otherwise walk the whole way. Independent of d2.
EvalBreakdown wait_at_stop1(const Scenario& s, const ArrivalDistribution& dist);

// Extra expected wait caused by a bus overtaking the walker en route to
// stop 2, under the two-bus uniform headway picture: quadrature of the
// published integrand over [0, d2/vw]. Requires d2/vw < t_b, otherwise
// AssumptionViolated (a bus would then always overtake the walker before
// stop 2, so waiting would always dominate). Reported as a standalone
// diagnostic; it is never folded into corrected_total.
double residual_uniform(const Scenario& s, double tb);

// Same quantity in closed form: (d2/vw) * (t_b - d2/vw) / t_b.
double residual_closed_form(const Scenario& s, double tb);

// Indifference waiting budget: solves corrected_post_stop2(tw) = walk_rest
// for tw inside [lo, hi] to 1e-9. tw = 0 is always a degenerate solution
// (waiting nothing equals walking on), so a zero at lo is skipped and the
// sign just inside the bracket is used instead. Throws NoSignChange with
// both endpoint values when one side dominates throughout the bracket.
double breakeven_tw(const Scenario& s, const ArrivalDistribution& dist, double lo, double hi);

// Same equation solved in d2 (with walk_rest = (d - d2)/vw varying too);
// bracket must lie within [0, d].
double breakeven_d2(const Scenario& s, const ArrivalDistribution& dist, double lo, double hi);

// Full-journey expected total under the given formula stage.
EvalBreakdown evaluate_variant(const Scenario& s, const ArrivalDistribution& dist, FormulaVariant v);

// Side-by-side strategy comparison: walk-then-wait (fully corrected),
// wait-at-stop-1, and walking the whole way. `recommended` is the argmin
// of the totals, ties broken toward WaitAtStop1, then WalkThenWait, then
// WalkAll; `margin` is second-best minus best.
struct DecisionReport {
    EvalBreakdown walk_then_wait;
    EvalBreakdown wait_at_stop1;
    EvalBreakdown walk_all;
    StrategyKind recommended = StrategyKind::WaitAtStop1;
    double margin = 0.0;
};

DecisionReport decide(const Scenario& s, const ArrivalDistribution& dist);

}  // namespace walkwait
