#include "walkwait/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "walkwait/errors.hpp"

namespace walkwait {

namespace {

constexpr int kMaxDepth = 50;

struct Workspace {
    const std::function<double(double)>* f = nullptr;
    std::int64_t evaluations = 0;
    double error = 0.0;

    double eval(double x) {
        ++evaluations;
        return (*f)(x);
    }
};

// One adaptive step on [a, b] where fa/fm/fb and the interval's Simpson
// value `whole` are already known.
double adapt(Workspace& ws, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ws.eval(lm);
    const double frm = ws.eval(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // The noise floor ends the recursion once the correction drops below
    // what doubles can resolve at this node's scale. Rounding can smear a
    // jump of a composed integrand an ulp or two past its breakpoint; the
    // spike that leaves inside a segment shrinks with h, and would otherwise
    // chase the halving tolerance forever. Genuine singularities keep delta
    // proportional to the node estimate, so they still hit the depth guard.
    const double noise = 0x1p-50 * (1.0 + std::abs(whole));
    if (std::abs(delta) <= std::max(15.0 * tol, noise)) {
        ws.error += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth >= kMaxDepth) {
        throw NumericsError("MaxDepthExceeded",
                            "quadrature tolerance unattainable within recursion budget");
    }
    const double half_tol = 0.5 * tol;
    return adapt(ws, a, m, fa, flm, fm, left, half_tol, depth + 1) +
           adapt(ws, m, b, fm, frm, fb, right, half_tol, depth + 1);
}

double segment(Workspace& ws, double a, double b, double tol) {
    // Sample the endpoints just inside the segment. Breakpoints sit exactly
    // on segment boundaries, so this reads the one-sided limit of a piecewise
    // integrand instead of whichever side the jump point itself belongs to;
    // without it the recursion chases a measure-zero endpoint value forever.
    const double nudge = (b - a) * 0x1p-48;
    double a_in = a + nudge;
    if (!(a_in > a)) a_in = std::nextafter(a, b);
    double b_in = b - nudge;
    if (!(b_in < b)) b_in = std::nextafter(b, a);
    const double m = 0.5 * (a + b);
    const double fa = ws.eval(a_in);
    const double fm = ws.eval(m);
    const double fb = ws.eval(b_in);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return adapt(ws, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, const std::vector<double>& breakpoints) {
    if (!(a <= b)) {
        throw ValidationError("InvalidInterval", "integrate needs a <= b");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("NonPositiveTolerance", "integrate needs tol > 0");
    }
    QuadResult result;
    if (a == b) {
        return result;
    }

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Workspace ws;
    ws.f = &f;
    const double total_len = b - a;
    double value = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (hi <= lo) continue;
        value += segment(ws, lo, hi, tol * ((hi - lo) / total_len));
    }
    result.value = value;
    result.error_estimate = ws.error;
    result.evaluations = ws.evaluations;
    return result;
}

}  // namespace walkwait
