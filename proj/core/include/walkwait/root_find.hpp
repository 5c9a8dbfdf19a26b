#pragma once

#include <functional>

namespace walkwait {

// Bisection on [lo, hi]. Requires f(lo)*f(hi) <= 0; narrows the bracket to
// width <= tol and returns its midpoint (or an endpoint that is exactly
// zero). Deterministic for identical inputs.
//
// Throws ValidationError("InvalidBracket") when lo >= hi or tol <= 0, and
// NoSignChange (carrying f(lo), f(hi)) when both endpoints have the same
// strict sign.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace walkwait
