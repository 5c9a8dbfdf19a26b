#include "walkwait/root_find.hpp"

#include <cmath>

#include "walkwait/errors.hpp"

namespace walkwait {

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) {
        throw ValidationError("InvalidBracket", "find_root needs lo < hi");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("NonPositiveTolerance", "find_root needs tol > 0");
    }
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw NoSignChange(f_lo, f_hi, "f has the same sign at both bracket endpoints");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace walkwait
