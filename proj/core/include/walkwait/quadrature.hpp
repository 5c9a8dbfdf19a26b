#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace walkwait {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;  // <= requested tolerance on success
    std::int64_t evaluations = 0;
};

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
//
// Breakpoints mark known kinks or jumps of f (distribution support edges);
// the interval is split there first and each smooth piece is refined
// independently, with the tolerance budget shared by length. Segment
// endpoints are sampled a hair inside the segment, so f's value exactly at a
// jump never matters; only the one-sided limits do. Breakpoints outside
// (a, b) are ignored. Throws NumericsError("MaxDepthExceeded") if the
// tolerance is unattainable within a recursion depth of 50.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-10, const std::vector<double>& breakpoints = {});

}  // namespace walkwait
