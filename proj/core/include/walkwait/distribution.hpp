#pragma once

#include <cstdint>
#include <string>

namespace walkwait {

// Deterministic 64-bit generator (splitmix64). Identical seeds produce
// identical draw streams within one build; substreams derived from
// (master seed, index) are what make chunked Monte Carlo runs independent
// of chunk and thread count.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    // Uniform draw in [0, 1), 53-bit resolution.
    double next_unit();

    // Stream for one unit of work, fully determined by (master, index).
    static SeededRng substream(std::uint64_t master, std::uint64_t index);

private:
    std::uint64_t state_;
};

// Law of the bus arrival time at stop 1. Two concrete families: uniform on
// [a, b] (the classic headway window) and exponential with a given rate.
// Immutable and freely shareable.
class ArrivalDistribution {
public:
    enum class Kind { Uniform, Exponential };

    static ArrivalDistribution uniform(double a, double b);
    static ArrivalDistribution exponential(double rate);

    Kind kind() const { return kind_; }

    double pdf(double t) const;
    double cdf(double t) const;        // clamped to [0, 1]
    double quantile(double p) const;   // inverse cdf, p in [0, 1)

    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }  // +inf for exponential

    // Finite upper integration limit: the support end, or for unbounded
    // supports the 1 - 1e-12 quantile.
    double quadrature_hi() const;

    // Density of the waiting time at stop 2 for a walker who set out when
    // the clock started: pdf(t + shift). Sub-normalized; the missing mass is
    // missed_mass(shift) (buses that passed stop 2 before the walker got
    // there), so this is deliberately a view and not a distribution.
    double shifted_pdf(double shift, double t) const;

    // cdf(shift): probability the bus clears stop 2 before the walker
    // arrives; equals 1 minus the total mass of shifted_pdf.
    double missed_mass(double shift) const;

    // One inverse-CDF draw, consuming exactly one rng step.
    double sample(SeededRng& rng) const;

    // Round-trippable form: "uniform:<a>,<b>" or "exp:<rate>".
    std::string spec_string() const;

private:
    ArrivalDistribution(Kind kind, double p0, double p1);

    Kind kind_;
    double a_ = 0.0;     // uniform lower endpoint
    double b_ = 0.0;     // uniform upper endpoint
    double rate_ = 0.0;  // exponential rate
    double lo_ = 0.0;
    double hi_ = 0.0;
};

// Parses the CLI/config grammar: `uniform:<a>,<b>` | `exp:<rate>`.
ArrivalDistribution parse_distribution(const std::string& spec);

}  // namespace walkwait
