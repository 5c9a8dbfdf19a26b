#include "walkwait/distribution.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "walkwait/errors.hpp"

namespace walkwait {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double format_guard(double x) {
    // Spec strings are for echoing, not exact round-trips of weird values.
    return std::isfinite(x) ? x : 0.0;
}

}  // namespace

std::uint64_t SeededRng::next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SeededRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SeededRng SeededRng::substream(std::uint64_t master, std::uint64_t index) {
    return SeededRng(mix64(master ^ mix64(index)));
}

ArrivalDistribution::ArrivalDistribution(Kind kind, double p0, double p1) : kind_(kind) {
    if (kind_ == Kind::Uniform) {
        a_ = p0;
        b_ = p1;
        lo_ = a_;
        hi_ = b_;
    } else {
        rate_ = p0;
        lo_ = 0.0;
        hi_ = std::numeric_limits<double>::infinity();
    }
}

ArrivalDistribution ArrivalDistribution::uniform(double a, double b) {
    if (!(a >= 0.0)) {
        throw ValidationError("NegativeSupport", "uniform lower endpoint must be >= 0");
    }
    if (!(b > a)) {
        throw ValidationError("EmptySupport", "uniform needs b > a");
    }
    return ArrivalDistribution(Kind::Uniform, a, b);
}

ArrivalDistribution ArrivalDistribution::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw ValidationError("NonPositiveRate", "exponential needs rate > 0");
    }
    return ArrivalDistribution(Kind::Exponential, rate, 0.0);
}

double ArrivalDistribution::pdf(double t) const {
    if (kind_ == Kind::Uniform) {
        return (t >= a_ && t <= b_) ? 1.0 / (b_ - a_) : 0.0;
    }
    return t >= 0.0 ? rate_ * std::exp(-rate_ * t) : 0.0;
}

double ArrivalDistribution::cdf(double t) const {
    if (kind_ == Kind::Uniform) {
        if (t <= a_) return 0.0;
        if (t >= b_) return 1.0;
        return (t - a_) / (b_ - a_);
    }
    if (t <= 0.0) return 0.0;
    return -std::expm1(-rate_ * t);
}

double ArrivalDistribution::quantile(double p) const {
    if (kind_ == Kind::Uniform) {
        return a_ + p * (b_ - a_);
    }
    return -std::log1p(-p) / rate_;
}

double ArrivalDistribution::quadrature_hi() const {
    if (kind_ == Kind::Uniform) return b_;
    return quantile(1.0 - 1e-12);
}

double ArrivalDistribution::shifted_pdf(double shift, double t) const {
    return pdf(t + shift);
}

double ArrivalDistribution::missed_mass(double shift) const {
    return cdf(shift);
}

double ArrivalDistribution::sample(SeededRng& rng) const {
    return quantile(rng.next_unit());
}

std::string ArrivalDistribution::spec_string() const {
    char buf[80];
    if (kind_ == Kind::Uniform) {
        std::snprintf(buf, sizeof buf, "uniform:%.12g,%.12g", format_guard(a_), format_guard(b_));
    } else {
        std::snprintf(buf, sizeof buf, "exp:%.12g", format_guard(rate_));
    }
    return buf;
}

ArrivalDistribution parse_distribution(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ParseError("ParseError", "distribution spec needs a ':' (got \"" + spec + "\")");
    }
    const std::string head = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);

    auto to_double = [&spec](const std::string& text) {
        const char* begin = text.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0') {
            throw ParseError("ParseError", "bad number in distribution spec \"" + spec + "\"");
        }
        return v;
    };

    if (head == "uniform") {
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw ParseError("ParseError", "uniform spec is uniform:<a>,<b>");
        }
        return ArrivalDistribution::uniform(to_double(args.substr(0, comma)),
                                            to_double(args.substr(comma + 1)));
    }
    if (head == "exp") {
        return ArrivalDistribution::exponential(to_double(args));
    }
    throw ParseError("ParseError", "unknown distribution kind \"" + head + "\" (use uniform or exp)");
}

}  // namespace walkwait
