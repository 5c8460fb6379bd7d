#include "wattagent/interval.hpp"

#include <cmath>
#include <string>

#include "wattagent/errors.hpp"

namespace wattagent {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
}

} // namespace

Interval::Interval(double lower, double upper) : lo(lower), hi(upper) {
    require_finite(lower, "interval lower bound");
    require_finite(upper, "interval upper bound");
    if (lower > upper) {
        throw ValidationError("interval lower bound " + std::to_string(lower) +
                              " exceeds upper bound " + std::to_string(upper));
    }
    if (lower < 0.0) {
        throw ValidationError("interval bounds must be nonnegative, got lower bound " +
                              std::to_string(lower));
    }
}

Interval interval_sum(std::span<const Interval> terms) {
    double lo = 0.0;
    double hi = 0.0;
    for (const Interval& term : terms) {
        lo += term.lo;
        hi += term.hi;
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ValidationError("interval sum overflowed to a non-finite value");
    }
    return Interval(lo, hi);
}

Interval interval_scale(const Interval& value, double factor) {
    require_finite(factor, "scale factor");
    if (factor < 0.0) {
        throw ValidationError("scale factor must be nonnegative, got " + std::to_string(factor));
    }
    return Interval(value.lo * factor, value.hi * factor);
}

Interval interval_mul(const Interval& a, const Interval& b) {
    return Interval(a.lo * b.lo, a.hi * b.hi);
}

} // namespace wattagent
