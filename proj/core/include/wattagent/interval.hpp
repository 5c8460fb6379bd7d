#pragma once

#include <span>

namespace wattagent {

// Closed nonnegative interval [lo, hi]. A point estimate is stored as lo == hi.
//
// Everything downstream (token counts, energies, emissions) is a nonnegative
// physical quantity, so this type rejects negative bounds at construction and
// the arithmetic below only covers what the energy calculus needs: addition,
// scaling by a nonnegative factor, and multiplication of nonnegative intervals.
struct Interval {
    double lo{0.0};
    double hi{0.0};

    Interval() = default;
    Interval(double lower, double upper);

    static Interval point(double value) { return Interval(value, value); }

    bool is_point() const { return lo == hi; }
    double width() const { return hi - lo; }
    bool contains(double value) const { return lo <= value && value <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Componentwise sum; the empty list sums to [0, 0].
Interval interval_sum(std::span<const Interval> terms);

// [lo*factor, hi*factor]; factor must be finite and >= 0.
Interval interval_scale(const Interval& value, double factor);

// [a.lo*b.lo, a.hi*b.hi]; valid because both operands are nonnegative.
Interval interval_mul(const Interval& a, const Interval& b);

} // namespace wattagent
