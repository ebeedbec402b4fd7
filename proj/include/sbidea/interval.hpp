#pragma once

#include <cmath>

#include "sbidea/error.hpp"

namespace sbidea {

// Absolute tolerance for endpoint comparisons. Data magnitudes in this domain
// are >= 1, so an absolute 1e-9 is far below any meaningful difference.
inline constexpr double kTau = 1e-9;

// Closed bounded real interval [lo, hi]. Degenerate intervals (lo == hi)
// model crisp numbers; membership in the nonnegative family additionally
// requires lo >= 0. Construction with lo > hi is rejected here — input
// normalization (endpoint swapping) is the dataset layer's job.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (std::isnan(lo_) || std::isnan(hi_) || lo_ > hi_)
            throw ValidationError("invalid interval endpoints");
    }

    bool degenerate() const { return lo == hi; }
    bool nonneg() const { return lo >= 0.0; }
    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    bool operator==(const Interval&) const = default;
};

inline Interval add(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval sub(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Interval scale(double k, Interval a) {
    return k >= 0.0 ? Interval{k * a.lo, k * a.hi} : Interval{k * a.hi, k * a.lo};
}

// General interval product. The assessment models only ever need
// scalar * interval; this exists to complete the arithmetic kit.
Interval mul(Interval a, Interval b);

// Generalized Hukuhara difference: the interval C solving a = b + C or
// b = a + (-1)C. Always exists; always a subset of sub(a, b).
inline Interval gh_diff(Interval a, Interval b) {
    double d1 = a.lo - b.lo, d2 = a.hi - b.hi;
    return {d1 < d2 ? d1 : d2, d1 < d2 ? d2 : d1};
}

// LU partial order: a precedes b when both endpoints do.
inline bool leq(Interval a, Interval b) { return a.lo <= b.lo && a.hi <= b.hi; }
inline bool lt(Interval a, Interval b) { return a.lo < b.lo && a.hi < b.hi; }
inline bool lneq(Interval a, Interval b) {
    return leq(a, b) && (a.lo < b.lo || a.hi < b.hi);
}

inline bool approx_equal(Interval a, Interval b, double tol = kTau) {
    return std::fabs(a.lo - b.lo) <= tol && std::fabs(a.hi - b.hi) <= tol;
}

// Lower/upper slack pair. Exactly one of the two may be nonzero; the zero one
// is [0,0]. sl measures how far the lower configuration moves, su the upper.
struct SlackPair {
    Interval sl;
    Interval su;
};

// Constructive decomposition of a ⪯ b into complementary slacks with
// a + sl = b - su. Requires a ⪯ b (both nonnegative in intended use).
// The branch picks whichever gH-difference orientation keeps the other
// slack at zero: widening gap goes to sl, narrowing gap to su.
SlackPair slack_decompose(Interval a, Interval b);

} // namespace sbidea
