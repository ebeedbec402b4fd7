#include "sbidea/interval.hpp"

#include <algorithm>

namespace sbidea {

Interval mul(Interval a, Interval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

SlackPair slack_decompose(Interval a, Interval b) {
    if (!leq(a, b))
        throw PrecedenceViolation("slack_decompose requires a ⪯ b");
    Interval d = gh_diff(b, a);
    // d.lo can dip a hair below zero from rounding; slacks are nonnegative.
    d = {std::max(0.0, d.lo), std::max(0.0, d.hi)};
    if (b.lo - a.lo <= b.hi - a.hi)
        return {d, Interval{0.0, 0.0}};
    return {Interval{0.0, 0.0}, d};
}

} // namespace sbidea
