#include "puretomo/bounds.hpp"

#include <bit>

namespace puretomo {

namespace {

void check_dim(unsigned long long d) {
    if (d < 2) throw BadParams("bounds are defined for d >= 2");
    // 4d-3 must stay inside long long.
    if (d > (1ull << 61)) throw RangeError("dimension too large for the bound arithmetic");
}

// Exact minimal counts for small dimensions, d = 2..7.
constexpr long long kSmallM0[] = {4, 8, 10, 16, 18, 23};

}  // namespace

int alpha(unsigned long long d) {
    check_dim(d);
    return std::popcount(d - 1);
}

IntInterval m0(unsigned long long d) {
    check_dim(d);
    if (d <= 7) {
        const long long v = kSmallM0[d - 2];
        return {v, v};
    }
    const long long a = alpha(d);
    const long long base = 4 * static_cast<long long>(d) - 3;
    return {base - 2 * a, base - a};
}

bool feasible_3d_minus_2(unsigned long long d) {
    check_dim(d);
    // 3d-2 elements can only work if the lower bound allows them.
    return 3 * static_cast<long long>(d) - 2 >= m0(d).lower;
}

IntInterval m1_range(unsigned long long d) {
    check_dim(d);
    if (d == 2) return {4, 4};
    if (d == 3) return {8, 8};
    if (d == 4) return {10, 13};
    const long long lo = std::max(m0(d).lower, 3 * static_cast<long long>(d) - 2);
    return {lo, 4 * static_cast<long long>(d) - 3};
}

BoundsReport bounds_report(unsigned long long d) {
    check_dim(d);
    BoundsReport r;
    r.d = d;
    r.alpha = alpha(d);
    r.m0 = m0(d);
    r.m0_exact = r.m0.exact();
    r.three_d_minus_2 = 3 * static_cast<long long>(d) - 2;
    r.four_d_minus_3 = 4 * static_cast<long long>(d) - 3;
    r.feasible_3d_minus_2 = feasible_3d_minus_2(d);
    r.m1_range = m1_range(d);
    if (r.m0_exact) {
        // For the exactly known dimensions the product c(d)·α(d) is just
        // the gap 4d-3 - m0; c itself has no formula beyond these, so
        // only the product is ever reported.
        r.c_alpha = static_cast<int>(r.four_d_minus_3 - r.m0.lower);
    }
    return r;
}

}  // namespace puretomo
