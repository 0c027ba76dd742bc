#pragma once

#include <cstdint>
#include <optional>

#include "puretomo/errors.hpp"

namespace puretomo {

struct IntInterval {
    long long lower = 0;
    long long upper = 0;

    bool exact() const { return lower == upper; }
    bool operator==(const IntInterval& o) const { return lower == o.lower && upper == o.upper; }
};

// Number of 1-bits in d-1: the binary obstruction term in the
// basis-count bounds.
int alpha(unsigned long long d);

// Minimal number of rank-1 projective-collection elements that determine
// every pure state among all states.  Exact for d ≤ 7, an interval
// [4d-3-2α, 4d-3-α] beyond.
IntInterval m0(unsigned long long d);

// Whether 3d-2 elements can suffice, i.e. 3d-2 ≥ 4d-3-2α(d).  True only
// for d = 2 and d = 4.
bool feasible_3d_minus_2(unsigned long long d);

// Range for the pure-state-pair variant: exact at d = 2, 3; [10,13] at
// d = 4; [max(m0 lower, 3d-2), 4d-3] in general.
IntInterval m1_range(unsigned long long d);

// Everything above in one record, plus the reference counts 3d-2 and
// 4d-3 and, for d ≤ 7, the product c(d)·α(d) = 4d-3 - m0.
struct BoundsReport {
    unsigned long long d = 0;
    int alpha = 0;
    IntInterval m0;
    bool m0_exact = false;
    long long three_d_minus_2 = 0;
    long long four_d_minus_3 = 0;
    bool feasible_3d_minus_2 = false;
    IntInterval m1_range;
    std::optional<int> c_alpha;
};

BoundsReport bounds_report(unsigned long long d);

}  // namespace puretomo
