#pragma once

// Shift values at which hop-count ties between two weight atoms change.
// For atoms r < s and a family index l >= 1, the base index k is the
// unique integer with (k-1)(s-r)/(2l) <= r - r0 < k(s-r)/(2l) and the
// family is b_m = (k+m)(s-r)/(2l) - r, m = 0..m_max. Each b_m makes a
// (k+m)-step stretch of s-edges cost exactly the same as a (k+m+2l)-step
// stretch of r-edges:
//     (k+m)(s + b_m) = (k+m+2l)(r + b_m).
// The union over l becomes dense; with every family complete on a range,
// consecutive gaps are at most (s-r)/(2*l_max).

#include <algorithm>
#include <vector>

#include "environment.hpp"

namespace fppkit {

struct SingularityEntry {
    int64_t l = 0, k = 0, m = 0;
    Rat b;
};

struct SingularitySet {
    Rat r, s, r0;
    int64_t l_max = 0, m_max = 0;
    std::vector<SingularityEntry> entries;  // sorted by b, exact duplicates removed
    bool identity_ok = true;                // exact check of the tie identity, all entries
};

inline SingularitySet enumerate_singularity_shifts(const Rat& r, const Rat& s, const Rat& r0,
                                                   int64_t l_max, int64_t m_max) {
    if (!(r < s)) throw PreconditionError("enumerate_singularity_shifts: need r < s");
    if (r0 > r) throw PreconditionError("enumerate_singularity_shifts: need r0 <= r");
    if (l_max < 1 || m_max < 0)
        throw PreconditionError("enumerate_singularity_shifts: need l_max >= 1, m_max >= 0");
    SingularitySet set;
    set.r = r;
    set.s = s;
    set.r0 = r0;
    set.l_max = l_max;
    set.m_max = m_max;
    for (int64_t l = 1; l <= l_max; ++l) {
        Rat step = (s - r) / Rat(2 * l);
        int64_t k = ((r - r0) / step).floor() + 1;
        for (int64_t m = 0; m <= m_max; ++m) {
            SingularityEntry e;
            e.l = l;
            e.k = k;
            e.m = m;
            e.b = Rat(k + m) * step - r;
            Rat lhs = Rat(k + m) * (s + e.b);
            Rat rhs = Rat(k + m + 2 * l) * (r + e.b);
            if (lhs != rhs) set.identity_ok = false;
            set.entries.push_back(std::move(e));
        }
    }
    std::sort(set.entries.begin(), set.entries.end(),
              [](const SingularityEntry& a, const SingularityEntry& b) {
                  if (a.b != b.b) return a.b < b.b;
                  if (a.l != b.l) return a.l < b.l;
                  return a.m < b.m;
              });
    set.entries.erase(std::unique(set.entries.begin(), set.entries.end(),
                                  [](const SingularityEntry& a, const SingularityEntry& b) {
                                      return a.b == b.b;
                                  }),
                      set.entries.end());
    return set;
}

// Largest gap between consecutive shift values on [lo, hi]; the interval
// endpoints anchor the first and last gaps.
inline Rat max_gap(const SingularitySet& set, const Rat& lo, const Rat& hi) {
    Rat best(0), prev = lo;
    for (const SingularityEntry& e : set.entries) {
        if (e.b < lo) continue;
        if (e.b > hi) break;
        Rat gap = e.b - prev;
        if (gap > best) best = gap;
        prev = e.b;
    }
    Rat tail = hi - prev;
    if (tail > best) best = tail;
    return best;
}

} // namespace fppkit
