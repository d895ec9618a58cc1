#pragma once

#include <cstdint>
#include <vector>

#include "brc/bitstring.hpp"

namespace brc {

/// True iff some pair of break patterns with at most t cuts each makes the
/// two words produce identical fragment multisets. Exhaustive over all
/// pattern pairs with canonical multiset keys; requires |x| = |y| <= 16.
bool confusable(const BitString& x, const BitString& y, uint64_t t);

/// log2 C(n, t') - log2 n with t' = floor((ceil((t+1)/2) - 1) / 2), clamped
/// at zero from below: the counting bound any code surviving t breaks must
/// pay in redundancy bits. Requires 1 <= t < n.
double redundancy_lower_bound(uint64_t n, uint64_t t);

/// Word over a q-ary alphabet, symbols in [0, q).
using Word = std::vector<uint32_t>;

/// Symbol counts of a length-n word over q symbols: the invariant a
/// fragment multiset preserves under any number of breaks, so histograms
/// are exactly the decodable equivalence classes.
struct Histogram {
    uint32_t q = 0;
    uint64_t n = 0;
    std::vector<uint64_t> counts; // size q, sums to n

    /// Rank within the C(q+n-1, n) classes: the bar positions
    /// b_i = c_0 + ... + c_{i-1} + i - 1 form a (q-1)-subset of
    /// [0, n+q-2]; rank = sum C(b_i, i), the colex rank of that subset.
    uint64_t rank() const;
    static Histogram unrank(uint64_t classIndex, uint32_t q, uint64_t n);
};

/// C(q+n-1, n), the number of classes. Throws ParamError when the count
/// does not fit in 64 bits.
uint64_t histogram_class_count(uint32_t q, uint64_t n);

/// Canonical class representative: the sorted word (symbol 0 repeated
/// counts[0] times, then symbol 1, ...).
Word histogram_encode(uint64_t classIndex, uint32_t q, uint64_t n);

/// Counts symbols across all fragments and ranks the histogram; invariant
/// under breaks and fragment order by construction. Total fragment length
/// must equal n and every symbol must be below q.
uint64_t histogram_decode(const std::vector<Word>& frags, uint32_t q, uint64_t n);

} // namespace brc
