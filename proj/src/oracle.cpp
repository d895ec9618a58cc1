#include "brc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

#include "brc/error.hpp"

namespace brc {

namespace {

// Exact while the value fits in 64 bits, UINT64_MAX past that; monotone in
// a, so usable inside binary searches without overflow surprises.
uint64_t binom_sat(uint64_t a, uint64_t b) {
    if (b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (uint64_t i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i; // exact: C(a-b+i, i) is an integer
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return uint64_t(r);
}

// Cut patterns as bitmasks over positions 1..n-1 (bit i-1 = cut after bit
// i), at most t cuts. Memoized per (n, t); n <= 16 keeps this tiny.
const std::vector<uint32_t>& cut_patterns(uint32_t n, uint32_t t) {
    thread_local std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> cache;
    auto [it, inserted] = cache.try_emplace({n, t});
    if (inserted) {
        uint32_t total = n == 0 ? 1 : uint32_t(1) << (n - 1);
        for (uint32_t mask = 0; mask < total; ++mask)
            if (uint32_t(std::popcount(mask)) <= t) it->second.push_back(mask);
    }
    return it->second;
}

std::string multiset_key(const BitString& x, uint32_t mask) {
    std::vector<std::string> frags;
    size_t start = 0;
    for (size_t cut = 1; cut < x.size(); ++cut)
        if (mask & (uint32_t(1) << (cut - 1))) {
            frags.push_back(x.slice(start, cut - start).to_string());
            start = cut;
        }
    frags.push_back(x.slice(start, x.size() - start).to_string());
    std::sort(frags.begin(), frags.end());
    std::string key;
    for (const std::string& f : frags) {
        key += f;
        key += '|';
    }
    return key;
}

} // namespace

bool confusable(const BitString& x, const BitString& y, uint64_t t) {
    if (x.size() != y.size()) throw ParamError("words must have equal length");
    if (x.size() > 16) throw ParamError("length cap exceeded");
    if (x.empty()) return true;

    uint32_t n = uint32_t(x.size());
    uint32_t cuts = uint32_t(std::min<uint64_t>(t, n - 1));
    const std::vector<uint32_t>& masks = cut_patterns(n, cuts);

    std::unordered_set<std::string> xKeys;
    xKeys.reserve(masks.size() * 2);
    for (uint32_t mask : masks) xKeys.insert(multiset_key(x, mask));
    for (uint32_t mask : masks)
        if (xKeys.count(multiset_key(y, mask))) return true;
    return false;
}

double redundancy_lower_bound(uint64_t n, uint64_t t) {
    if (t < 1 || t >= n) throw ParamError("require 1 <= t < n");
    uint64_t tp = ((t + 2) / 2 - 1) / 2; // ceil((t+1)/2) = (t+2)/2
    double l2c = (std::lgamma(double(n) + 1) - std::lgamma(double(tp) + 1) -
                  std::lgamma(double(n - tp) + 1)) /
                 std::log(2.0);
    double bound = l2c - std::log2(double(n));
    return bound > 0 ? bound : 0.0;
}

uint64_t histogram_class_count(uint32_t q, uint64_t n) {
    if (q == 0) throw ParamError("alphabet must be non-empty");
    uint64_t count = binom_sat(n + q - 1, n);
    if (count == UINT64_MAX) throw ParamError("class count does not fit in 64 bits");
    return count;
}

uint64_t Histogram::rank() const {
    if (q == 0 || counts.size() != q) throw ParamError("histogram shape mismatch");
    uint64_t sum = 0;
    for (uint64_t c : counts) sum += c;
    if (sum != n) throw ParamError("histogram counts must sum to n");

    // Each term is at most the final rank, which fits whenever the class
    // count does, so saturation cannot trigger on a valid histogram.
    uint64_t r = 0, prefix = 0;
    for (uint32_t i = 1; i < q; ++i) {
        prefix += counts[i - 1];
        r += binom_sat(prefix + i - 1, i);
    }
    return r;
}

Histogram Histogram::unrank(uint64_t classIndex, uint32_t q, uint64_t n) {
    if (classIndex >= histogram_class_count(q, n)) throw ParamError("class index out of range");
    Histogram h{q, n, std::vector<uint64_t>(q, 0)};
    if (q == 1) {
        h.counts[0] = n;
        return h;
    }

    std::vector<uint64_t> bars(q); // bars[i] for i in [1, q-1]
    uint64_t rem = classIndex;
    for (uint32_t i = q - 1; i >= 1; --i) {
        // Largest s in [i-1, n+q-2] with C(s, i) <= rem; C(i-1, i) = 0.
        uint64_t lo = i - 1, hi = n + q - 2;
        while (lo < hi) {
            uint64_t mid = hi - (hi - lo) / 2;
            if (binom_sat(mid, i) <= rem)
                lo = mid;
            else
                hi = mid - 1;
        }
        bars[i] = lo;
        rem -= binom_sat(lo, i);
    }
    if (rem != 0) throw std::logic_error("histogram unrank leftover");

    h.counts[0] = bars[1];
    for (uint32_t i = 2; i < q; ++i) h.counts[i - 1] = bars[i] - bars[i - 1] - 1;
    h.counts[q - 1] = n + q - 2 - bars[q - 1];
    return h;
}

Word histogram_encode(uint64_t classIndex, uint32_t q, uint64_t n) {
    Histogram h = Histogram::unrank(classIndex, q, n);
    Word w;
    w.reserve(n);
    for (uint32_t s = 0; s < q; ++s)
        for (uint64_t k = 0; k < h.counts[s]; ++k) w.push_back(s);
    return w;
}

uint64_t histogram_decode(const std::vector<Word>& frags, uint32_t q, uint64_t n) {
    if (q == 0) throw ParamError("alphabet must be non-empty");
    Histogram h{q, n, std::vector<uint64_t>(q, 0)};
    uint64_t total = 0;
    for (const Word& f : frags)
        for (uint32_t s : f) {
            if (s >= q) throw ParamError("fragment symbol outside the alphabet");
            ++h.counts[s];
            ++total;
        }
    if (total != n) throw ParamError("fragments must carry exactly n symbols");
    return h.rank();
}

} // namespace brc
