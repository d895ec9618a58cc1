#include "brc/channel.hpp"

#include <algorithm>
#include <set>

#include "brc/error.hpp"
#include "brc/rng.hpp"

namespace brc {

namespace {

void validate_pattern(const BitString& c, const BreakPattern& bp) {
    uint64_t prev = 0;
    for (uint64_t p : bp.positions) {
        if (p < 1 || p >= c.size()) throw ParamError("cut position out of range");
        if (p == prev) throw ParamError("duplicate cut position");
        if (p < prev) throw ParamError("cut positions must be strictly ascending");
        prev = p;
    }
}

// Unordered identical fragments are exactly what the decoder cannot tell
// apart, so the adversary proxy-scores a pattern by their pair count.
uint64_t duplicate_pairs(const FragmentMultiset& sorted) {
    uint64_t score = 0, run = 1;
    for (size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            ++run;
        } else {
            score += run * (run - 1) / 2;
            run = 1;
        }
    }
    if (!sorted.empty()) score += run * (run - 1) / 2;
    return score;
}

std::vector<uint64_t> sample_distinct(SplitMix64& rng, uint64_t lo, uint64_t hi, uint64_t want) {
    std::set<uint64_t> out;
    uint64_t range = hi - lo + 1;
    want = std::min(want, range);
    while (out.size() < want) out.insert(lo + rng.next() % range);
    return {out.begin(), out.end()};
}

} // namespace

std::vector<BitString> break_ordered(const BitString& c, const BreakPattern& pattern) {
    validate_pattern(c, pattern);
    std::vector<BitString> frags;
    frags.reserve(pattern.positions.size() + 1);
    uint64_t prev = 0;
    for (uint64_t p : pattern.positions) {
        frags.push_back(c.slice(prev, p - prev));
        prev = p;
    }
    frags.push_back(c.slice(prev, c.size() - prev));
    return frags;
}

FragmentMultiset break_at(const BitString& c, const BreakPattern& pattern) {
    FragmentMultiset frags = break_ordered(c, pattern);
    std::sort(frags.begin(), frags.end());
    return frags;
}

FragmentMultiset drop_short(const FragmentMultiset& frags, uint64_t threshold, const Params& p) {
    if (threshold > p.L) throw ParamError("drop threshold above L voids the recovery guarantee");
    FragmentMultiset kept;
    for (const BitString& f : frags)
        if (f.size() >= threshold) kept.push_back(f);
    return kept;
}

BreakPattern attack(std::string_view strategy, const BitString& c, const Params& p,
                    const MuCode& mu, uint64_t seed) {
    uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
    for (char ch : strategy) h = (h ^ uint64_t(uint8_t(ch))) * 0x100000001b3ull;
    SplitMix64 rng(h);

    BreakPattern bp;
    if (strategy == "uniform") {
        if (c.size() >= 2) bp.positions = sample_distinct(rng, 1, c.size() - 1, p.t);
        return bp;
    }
    if (strategy == "signature-target" || strategy == "marker-target" || strategy == "boundary-target") {
        if (c.size() != p.n) throw ParamError("this attack strategy needs a full codeword");
    }
    if (strategy == "signature-target") {
        BitString z = c.slice(p.info_offset() + p.L, p.m);
        auto hits = mu.scan(z);
        if (!hits.empty()) {
            for (uint64_t i : sample_distinct(rng, 0, hits.size() - 1, p.t)) {
                uint64_t q = p.info_offset() + p.L + hits[i].first;
                bp.positions.push_back(q + 1 + rng.next() % (p.L - 1));
            }
            std::sort(bp.positions.begin(), bp.positions.end());
        }
        return bp;
    }
    if (strategy == "marker-target") {
        for (uint64_t l = 1; l <= p.t; ++l) {
            uint64_t off = p.instrumented_offset(l);
            bp.positions.push_back(off + 1 + rng.next() % (p.instrumented_len() - 1));
        }
        std::sort(bp.positions.begin(), bp.positions.end());
        return bp;
    }
    if (strategy == "boundary-target") {
        uint64_t ctr = p.info_offset();
        uint64_t lo = ctr > 2 * p.L ? ctr - 2 * p.L + 1 : 1;
        uint64_t hi = std::min<uint64_t>(c.size() - 1, ctr + 2 * p.L);
        bp.positions = sample_distinct(rng, lo, hi, p.t);
        return bp;
    }
    if (strategy == "exhaustive-worst") {
        if (c.size() > 24) throw ParamError("exhaustive-worst requires a string of at most 24 bits");
        uint64_t maxCut = c.size() - 1;
        uint64_t bestScore = 0; // the empty pattern scores 0
        BreakPattern best;
        for (uint64_t k = 1; k <= std::min<uint64_t>(p.t, maxCut); ++k) {
            std::vector<uint64_t> idx(k);
            for (uint64_t j = 0; j < k; ++j) idx[j] = j + 1;
            while (true) {
                uint64_t s = duplicate_pairs(break_at(c, BreakPattern{idx}));
                if (s > bestScore) {
                    bestScore = s;
                    best.positions = idx;
                }
                size_t j = k;
                while (j > 0 && idx[j - 1] == maxCut - (k - j)) --j;
                if (j == 0) break;
                ++idx[j - 1];
                for (size_t jj = j; jj < k; ++jj) idx[jj] = idx[jj - 1] + 1;
            }
        }
        return best;
    }
    throw ParamError("unknown attack strategy");
}

} // namespace brc
