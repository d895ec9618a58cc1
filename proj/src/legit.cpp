#include "brc/legit.hpp"

#include <unordered_map>

#include "brc/error.hpp"
#include "brc/rng.hpp"

namespace brc {

LegitReport check_legit(const BitString& z, const Params& p, const MuCode& mu) {
    if (z.size() != p.m) throw ParamError("payload length does not match m");
    const uint32_t L = p.L;
    std::vector<uint64_t> markerVals;
    for (const BitString& mk : mu.markers(p.t)) markerVals.push_back(mk.pack(0, L));

    LegitReport bad;
    bad.ok = false;
    std::unordered_map<uint64_t, uint64_t> firstSeen;
    firstSeen.reserve(z.size());
    const uint64_t mask = (L == 64) ? ~uint64_t(0) : ((uint64_t(1) << L) - 1);
    uint64_t window = 0;
    for (uint64_t i = 0; i < z.size(); ++i) {
        window = ((window << 1) | z[i]) & mask;
        if (i + 1 < L) continue;
        uint64_t start = i + 1 - L;
        for (uint32_t idx = 0; idx < markerVals.size(); ++idx)
            if (window == markerVals[idx]) {
                bad.kind = LegitReport::Kind::MarkerPresent;
                bad.position = start;
                bad.markerIndex = idx;
                return bad;
            }
        auto [it, inserted] = firstSeen.try_emplace(window, start);
        if (!inserted && start - it->second >= L) {
            bad.kind = LegitReport::Kind::DuplicateWindow;
            bad.position = it->second;
            bad.otherPosition = start;
            return bad;
        }
    }

    if (p.W <= p.m) {
        auto sigs = mu.scan(z);
        size_t si = 0;
        for (uint64_t i = 0; i + p.W <= p.m; ++i) {
            while (si < sigs.size() && sigs[si].first < i) ++si;
            if (si == sigs.size() || sigs[si].first + L > i + p.W) {
                bad.kind = LegitReport::Kind::WindowNoSignature;
                bad.position = i;
                return bad;
            }
        }
    }
    return LegitReport{};
}

SampleResult sample_legit(const Params& p, const MuCode& mu, uint64_t seed,
                          uint32_t attemptCap) {
    SplitMix64 rng(seed);
    for (uint32_t attempt = 1; attempt <= attemptCap; ++attempt) {
        BitString z;
        uint64_t word = 0;
        for (uint64_t i = 0; i < p.m; ++i) {
            if (i % 64 == 0) word = rng.next();
            z.push_back(uint8_t(word & 1));
            word >>= 1;
        }
        if (check_legit(z, p, mu).ok) return {std::move(z), attempt};
    }
    throw ParamError("legit sampling gave up; parameters outside the sampling regime");
}

GapStats gap_stats(const BitString& z, const Params& p, const MuCode& mu) {
    GapStats out;
    auto add = [&](uint64_t gap) {
        ++out.histogram[gap];
        if (gap > out.maxGap) out.maxGap = gap;
    };
    auto sigs = mu.scan(z);
    if (sigs.empty()) {
        add(z.size());
        return out;
    }
    add(sigs.front().first);
    for (size_t j = 1; j < sigs.size(); ++j)
        add(sigs[j].first - sigs[j - 1].first - p.L);
    add(z.size() - sigs.back().first - p.L);
    return out;
}

} // namespace brc
