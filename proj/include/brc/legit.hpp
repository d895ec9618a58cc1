#pragma once

#include <cstdint>
#include <map>

#include "brc/bitstring.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"

namespace brc {

/// Outcome of the legitimacy test. On failure, exactly one violation is
/// reported: marker and duplicate violations are found by a single pass over
/// window start positions, and only if that pass is clean are signature-free
/// windows searched, again in start order.
struct LegitReport {
    enum class Kind { None, WindowNoSignature, DuplicateWindow, MarkerPresent };
    bool ok = true;
    Kind kind = Kind::None;
    uint64_t position = 0;      // window start (first occurrence for duplicates)
    uint64_t otherPosition = 0; // second occurrence, DuplicateWindow only
    uint32_t markerIndex = 0;   // MarkerPresent only
};

/// A payload is legit when (I) every full W-bit window contains a complete
/// signature (vacuous while W exceeds m), (II) no two non-overlapping L-bit
/// windows coincide, and (III) no marker occurs anywhere.
LegitReport check_legit(const BitString& z, const Params& p, const MuCode& mu);

struct SampleResult {
    BitString z;
    uint32_t attempts = 0; // draws including the successful one
};

/// Rejection sampling of a legit payload, deterministic in the seed. Bits
/// are drawn LSB-first from successive 64-bit generator words. Throws after
/// attemptCap consecutive rejections.
SampleResult sample_legit(const Params& p, const MuCode& mu, uint64_t seed,
                          uint32_t attemptCap = 1000);

struct GapStats {
    uint64_t maxGap = 0;
    std::map<uint64_t, uint64_t> histogram; // gap length -> count
};

/// Lengths of the signature-free stretches of z: before the first signature,
/// strictly between consecutive ones, and after the last. For a legit z the
/// maximum stays below 2*beta*c*log2(m)^2.
GapStats gap_stats(const BitString& z, const Params& p, const MuCode& mu);

} // namespace brc
