#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "brc/bitstring.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"

namespace brc {

/// Cut positions, strictly ascending. A cut at position p falls after the
/// p-th bit, splitting the first p bits from the rest; valid positions are
/// [1, n-1]. The break budget t is the caller's contract, not this type's.
struct BreakPattern {
    std::vector<uint64_t> positions;

    bool operator==(const BreakPattern&) const = default;
};

/// Canonical storage for an unordered fragment collection: sorted
/// lexicographically. The true order is what the adversary destroyed.
using FragmentMultiset = std::vector<BitString>;

/// Fragments in their original order (harness-only knowledge; the decoder
/// must never see this). Throws ParamError on out-of-range, duplicate, or
/// unsorted cuts. k cuts yield exactly k+1 fragments.
std::vector<BitString> break_ordered(const BitString& c, const BreakPattern& pattern);

/// The multiset the decoder actually receives: break_ordered, sorted.
FragmentMultiset break_at(const BitString& c, const BreakPattern& pattern);

/// Removes every fragment shorter than `threshold` bits. The construction
/// only guarantees recovery for losses below the signature length, so
/// threshold > L is rejected.
FragmentMultiset drop_short(const FragmentMultiset& frags, uint64_t threshold, const Params& p);

/// Named adversaries, all deterministic in (strategy, c, seed):
///   uniform          t cuts drawn without replacement from [1, n-1]
///   signature-target one cut strictly inside each of up to t distinct
///                    level-0 signatures of the payload
///   marker-target    one cut strictly inside each instrumented redundancy
///                    string, killing up to t of them
///   boundary-target  t cuts clustered within 2L bits of the m_0 boundary
///   exhaustive-worst full enumeration over all patterns of up to t cuts
///                    (|c| <= 24 only), maximizing indistinguishable
///                    fragment pairs; ties break to fewest cuts, then
///                    lexicographically smallest positions
/// Throws ParamError on an unknown strategy or an out-of-regime input.
BreakPattern attack(std::string_view strategy, const BitString& c, const Params& p,
                    const MuCode& mu, uint64_t seed);

} // namespace brc
