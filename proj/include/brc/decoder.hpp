#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "brc/bitstring.hpp"
#include "brc/channel.hpp"
#include "brc/encoder.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"

namespace brc {

/// y' = m_0 . z with unknowns. Writes must agree with already-known cells;
/// a disagreement means the evidence is inconsistent and raises
/// DecodeConflict. In harness mode every write is also checked against the
/// ground truth, so a wrong-but-consistent write cannot slip through tests.
class PartialString {
public:
    static constexpr uint8_t Unknown = 2;

    explicit PartialString(size_t n, const BitString* truth = nullptr);

    size_t size() const { return cells_.size(); }
    bool known(size_t i) const { return cells_[i] != Unknown; }
    uint8_t get(size_t i) const { return cells_[i]; }
    size_t unknown_count() const { return unknown_; }

    void write(size_t i, uint8_t bit);
    void write_str(size_t pos, const BitString& s);

    /// True iff writing s at pos would stay in bounds and agree with every
    /// known cell. A placement probe; never mutates.
    bool compatible(size_t pos, const BitString& s) const;

    /// Requires zero unknowns.
    BitString to_bits() const;

private:
    std::vector<uint8_t> cells_;
    size_t unknown_;
    const BitString* truth_;
};

struct FragmentClassification {
    std::vector<BitString> rFragments;
    std::vector<BitString> zFragments;
    std::vector<BitString> discarded;
};

/// Splits any fragment containing m_0 into the part before it and the part
/// starting with it, then partitions: fragments containing a marker
/// m_1..m_t are redundancy carriers; of the rest, those at least 3L long or
/// containing a codeword occurrence are information carriers; everything
/// else is discarded (and its bits recovered by repair).
FragmentClassification split_and_classify(const FragmentMultiset& frags, const Params& p,
                                          const MuCode& mu);

/// Rows from consecutive codeword occurrences within single fragments.
/// Within one fragment consecutive occurrences really are consecutive in y,
/// so every extracted row is exact; severed pairs are simply absent.
/// Conflicting duplicate rows mean out-of-model input: DecodeConflict.
AdjacencyMatrix extract_approx_adjacency(const std::vector<BitString>& zFrags, const Params& p,
                                         const MuCode& mu);

/// Recovers u_l for every l whose full marker run survived in one fragment:
/// chunk_count() occurrences of m_l spaced exactly 3L/2 apart, each chunk
/// complete. Partial runs yield nothing. Keys are string indices in [1, t].
std::map<uint64_t, BitString> extract_redundancy_strings(const std::vector<BitString>& rFrags,
                                                         const Params& p, const MuCode& mu);

/// Errors-and-erasures decode of the compressed row vector: present rows
/// are trusted symbols, absent rows implicit zeros (errors when wrong),
/// missing redundancy strings erase their four parity slots. Returns the
/// exact matrix or throws DecodeFailure (budget exceeded) / DecodeConflict.
AdjacencyMatrix repair_adjacency(const AdjacencyMatrix& approx,
                                 const std::map<uint64_t, BitString>& rStrings, const Params& p);

struct DecodeStats {
    uint64_t discardedFragments = 0;
    uint64_t missingStrings = 0;        // redundancy strings not recovered
    uint64_t adjacencyRepaired = 0;     // rows absent from the approximation
    std::vector<uint64_t> levelErasures; // per level, message symbols erased
    uint64_t residualErasures = 0;
    uint64_t leftoverFragments = 0;     // never placed, verified as substrings
};

struct DecodeOptions {
    /// Harness-only ground truth (m_0 . z). When set, every write into the
    /// partial string is checked against it.
    const BitString* truthY = nullptr;
    DecodeStats* stats = nullptr;
};

/// Full pipeline: classify, extract, repair the adjacency matrix, walk it
/// to place level-0 signatures, repair signature levels top-down with
/// erasure decoding while affixing fragments, repair residuals, and return
/// the exact payload z. Throws DecodeFailure when the evidence cannot be
/// explained within t breaks, DecodeConflict when it is self-contradictory,
/// ParamError on malformed input (total length beyond n).
BitString decode(const FragmentMultiset& frags, const Params& p, const MuCode& mu,
                 const DecodeOptions& opt = {});

} // namespace brc
