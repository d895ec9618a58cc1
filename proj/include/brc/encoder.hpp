#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "brc/bitstring.hpp"
#include "brc/gf.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"

namespace brc {

/// Ordered map from start position in y = m_0 . z to the packed L-bit value
/// at that position. Level 0 holds the marker-code occurrences; higher
/// levels add midpoint samples. Consecutive keys are always >= L apart.
using SignatureStore = std::map<uint64_t, uint64_t>;

/// Ordered map from a residual's start position (signature end, k+L) to its
/// padded L-bit value. Unpadded lengths are in [1, L-1].
using ResidualStore = std::map<uint64_t, uint64_t>;

struct AdjacencyTarget {
    uint64_t col = 0;    // marker-code rank of the successor signature
    uint64_t weight = 0; // start-to-start distance, in (L/2, 2^L)

    bool operator==(const AdjacencyTarget&) const = default;
};

/// Sparse successor matrix over marker-code ranks. A present row says "the
/// signature with this rank is followed, `weight` bits later, by the one
/// with rank `col`". The last signature's row is absent, as are all rows
/// whose codeword never occurs. Present entries form one simple path.
struct AdjacencyMatrix {
    uint64_t muSize = 0;
    std::map<uint64_t, AdjacencyTarget> rows;

    bool operator==(const AdjacencyMatrix&) const = default;
};

/// Rows keyed by the rank of the signature value at each store position;
/// each row points at the next signature in position order. Throws
/// ParamError on duplicate signature values (the input was not legit).
AdjacencyMatrix build_adjacency(const SignatureStore& sigs, const MuCode& mu);

/// Row as one GF(2^(2L)) element: col in the high L bits, weight in the low
/// L bits; the absent row is 0. Throws ParamError on weight 0 (with a
/// nonzero element) or on col/weight not fitting in L bits.
Elem compress_row(const std::optional<AdjacencyTarget>& row, uint32_t L);
std::optional<AdjacencyTarget> decompress_row(Elem e, uint32_t L);

/// Appends a single 1, then 0s up to length L. Injective on inputs shorter
/// than L; depad strips the padding exactly. Throws ParamError when the
/// input is too long (pad) or carries no 1 bit (depad).
BitString pad_residual(const BitString& s, uint32_t L);
BitString depad_residual(const BitString& padded);

struct LevelGrowth {
    /// Merged store after each level, snapshots[l-1] for level l; the
    /// back() is the final store, whose consecutive gaps are all in [L, 2L).
    std::vector<SignatureStore> snapshots;
    ResidualStore residuals;
};

/// Runs the midpoint-split recursion: numLevels passes over consecutive key
/// pairs (with a virtual end key at |y|), splitting pairs >= 2L apart at the
/// floor midpoint and recording padded gap bits for pairs strictly between L
/// and 2L apart. A final sweep records residuals for pairs created by the
/// last pass, so the residual set is exactly determined by the final store.
LevelGrowth grow_levels(const SignatureStore& level0, const BitString& y, const Params& p);

/// Everything the encoder derived on the way to the codeword; consumed by
/// tests and by the decode harness to cross-check intermediate state.
struct EncodeTrace {
    BitString y;
    SignatureStore level0;
    AdjacencyMatrix adjacency;
    std::vector<SignatureStore> snapshots;
    ResidualStore residuals;
    std::vector<BitString> redundancy; // redundancy[l-1] = u_l, uLen bits
};

/// Interleaves a redundancy string with its marker: chunks of L/2 bits, each
/// preceded by `marker`, no trailing marker. Output length 3 * |u|.
BitString instrument(const BitString& u, const BitString& marker, const Params& p);

/// Full encoding of a legit payload: codeword of length n laid out as
/// instrument(u_t) . ... . instrument(u_1) . m_0 . z. Throws ParamError when
/// z fails the legitimacy check. Deterministic; `trace` optionally receives
/// the intermediate state.
BitString encode(const BitString& z, const Params& p, const MuCode& mu, EncodeTrace* trace = nullptr);

} // namespace brc
