#pragma once

#include <cstdint>

namespace brc {

/// Everything the encoder and decoder must agree on, derived from
/// (m, t, c) alone. All sizes are in bits; all offsets are 0-based.
///
/// Layout of a codeword (length n):
///   [ instr(u_t) | ... | instr(u_1) | m_0 | z ]
/// where each redundancy string u_l (uLen bits) is interleaved with its
/// marker m_l in chunks of L/2 bits, tripling its footprint to 3*uLen.
///
/// Layout of one redundancy string u_l:
///   [ 4 adjacency parities (2L each) | 2 parities per level (L each)
///     x numLevels | 3 residual parities (L each) ]
struct Params {
    uint64_t m = 0;        // payload length, a power of two
    uint64_t t = 0;        // break budget
    uint32_t c = 0;        // signature length multiplier, >= 3
    uint32_t log2m = 0;
    uint32_t beta = 32;    // window slack constant
    uint32_t L = 0;        // signature length c*log2(m), even
    uint64_t W = 0;        // window length 2*beta*c*log2(m)^2 + L - 1
    uint32_t numLevels = 0;// ceil(log2(2*beta*log2(m)))
    uint64_t uLen = 0;     // (11 + 2*numLevels) * L
    uint64_t n = 0;        // m + L + 3*t*uLen
    uint32_t fieldAdj = 0; // GF(2^(2L)) for adjacency rows
    uint32_t fieldSig = 0; // GF(2^L) for signatures and residuals
    uint64_t muSize = 0;   // codeword count of the length-L marker code

    uint64_t redundancy_bits() const { return 3 * t * uLen; }
    uint64_t instrumented_len() const { return 3 * uLen; }
    /// Offset of m_0 within the codeword; z follows at info_offset()+L.
    uint64_t info_offset() const { return redundancy_bits(); }
    /// Start of instr(u_l) within the codeword, l in [1, t].
    uint64_t instrumented_offset(uint64_t l) const { return (t - l) * instrumented_len(); }
    uint64_t chunk_bits() const { return L / 2; }
    uint64_t chunk_count() const { return 2 * uLen / L; }
    uint64_t marker_period() const { return 3 * L / 2; }

    // Bit slices within a redundancy string u_l.
    uint64_t adj_parity_offset() const { return 0; }
    uint64_t adj_parity_bits() const { return 8ull * L; }
    uint64_t level_parity_offset(uint32_t level) const { return 8ull * L + uint64_t(level - 1) * 2 * L; }
    uint64_t level_parity_bits() const { return 2ull * L; }
    uint64_t residual_parity_offset() const { return 8ull * L + uint64_t(numLevels) * 2 * L; }
    uint64_t residual_parity_bits() const { return 3ull * L; }
};

/// Derives and validates the parameter set. Throws ParamError with a
/// distinct diagnostic per violated constraint.
Params derive_params(uint64_t m, uint64_t t, uint32_t c);

} // namespace brc
