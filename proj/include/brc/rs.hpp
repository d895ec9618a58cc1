#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "brc/gf.hpp"

namespace brc {

/// Systematic Reed-Solomon code over GF(2^w), remainder form. Message symbol
/// j is the coefficient of x^(parityCount+j) in the codeword polynomial,
/// parity symbol i the coefficient of x^(parityCount-1-i), and the codeword
/// polynomial is divisible by the generator, whose roots are
/// alpha^1..alpha^parityCount.
struct RsCode {
    const FieldSpec* field = nullptr;
    uint64_t msgLen = 0;
    uint32_t parityCount = 0;
    std::vector<Elem> generator;          // coefficient i is the degree-i term; monic
    std::vector<std::vector<Elem>> xPow2; // x^(2^i) mod generator, covers all positions
};

/// Message with only the nonzero symbols listed; absent positions are zero.
struct SparseMessage {
    uint64_t msgLen = 0;
    std::vector<std::pair<uint64_t, Elem>> entries; // ascending positions, nonzero values
};

/// Received word. Message positions not listed and not erased read as zero;
/// a wrong implicit zero is an error at an unknown position, which is how a
/// missing adjacency row enters decoding.
struct ReceivedWord {
    uint64_t msgLen = 0;
    std::vector<std::pair<uint64_t, Elem>> msgSymbols; // ascending positions
    std::vector<uint64_t> msgErasures;                 // ascending positions
    std::vector<std::optional<Elem>> parity;           // size parityCount; nullopt = erased
};

/// Builds the code and the x^(2^i) ladder used by sparse encoding.
RsCode rs_make_code(uint32_t w, uint64_t msgLen, uint32_t parityCount);

/// Parity of the systematic encoding: (message polynomial * x^parityCount)
/// mod generator. Cost scales with the number of nonzero symbols, never with
/// msgLen.
std::vector<Elem> rs_encode(const RsCode& code, const SparseMessage& msg);

/// Corrects e errors plus f erasures whenever 2e+f <= parityCount, verified
/// by a full syndrome recheck of the corrected word. nullopt means the
/// received word is outside that guarantee (callers map this to a break
/// budget violation). Error positions are recovered by discrete log of the
/// locator roots; beyond msgLen + parityCount of about 2^44 that table walk
/// is refused with ParamError (erasure-only decoding has no such limit).
std::optional<SparseMessage> rs_decode(const RsCode& code, const ReceivedWord& recv);

} // namespace brc
