#include "brc/params.hpp"

#include <bit>

#include "brc/error.hpp"
#include "brc/mu.hpp"

namespace brc {

Params derive_params(uint64_t m, uint64_t t, uint32_t c) {
    if (t < 1) throw ParamError("t must be at least 1");
    if (c < 3) throw ParamError("c must be at least 3");
    if (m < 2 || !std::has_single_bit(m)) throw ParamError("m must be a power of two");

    Params p;
    p.m = m;
    p.t = t;
    p.c = c;
    p.log2m = static_cast<uint32_t>(std::countr_zero(m));

    const uint64_t L = uint64_t(c) * p.log2m;
    if (L % 2 != 0) throw ParamError("L = c*log2(m) must be even");
    if (L < 8 || L > 64) throw ParamError("L = c*log2(m) must be in [8, 64]");
    p.L = static_cast<uint32_t>(L);
    p.fieldSig = p.L;
    p.fieldAdj = 2 * p.L;

    p.W = 2ull * p.beta * c * p.log2m * p.log2m + L - 1;
    const uint32_t x = 2 * p.beta * p.log2m;
    p.numLevels = 32u - static_cast<uint32_t>(std::countl_zero(x - 1)); // ceil(log2 x), x >= 2
    p.uLen = (11 + 2ull * p.numLevels) * L;
    p.n = m + L + 3 * t * p.uLen;

    p.muSize = mu_size(p.L);
    if (p.muSize < t + 2) throw ParamError("t too large for the marker code");

    // Both Reed-Solomon codes must fit their fields: total code length
    // (message plus parity) needs that many distinct powers of alpha.
    using u128 = unsigned __int128;
    const u128 adjSpace = p.fieldAdj >= 128 ? ~u128(0) : (u128(1) << p.fieldAdj);
    if (adjSpace < u128(p.muSize) + 4 * t) throw ParamError("t too large for the adjacency field");
    const u128 sigSpace = u128(1) << p.fieldSig;
    if (sigSpace < u128(m / L) + p.numLevels + 2 * t) throw ParamError("t too large for the signature field");

    if (t > m / L) throw ParamError("t too large for the message length");

    return p;
}

} // namespace brc
