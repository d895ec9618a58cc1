#pragma once

#include <cstdint>
#include <vector>

#include "brc/bitstring.hpp"

namespace brc {

/// Field element of GF(2^w), w <= 128: the coefficient bits of a binary
/// polynomial of degree < w. Addition is XOR. Elements from different
/// widths must never be mixed; operations assert the value fits the width.
using Elem = unsigned __int128;

/// Arithmetic for GF(2^w), even w in [8, 128].
///
/// The reduction polynomial is the lexicographically least irreducible of
/// degree w (verified irreducible at construction). alpha() is the
/// smallest-value primitive element, verified against the embedded
/// factorization of 2^w - 1, so alpha has full order and any Reed-Solomon
/// code with length <= 2^w - 1 gets distinct locators. Both choices are
/// deterministic: encoder and decoder agree without negotiation.
class FieldSpec {
public:
    explicit FieldSpec(uint32_t w);

    uint32_t width() const { return w_; }
    /// Low coefficients of the reduction polynomial; the x^w term is implicit.
    Elem reduction() const { return lowPoly_; }
    Elem alpha() const { return alpha_; }
    Elem mask() const { return mask_; }
    /// 2^w - 1, the multiplicative group order.
    Elem group_order() const { return mask_; }

    Elem add(Elem a, Elem b) const { return a ^ b; }
    Elem mul(Elem a, Elem b) const;
    Elem pow(Elem a, Elem e) const;
    Elem inv(Elem a) const; // throws ParamError on zero

    /// Shared immutable instance per width.
    static const FieldSpec& get(uint32_t w);

    /// Width-w bit string, most significant coefficient first.
    BitString to_bits(Elem v) const;
    /// Reads w bits starting at pos; most significant coefficient first.
    Elem from_bits(const BitString& s, size_t pos) const;

    /// Bit-serial reference multiply, used to cross-check the fast paths.
    Elem mul_reference(Elem a, Elem b) const;

private:
    uint32_t w_;
    Elem mask_;
    Elem lowPoly_;
    Elem alpha_;
    std::vector<uint8_t> table8_; // 256x256 product table, w == 8 only

    void verify_group_factors() const;
    Elem find_alpha() const;
};

} // namespace brc
