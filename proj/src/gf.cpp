#include "brc/gf.hpp"

#include <bit>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>

#include "brc/error.hpp"
#include "brc/gf_factors.hpp"

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace brc {

namespace {

using u128 = unsigned __int128;

// ---- GF(2)[x] scratch arithmetic for construction-time checks. --------
// Polynomials up to degree 255 as four 64-bit limbs, little-endian.

struct Poly256 {
    uint64_t limb[4] = {0, 0, 0, 0};

    static Poly256 from_u128(u128 v) {
        Poly256 p;
        p.limb[0] = static_cast<uint64_t>(v);
        p.limb[1] = static_cast<uint64_t>(v >> 64);
        return p;
    }
    u128 to_u128() const { return (u128(limb[1]) << 64) | limb[0]; }

    bool is_zero() const { return !(limb[0] | limb[1] | limb[2] | limb[3]); }
    bool bit(uint32_t i) const { return (limb[i >> 6] >> (i & 63)) & 1; }
    void set_bit(uint32_t i) { limb[i >> 6] |= 1ull << (i & 63); }

    int degree() const {
        for (int w = 3; w >= 0; --w)
            if (limb[w]) return w * 64 + 63 - std::countl_zero(limb[w]);
        return -1;
    }

    void operator^=(const Poly256& o) {
        for (int i = 0; i < 4; ++i) limb[i] ^= o.limb[i];
    }

    Poly256 shifted(uint32_t s) const {
        Poly256 r;
        const uint32_t words = s >> 6, bits = s & 63;
        for (int i = 3; i >= static_cast<int>(words); --i) {
            uint64_t v = limb[i - words] << bits;
            if (bits && i > static_cast<int>(words)) v |= limb[i - words - 1] >> (64 - bits);
            r.limb[i] = v;
        }
        return r;
    }
};

Poly256 poly_mod(Poly256 a, const Poly256& b) {
    const int db = b.degree();
    for (int da = a.degree(); da >= db; da = a.degree()) a ^= b.shifted(static_cast<uint32_t>(da - db));
    return a;
}

Poly256 poly_gcd(Poly256 a, Poly256 b) {
    while (!b.is_zero()) {
        Poly256 r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// Square a polynomial of degree < 128 (bit i moves to 2i).
Poly256 poly_square(u128 v) {
    Poly256 r;
    for (uint32_t i = 0; i < 128; ++i)
        if ((v >> i) & 1) r.set_bit(2 * i);
    return r;
}

// x^(2^e) mod f, where f = x^w + low. Repeated squaring from x.
u128 x_pow_pow2_mod(uint32_t e, uint32_t w, u128 low) {
    Poly256 f = Poly256::from_u128(low);
    f.set_bit(w);
    u128 g = 2; // the polynomial x
    for (uint32_t i = 0; i < e; ++i) g = poly_mod(poly_square(g), f).to_u128();
    return g;
}

// Rabin irreducibility test for f = x^w + low.
bool is_irreducible(uint32_t w, u128 low) {
    if ((low & 1) == 0) return false; // divisible by x
    Poly256 f = Poly256::from_u128(low);
    f.set_bit(w);

    // x^(2^w) == x mod f.
    if (x_pow_pow2_mod(w, w, low) != 2) return false;

    // gcd(x^(2^(w/q)) - x, f) == 1 for every prime divisor q of w.
    uint32_t rest = w;
    for (uint32_t q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        Poly256 h = Poly256::from_u128(x_pow_pow2_mod(w / q, w, low) ^ u128(2));
        if (poly_gcd(f, h).degree() != 0) return false;
    }
    if (rest > 1) {
        Poly256 h = Poly256::from_u128(x_pow_pow2_mod(w / rest, w, low) ^ u128(2));
        if (poly_gcd(f, h).degree() != 0) return false;
    }
    return true;
}

u128 least_irreducible_low(uint32_t w) {
    for (u128 low = 1;; low += 2)
        if (is_irreducible(w, low)) return low;
}

// ---- Deterministic Miller-Rabin for uint64 (table integrity check). ----

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(u128(a) * b % m);
}

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

const detail::FactorRow& factor_row(uint32_t w) {
    for (const auto& row : detail::kFactorRows)
        if (row.w == w) return row;
    throw ParamError("field width has no factor table entry");
}

} // namespace

FieldSpec::FieldSpec(uint32_t w) : w_(w) {
    if (w < 8 || w > 128 || w % 2 != 0) throw ParamError("field width must be even and in [8, 128]");
    mask_ = (w == 128) ? ~u128(0) : (u128(1) << w) - 1;
    lowPoly_ = least_irreducible_low(w);
    verify_group_factors();
    if (w == 8) {
        table8_.resize(256 * 256);
        for (uint32_t a = 0; a < 256; ++a)
            for (uint32_t b = 0; b < 256; ++b)
                table8_[(a << 8) | b] = static_cast<uint8_t>(mul_reference(a, b));
    }
    alpha_ = find_alpha();
}

void FieldSpec::verify_group_factors() const {
    const auto& row = factor_row(w_);
    u128 prod = 1;
    for (uint32_t i = 0; i < row.count; ++i) {
        const auto& pp = detail::kGroupFactors[row.offset + i];
        if (!is_prime64(pp.prime)) throw Error("factor table entry is not prime");
        for (uint32_t e = 0; e < pp.exp; ++e) {
            u128 next;
            if (__builtin_mul_overflow(prod, u128(pp.prime), &next)) throw Error("factor table product overflow");
            prod = next;
        }
    }
    if (prod != group_order()) throw Error("factor table does not multiply back to 2^w - 1");
}

Elem FieldSpec::find_alpha() const {
    const auto& row = factor_row(w_);
    for (Elem v = 2;; ++v) {
        bool primitive = true;
        for (uint32_t i = 0; i < row.count && primitive; ++i)
            if (pow(v, group_order() / detail::kGroupFactors[row.offset + i].prime) == 1) primitive = false;
        if (primitive) return v;
    }
}

Elem FieldSpec::mul_reference(Elem a, Elem b) const {
    assert((a & ~mask_) == 0 && (b & ~mask_) == 0);
    Elem res = 0;
    while (b) {
        if (b & 1) res ^= a;
        b >>= 1;
        const bool carry = (a >> (w_ - 1)) & 1;
        a = (a << 1) & mask_;
        if (carry) a ^= lowPoly_;
    }
    return res;
}

Elem FieldSpec::mul(Elem a, Elem b) const {
    assert((a & ~mask_) == 0 && (b & ~mask_) == 0);
    if (w_ == 8) return table8_[(static_cast<uint32_t>(a) << 8) | static_cast<uint32_t>(b)];
#if defined(__PCLMUL__)
    // Carry-less multiply then fold the high part with x^w == lowPoly.
    // The low polynomial has small degree, so folding converges fast.
    if (w_ <= 64) {
        const auto to_u128 = [](__m128i v) {
            const uint64_t lo = static_cast<uint64_t>(_mm_cvtsi128_si64(v));
            const uint64_t hi = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(v, v)));
            return (u128(hi) << 64) | lo;
        };
        const __m128i va = _mm_set_epi64x(0, static_cast<long long>(static_cast<uint64_t>(a)));
        const __m128i vb = _mm_set_epi64x(0, static_cast<long long>(static_cast<uint64_t>(b)));
        u128 r = to_u128(_mm_clmulepi64_si128(va, vb, 0));
        const __m128i vl = _mm_set_epi64x(0, static_cast<long long>(static_cast<uint64_t>(lowPoly_)));
        while (u128 hi = r >> w_) {
            const __m128i vh = _mm_set_epi64x(0, static_cast<long long>(static_cast<uint64_t>(hi)));
            r = (r & mask_) ^ to_u128(_mm_clmulepi64_si128(vh, vl, 0));
        }
        return r;
    }
#endif
    if (w_ <= 64) {
        // Same loop as mul_reference on 64-bit words.
        uint64_t a64 = static_cast<uint64_t>(a), b64 = static_cast<uint64_t>(b), res = 0;
        const uint64_t mask64 = static_cast<uint64_t>(mask_), low64 = static_cast<uint64_t>(lowPoly_);
        while (b64) {
            if (b64 & 1) res ^= a64;
            b64 >>= 1;
            const bool carry = (a64 >> (w_ - 1)) & 1;
            a64 = (a64 << 1) & mask64;
            if (carry) a64 ^= low64;
        }
        return res;
    }
    return mul_reference(a, b);
}

Elem FieldSpec::pow(Elem a, Elem e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem FieldSpec::inv(Elem a) const {
    if (a == 0) throw ParamError("zero has no multiplicative inverse");
    return pow(a, group_order() - 1);
}

const FieldSpec& FieldSpec::get(uint32_t w) {
    static std::mutex mu;
    static std::map<uint32_t, std::unique_ptr<FieldSpec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, std::make_unique<FieldSpec>(w)).first;
    return *it->second;
}

BitString FieldSpec::to_bits(Elem v) const {
    assert((v & ~mask_) == 0);
    BitString b(w_);
    for (uint32_t i = 0; i < w_; ++i) b.set(i, static_cast<uint8_t>((v >> (w_ - 1 - i)) & 1));
    return b;
}

Elem FieldSpec::from_bits(const BitString& s, size_t pos) const {
    Elem v = 0;
    for (uint32_t i = 0; i < w_; ++i) v = (v << 1) | s[pos + i];
    return v;
}

} // namespace brc
