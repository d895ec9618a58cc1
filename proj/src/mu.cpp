#include "brc/mu.hpp"

#include <bit>

#include "brc/error.hpp"

namespace brc {

namespace {

uint32_t ceil_log2(uint32_t x) {
    return x <= 1 ? 0 : 32u - static_cast<uint32_t>(std::countl_zero(x - 1));
}

} // namespace

MuCode::MuCode(uint32_t L) : L_(L) {
    if (L < 8 || L > 64) throw ParamError("codeword length must be in [8, 64]");
    if (L % 2 != 0) throw ParamError("codeword length must be even");
    k_ = ceil_log2(L) + 1;
    midLen_ = L_ - k_ - 2;

    tail_.assign(midLen_ + 1, std::vector<uint64_t>(k_, 0));
    for (uint32_t r = 0; r < k_; ++r) tail_[0][r] = 1;
    for (uint32_t i = 1; i <= midLen_; ++i)
        for (uint32_t r = 0; r < k_; ++r) {
            uint64_t ways = tail_[i - 1][0]; // place a 1, run resets
            if (r + 1 < k_) ways += tail_[i - 1][r + 1]; // place a 0
            tail_[i][r] = ways;
        }
    size_ = tail_[midLen_][0];
}

bool MuCode::is_codeword(const BitString& word) const {
    if (word.size() != L_) return false;
    return is_codeword_packed(word.pack(0, L_));
}

bool MuCode::is_codeword_packed(uint64_t w) const {
    if (w >> (L_ - k_)) return false;                   // leading k bits zero
    if (((w >> (L_ - 1 - k_)) & 1) == 0) return false;  // bit k is one
    if ((w & 1) == 0) return false;                     // last bit is one
    // No zero run of length k anywhere past the leading one. Bits past
    // position 0 live in the low L-1 bits; detect a k-run of ones in the
    // complement by k-1 self-shifts.
    uint64_t v = ~w & ((1ull << (L_ - 1)) - 1);
    for (uint32_t i = 1; i < k_; ++i) v &= v >> 1;
    return v == 0;
}

BitString MuCode::unrank(uint64_t index) const {
    if (index >= size_) throw ParamError("codeword index out of range");
    BitString word(L_);
    word.set(k_, 1);
    word.set(L_ - 1, 1);
    uint32_t run = 0;
    for (uint32_t i = 0; i < midLen_; ++i) {
        const uint32_t rest = midLen_ - 1 - i;
        const uint64_t withZero = (run + 1 < k_) ? tail_[rest][run + 1] : 0;
        if (index < withZero) {
            ++run; // bit stays 0
        } else {
            index -= withZero;
            word.set(k_ + 1 + i, 1);
            run = 0;
        }
    }
    return word;
}

uint64_t MuCode::rank(const BitString& word) const {
    if (!is_codeword(word)) throw ParamError("not a codeword of this code");
    return rank_packed(word.pack(0, L_));
}

uint64_t MuCode::rank_packed(uint64_t w) const {
    uint64_t index = 0;
    uint32_t run = 0;
    for (uint32_t i = 0; i < midLen_; ++i) {
        const uint32_t rest = midLen_ - 1 - i;
        const uint64_t bit = (w >> (L_ - 1 - (k_ + 1 + i))) & 1;
        if (bit == 0) {
            ++run;
        } else {
            if (run + 1 < k_) index += tail_[rest][run + 1];
            run = 0;
        }
    }
    return index;
}

std::vector<std::pair<size_t, uint64_t>> MuCode::scan(const BitString& s) const {
    std::vector<std::pair<size_t, uint64_t>> hits;
    if (s.size() < L_) return hits;
    const uint64_t mask = (L_ == 64) ? ~0ull : (1ull << L_) - 1;
    uint64_t window = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        window = ((window << 1) | s[i]) & mask;
        if (i + 1 >= L_ && is_codeword_packed(window)) hits.emplace_back(i + 1 - L_, window);
    }
    return hits;
}

std::vector<BitString> MuCode::markers(uint64_t t) const {
    if (size_ < t + 2) throw ParamError("t too large for the marker code");
    std::vector<BitString> out;
    out.reserve(t + 1);
    for (uint64_t i = 0; i <= t; ++i) out.push_back(unrank(i));
    return out;
}

uint64_t mu_size(uint32_t L) { return MuCode(L).size(); }

} // namespace brc
