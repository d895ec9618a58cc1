#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "brc/error.hpp"

namespace brc {

/// Bit sequence, one bit per byte. Comparison is lexicographic, which is
/// also the canonical order for fragment multisets.
class BitString {
public:
    BitString() = default;
    explicit BitString(size_t n) : bits_(n, 0) {}

    static BitString from_string(std::string_view s) {
        BitString b;
        b.bits_.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1') throw ParamError("bit string contains a character other than 0 or 1");
            b.bits_.push_back(static_cast<uint8_t>(ch - '0'));
        }
        return b;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
        return s;
    }

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    uint8_t operator[](size_t i) const { return bits_[i]; }
    void set(size_t i, uint8_t b) { bits_[i] = b; }

    void push_back(uint8_t b) { bits_.push_back(b); }

    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    BitString slice(size_t pos, size_t len) const {
        BitString out;
        out.bits_.assign(bits_.begin() + static_cast<ptrdiff_t>(pos),
                         bits_.begin() + static_cast<ptrdiff_t>(pos + len));
        return out;
    }

    /// Pack bits [pos, pos+len) into an integer, first bit most significant.
    uint64_t pack(size_t pos, size_t len) const {
        uint64_t v = 0;
        for (size_t i = 0; i < len; ++i) v = (v << 1) | bits_[pos + i];
        return v;
    }

    /// Inverse of pack: low `len` bits of `value`, most significant first.
    static BitString unpack(uint64_t value, size_t len) {
        BitString b(len);
        for (size_t i = 0; i < len; ++i) b.bits_[i] = static_cast<uint8_t>((value >> (len - 1 - i)) & 1);
        return b;
    }

    bool operator==(const BitString&) const = default;
    auto operator<=>(const BitString&) const = default;

private:
    std::vector<uint8_t> bits_;
};

} // namespace brc
