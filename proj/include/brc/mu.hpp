#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "brc/bitstring.hpp"

namespace brc {

/// Binary block code of even length L whose codewords cannot overlap: no
/// proper prefix of any codeword equals a proper suffix of any codeword
/// (including itself), so occurrences in a longer string are disjoint.
///
/// Shape: 0^k 1 | middle | 1, with k = ceil(log2 L) + 1 and no k-run of
/// zeros inside the middle. The only zero run of length >= k in a codeword
/// is the leading one, which is what kills prefix/suffix clashes.
/// rank/unrank enumerate middles in lexicographic order via a run-length
/// DP; counts stay below 2^(L-k-2) and fit uint64 for every supported L
/// (L <= 64).
class MuCode {
public:
    explicit MuCode(uint32_t L);

    uint32_t length() const { return L_; }
    uint32_t zero_run() const { return k_; }
    uint64_t size() const { return size_; }

    bool is_codeword(const BitString& word) const;
    bool is_codeword_packed(uint64_t w) const;

    BitString unrank(uint64_t index) const;
    uint64_t rank(const BitString& word) const;
    uint64_t rank_packed(uint64_t w) const;

    /// All codeword occurrences in s as (start, packed value), ascending.
    std::vector<std::pair<size_t, uint64_t>> scan(const BitString& s) const;

    /// The t+1 smallest codewords m_0..m_t; requires size() >= t+2 so at
    /// least one codeword is left over for actual payload signatures.
    std::vector<BitString> markers(uint64_t t) const;

private:
    uint32_t L_, k_, midLen_;
    uint64_t size_;
    // tail_[i][r]: completions of the last i middle positions when the
    // pending zero run has length r (r < k_).
    std::vector<std::vector<uint64_t>> tail_;
};

/// Number of codewords of the length-L code (same DP as MuCode::size).
uint64_t mu_size(uint32_t L);

} // namespace brc
