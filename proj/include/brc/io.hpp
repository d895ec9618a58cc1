#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "brc/bitstring.hpp"

namespace brc {

/// One serialized bit artifact: header "BRC1 m=<int> t=<int> c=<int>", then
/// one '0'/'1' line per entry in stored order, every line newline-
/// terminated. The same shape carries codewords (one line of n bits),
/// fragment multisets (one line per fragment), and payloads (one line of m
/// bits), so encode truth sidecars and decode outputs are byte-comparable.
struct FragmentFile {
    uint64_t m = 0;
    uint64_t t = 0;
    uint32_t c = 0;
    std::vector<BitString> lines;
};

std::string format_fragment_file(const FragmentFile& f);

/// Strict inverse of format: exact header shape, non-empty binary body
/// lines, required trailing newline, LF only. Throws ParamError on any
/// deviation.
FragmentFile parse_fragment_file(std::string_view text);

FragmentFile load_fragment_file(const std::string& path);
void store_fragment_file(const std::string& path, const FragmentFile& f);

} // namespace brc
