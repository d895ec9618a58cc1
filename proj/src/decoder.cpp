#include "brc/decoder.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include "brc/error.hpp"
#include "brc/gf.hpp"
#include "brc/rs.hpp"

namespace brc {

PartialString::PartialString(size_t n, const BitString* truth)
    : cells_(n, Unknown), unknown_(n), truth_(truth) {
    if (truth_ && truth_->size() != n) throw ParamError("truth string has the wrong length");
}

void PartialString::write(size_t i, uint8_t bit) {
    if (i >= cells_.size()) throw DecodeConflict("write outside the payload bounds");
    if (truth_ && (*truth_)[i] != bit) throw DecodeConflict("write disagrees with ground truth");
    if (cells_[i] == Unknown) {
        cells_[i] = bit;
        --unknown_;
    } else if (cells_[i] != bit) {
        throw DecodeConflict("write disagrees with a known cell");
    }
}

void PartialString::write_str(size_t pos, const BitString& s) {
    if (pos > cells_.size() || s.size() > cells_.size() - pos)
        throw DecodeConflict("write outside the payload bounds");
    for (size_t i = 0; i < s.size(); ++i) write(pos + i, s[i]);
}

bool PartialString::compatible(size_t pos, const BitString& s) const {
    if (pos > cells_.size() || s.size() > cells_.size() - pos) return false;
    for (size_t i = 0; i < s.size(); ++i)
        if (cells_[pos + i] != Unknown && cells_[pos + i] != s[i]) return false;
    return true;
}

BitString PartialString::to_bits() const {
    if (unknown_ != 0) throw DecodeFailure("unrecovered cells remain");
    BitString out(cells_.size());
    for (size_t i = 0; i < cells_.size(); ++i) out.set(i, cells_[i]);
    return out;
}

namespace {

std::vector<uint64_t> packed_markers(const Params& p, const MuCode& mu) {
    std::vector<uint64_t> mk;
    for (const BitString& m : mu.markers(p.t)) mk.push_back(m.pack(0, p.L));
    return mk;
}

size_t marker_index(const std::vector<uint64_t>& mk, uint64_t val) {
    for (size_t i = 0; i < mk.size(); ++i)
        if (mk[i] == val) return i;
    return mk.size();
}

bool contains_substring(const BitString& hay, const BitString& needle) {
    if (needle.empty()) return true;
    if (needle.size() > hay.size()) return false;
    for (size_t s = 0; s + needle.size() <= hay.size(); ++s) {
        size_t i = 0;
        while (i < needle.size() && hay[s + i] == needle[i]) ++i;
        if (i == needle.size()) return true;
    }
    return false;
}

// Places information fragments by matching known signature values inside
// them. Level-0 values are unique in y, so their implied placements are
// authoritative (strict mode); higher-level values can in principle recur
// within a window-length of themselves, so placement waits until exactly
// one candidate is consistent with the known cells (ambiguity defers to a
// later round rather than guessing).
class Affixer {
public:
    Affixer(PartialString& ps, uint32_t L)
        : ps_(ps), L_(L), mask_(L == 64 ? ~uint64_t(0) : (uint64_t(1) << L) - 1) {}

    void add_known_sig(uint64_t pos, uint64_t packed) { valueAt_[packed].push_back(pos); }
    void add_fragment(BitString f) { pending_.push_back(std::move(f)); }
    const std::vector<BitString>& pending() const { return pending_; }

    void settle(bool strict) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t fi = 0; fi < pending_.size();) {
                const BitString& f = pending_[fi];
                std::set<int64_t> implied;
                std::set<uint64_t> usable;
                if (f.size() >= L_) {
                    uint64_t w = f.pack(0, L_ - 1);
                    for (size_t i = 0; i + L_ <= f.size(); ++i) {
                        w = ((w << 1) | f[i + L_ - 1]) & mask_;
                        auto it = valueAt_.find(w);
                        if (it == valueAt_.end()) continue;
                        for (uint64_t pos : it->second) {
                            int64_t start = int64_t(pos) - int64_t(i);
                            implied.insert(start);
                            if (start >= 0 && ps_.compatible(uint64_t(start), f))
                                usable.insert(uint64_t(start));
                        }
                    }
                }
                if (strict && implied.size() > 1)
                    throw DecodeConflict("fragment implies multiple placements");
                if (strict && implied.size() == 1 && usable.empty())
                    throw DecodeConflict("fragment placement contradicts known cells");
                if (usable.size() == 1) {
                    ps_.write_str(*usable.begin(), f);
                    pending_[fi] = std::move(pending_.back());
                    pending_.pop_back();
                    progress = true;
                } else {
                    ++fi;
                }
            }
        }
    }

private:
    PartialString& ps_;
    uint32_t L_;
    uint64_t mask_;
    std::unordered_map<uint64_t, std::vector<uint64_t>> valueAt_;
    std::vector<BitString> pending_;
};

// Follows the unique successor path from m_0, writing every level-0
// signature at its absolute position. The repaired matrix must describe a
// single path over ranks with plausible spacings; anything else means the
// break budget was exceeded and repair miscorrected.
SignatureStore walk_and_place(const AdjacencyMatrix& A, PartialString& ps, const Params& p,
                              const MuCode& mu, Affixer& affixer) {
    SignatureStore store;
    BitString m0 = mu.unrank(0);
    ps.write_str(0, m0);
    store.emplace(0, m0.pack(0, p.L));
    affixer.add_known_sig(0, m0.pack(0, p.L));

    std::set<uint64_t> visited{0};
    uint64_t rank = 0, pos = 0;
    auto it = A.rows.find(rank);
    while (it != A.rows.end()) {
        const AdjacencyTarget& tgt = it->second;
        if (tgt.weight < p.L) throw DecodeFailure("break budget exceeded: signatures too close");
        if (tgt.col >= p.muSize) throw DecodeFailure("break budget exceeded: rank out of range");
        pos += tgt.weight;
        if (pos + p.L > ps.size())
            throw DecodeFailure("break budget exceeded: signature walk leaves the payload");
        if (!visited.insert(tgt.col).second)
            throw DecodeFailure("break budget exceeded: signature walk cycles");
        BitString val = mu.unrank(tgt.col);
        ps.write_str(pos, val);
        store.emplace(pos, val.pack(0, p.L));
        affixer.add_known_sig(pos, val.pack(0, p.L));
        rank = tgt.col;
        it = A.rows.find(rank);
    }
    if (A.rows.size() + 1 != store.size())
        throw DecodeFailure("break budget exceeded: adjacency matrix is not a single path");
    return store;
}

// One signature level: derive the midpoint positions exactly as the encoder
// did, read their values from the partial string (unknown cells become
// erasures), erasure-decode against the surviving per-level parities, and
// write the repaired values back. Known symbols must come back unchanged;
// a "correction" there means the evidence was outside the budget.
void repair_levels(SignatureStore& store, PartialString& ps,
                   const std::map<uint64_t, BitString>& rStrings, const Params& p,
                   Affixer& affixer, DecodeStats* stats) {
    const FieldSpec& f = FieldSpec::get(p.fieldSig);
    for (uint32_t lev = 1; lev <= p.numLevels; ++lev) {
        std::vector<uint64_t> fresh;
        for (auto it = store.begin(); it != store.end(); ++it) {
            auto nx = std::next(it);
            uint64_t kNext = nx == store.end() ? ps.size() : nx->first;
            uint64_t d = kNext - it->first;
            if (d >= 2 * p.L) fresh.push_back(it->first + d / 2);
        }

        uint64_t msgLen = store.size() + fresh.size();
        RsCode code = rs_make_code(p.fieldSig, msgLen, 2 * p.t);
        ReceivedWord recv;
        recv.msgLen = msgLen;
        recv.parity.assign(2 * p.t, std::nullopt);
        for (const auto& [l, u] : rStrings)
            for (uint64_t i = 0; i < 2; ++i)
                recv.parity[2 * (l - 1) + i] = f.from_bits(u, p.level_parity_offset(lev) + i * p.L);

        std::vector<std::optional<uint64_t>> freshVals(fresh.size());
        {
            auto sit = store.begin();
            size_t fi = 0;
            for (uint64_t idx = 0; idx < msgLen; ++idx) {
                bool fromStore =
                    sit != store.end() && (fi == fresh.size() || sit->first < fresh[fi]);
                if (fromStore) {
                    if (sit->second != 0) recv.msgSymbols.emplace_back(idx, Elem(sit->second));
                    ++sit;
                    continue;
                }
                uint64_t kpos = fresh[fi];
                bool knownAll = true;
                for (uint64_t b = 0; b < p.L && knownAll; ++b) knownAll = ps.known(kpos + b);
                if (knownAll) {
                    uint64_t v = 0;
                    for (uint64_t b = 0; b < p.L; ++b) v = (v << 1) | ps.get(kpos + b);
                    freshVals[fi] = v;
                    if (v != 0) recv.msgSymbols.emplace_back(idx, Elem(v));
                } else {
                    recv.msgErasures.push_back(idx);
                }
                ++fi;
            }
        }
        if (stats) stats->levelErasures.push_back(recv.msgErasures.size());

        auto decoded = rs_decode(code, recv);
        if (!decoded) throw DecodeFailure("break budget exceeded: signature level repair failed");

        auto dit = decoded->entries.begin();
        auto sit = store.begin();
        size_t fi = 0;
        std::vector<std::pair<uint64_t, uint64_t>> newSigs;
        for (uint64_t idx = 0; idx < msgLen; ++idx) {
            while (dit != decoded->entries.end() && dit->first < idx) ++dit;
            uint64_t val =
                (dit != decoded->entries.end() && dit->first == idx) ? uint64_t(dit->second) : 0;
            bool fromStore = sit != store.end() && (fi == fresh.size() || sit->first < fresh[fi]);
            if (fromStore) {
                if (val != sit->second)
                    throw DecodeFailure("break budget exceeded: repair altered a known signature");
                ++sit;
            } else {
                if (freshVals[fi] && *freshVals[fi] != val)
                    throw DecodeFailure("break budget exceeded: repair altered a known signature");
                newSigs.emplace_back(fresh[fi], val);
                ++fi;
            }
        }
        for (const auto& [kpos, v] : newSigs) {
            ps.write_str(kpos, BitString::unpack(v, p.L));
            store.emplace(kpos, v);
            affixer.add_known_sig(kpos, v);
        }
        affixer.settle(false);
    }
}

// Residual gaps are determined by the final signature store; their bits are
// read from the partial string and repaired by erasure decoding, then the
// depadded bits must fill their gap exactly.
void repair_residuals(const SignatureStore& store, PartialString& ps,
                      const std::map<uint64_t, BitString>& rStrings, const Params& p,
                      DecodeStats* stats) {
    const FieldSpec& f = FieldSpec::get(p.fieldSig);
    struct Gap {
        uint64_t key, len;
    };
    std::vector<Gap> gaps;
    for (auto it = store.begin(); it != store.end(); ++it) {
        auto nx = std::next(it);
        uint64_t kNext = nx == store.end() ? ps.size() : nx->first;
        uint64_t d = kNext - it->first;
        if (d < p.L || d >= 2 * p.L)
            throw DecodeFailure("break budget exceeded: final signature spacing invalid");
        if (d > p.L) gaps.push_back({it->first + p.L, d - p.L});
    }

    RsCode code = rs_make_code(p.fieldSig, gaps.size(), 3 * p.t);
    ReceivedWord recv;
    recv.msgLen = gaps.size();
    recv.parity.assign(3 * p.t, std::nullopt);
    for (const auto& [l, u] : rStrings)
        for (uint64_t i = 0; i < 3; ++i)
            recv.parity[3 * (l - 1) + i] = f.from_bits(u, p.residual_parity_offset() + i * p.L);

    std::vector<std::optional<uint64_t>> knownVals(gaps.size());
    for (size_t j = 0; j < gaps.size(); ++j) {
        bool knownAll = true;
        for (uint64_t b = 0; b < gaps[j].len && knownAll; ++b) knownAll = ps.known(gaps[j].key + b);
        if (!knownAll) {
            recv.msgErasures.push_back(j);
            continue;
        }
        BitString bits(gaps[j].len);
        for (uint64_t b = 0; b < gaps[j].len; ++b) bits.set(b, ps.get(gaps[j].key + b));
        uint64_t v = pad_residual(bits, p.L).pack(0, p.L);
        knownVals[j] = v;
        recv.msgSymbols.emplace_back(j, Elem(v));
    }
    if (stats) stats->residualErasures = recv.msgErasures.size();

    auto decoded = rs_decode(code, recv);
    if (!decoded) throw DecodeFailure("break budget exceeded: residual repair failed");

    auto dit = decoded->entries.begin();
    for (size_t j = 0; j < gaps.size(); ++j) {
        while (dit != decoded->entries.end() && dit->first < j) ++dit;
        uint64_t val = (dit != decoded->entries.end() && dit->first == j) ? uint64_t(dit->second) : 0;
        if (knownVals[j]) {
            if (*knownVals[j] != val)
                throw DecodeFailure("break budget exceeded: repair altered known residual bits");
            continue;
        }
        if (val == 0) throw DecodeFailure("break budget exceeded: repaired residual is empty");
        BitString bits;
        try {
            bits = depad_residual(BitString::unpack(val, p.L));
        } catch (const ParamError&) {
            throw DecodeFailure("break budget exceeded: repaired residual is malformed");
        }
        if (bits.size() != gaps[j].len)
            throw DecodeFailure("break budget exceeded: repaired residual length mismatch");
        ps.write_str(gaps[j].key, bits);
    }
}

} // namespace

FragmentClassification split_and_classify(const FragmentMultiset& frags, const Params& p,
                                          const MuCode& mu) {
    std::vector<uint64_t> mk = packed_markers(p, mu);
    std::vector<BitString> flat;
    for (const BitString& f : frags) {
        std::optional<size_t> m0at;
        if (f.size() >= p.L)
            for (const auto& [pos, val] : mu.scan(f))
                if (val == mk[0]) {
                    m0at = pos;
                    break;
                }
        if (m0at && *m0at > 0) {
            flat.push_back(f.slice(0, *m0at));
            flat.push_back(f.slice(*m0at, f.size() - *m0at));
        } else {
            flat.push_back(f);
        }
    }

    FragmentClassification out;
    for (BitString& f : flat) {
        bool markerHit = false, sigHit = false;
        if (f.size() >= p.L)
            for (const auto& [pos, val] : mu.scan(f)) {
                size_t idx = marker_index(mk, val);
                if (idx != mk.size() && idx >= 1) {
                    markerHit = true;
                    break;
                }
                sigHit = true;
            }
        if (markerHit)
            out.rFragments.push_back(std::move(f));
        else if (f.size() >= 3 * p.L || sigHit)
            out.zFragments.push_back(std::move(f));
        else
            out.discarded.push_back(std::move(f));
    }
    return out;
}

AdjacencyMatrix extract_approx_adjacency(const std::vector<BitString>& zFrags, const Params& p,
                                         const MuCode& mu) {
    AdjacencyMatrix A;
    A.muSize = mu.size();
    for (const BitString& f : zFrags) {
        if (f.size() < p.L) continue;
        auto hits = mu.scan(f);
        for (size_t j = 0; j + 1 < hits.size(); ++j) {
            uint64_t a = mu.rank_packed(hits[j].second);
            uint64_t b = mu.rank_packed(hits[j + 1].second);
            AdjacencyTarget tgt{b, hits[j + 1].first - hits[j].first};
            auto [it, inserted] = A.rows.emplace(a, tgt);
            if (!inserted && !(it->second == tgt))
                throw DecodeConflict("conflicting adjacency rows across fragments");
        }
    }
    return A;
}

std::map<uint64_t, BitString> extract_redundancy_strings(const std::vector<BitString>& rFrags,
                                                         const Params& p, const MuCode& mu) {
    std::vector<uint64_t> mk = packed_markers(p, mu);
    std::map<uint64_t, BitString> out;
    const uint64_t runLen = p.chunk_count(), period = p.marker_period();
    for (const BitString& f : rFrags) {
        std::map<uint64_t, std::vector<uint64_t>> hits;
        for (const auto& [pos, val] : mu.scan(f)) {
            size_t idx = marker_index(mk, val);
            if (idx != mk.size() && idx >= 1) hits[idx].push_back(pos);
        }
        for (const auto& [l, positions] : hits) {
            if (positions.size() != runLen) continue;
            bool spaced = true;
            for (size_t j = 1; j < positions.size() && spaced; ++j)
                spaced = positions[j] - positions[j - 1] == period;
            if (!spaced) continue;
            if (positions.back() + p.L + p.chunk_bits() > f.size()) continue;
            BitString u;
            for (uint64_t q : positions) u.append(f.slice(q + p.L, p.chunk_bits()));
            auto it = out.find(l);
            if (it == out.end())
                out.emplace(l, std::move(u));
            else if (it->second != u)
                throw DecodeConflict("redundancy string recovered twice with different bits");
        }
    }
    return out;
}

AdjacencyMatrix repair_adjacency(const AdjacencyMatrix& approx,
                                 const std::map<uint64_t, BitString>& rStrings, const Params& p) {
    if (approx.muSize != p.muSize) throw ParamError("adjacency matrix size mismatch");
    const FieldSpec& f = FieldSpec::get(p.fieldAdj);
    RsCode code = rs_make_code(p.fieldAdj, p.muSize, 4 * p.t);

    ReceivedWord recv;
    recv.msgLen = p.muSize;
    for (const auto& [rank, tgt] : approx.rows)
        recv.msgSymbols.emplace_back(rank, compress_row(tgt, p.L));
    recv.parity.assign(4 * p.t, std::nullopt);
    for (const auto& [l, u] : rStrings)
        for (uint64_t i = 0; i < 4; ++i)
            recv.parity[4 * (l - 1) + i] = f.from_bits(u, p.adj_parity_offset() + i * 2 * p.L);

    auto decoded = rs_decode(code, recv);
    if (!decoded) throw DecodeFailure("break budget exceeded: adjacency repair failed");

    AdjacencyMatrix A;
    A.muSize = p.muSize;
    try {
        for (const auto& [rank, elem] : decoded->entries) A.rows.emplace(rank, *decompress_row(elem, p.L));
    } catch (const ParamError&) {
        throw DecodeFailure("break budget exceeded: repaired adjacency is malformed");
    }
    return A;
}

BitString decode(const FragmentMultiset& frags, const Params& p, const MuCode& mu,
                 const DecodeOptions& opt) {
    uint64_t total = 0;
    for (const BitString& f : frags) total += f.size();
    if (total > p.n) throw ParamError("fragments carry more bits than the codeword");
    if (mu.size() != p.muSize) throw ParamError("marker code does not match the parameters");

    FragmentClassification cls = split_and_classify(frags, p, mu);
    auto rStrings = extract_redundancy_strings(cls.rFragments, p, mu);
    AdjacencyMatrix approx = extract_approx_adjacency(cls.zFragments, p, mu);
    AdjacencyMatrix A = repair_adjacency(approx, rStrings, p);

    if (opt.stats) {
        *opt.stats = {};
        opt.stats->discardedFragments = cls.discarded.size();
        opt.stats->missingStrings = p.t - rStrings.size();
        for (const auto& [rank, tgt] : A.rows) {
            auto it = approx.rows.find(rank);
            if (it == approx.rows.end() || !(it->second == tgt)) ++opt.stats->adjacencyRepaired;
        }
    }

    PartialString ps(p.m + p.L, opt.truthY);
    Affixer affixer(ps, p.L);
    for (BitString& f : cls.zFragments) affixer.add_fragment(std::move(f));

    SignatureStore store = walk_and_place(A, ps, p, mu, affixer);
    affixer.settle(true);

    repair_levels(store, ps, rStrings, p, affixer, opt.stats);
    repair_residuals(store, ps, rStrings, p, opt.stats);

    BitString y = ps.to_bits();
    for (const BitString& f : affixer.pending()) {
        if (!contains_substring(y, f))
            throw DecodeFailure("leftover fragment does not fit the reconstruction");
        if (opt.stats) ++opt.stats->leftoverFragments;
    }
    return y.slice(p.L, p.m);
}

} // namespace brc
