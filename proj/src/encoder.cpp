#include "brc/encoder.hpp"

#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "brc/error.hpp"
#include "brc/legit.hpp"
#include "brc/rs.hpp"

namespace brc {

namespace {

// Internal invariant breaches are bugs, not bad input.
[[noreturn]] void bug(const char* what) { throw std::logic_error(what); }

uint64_t pair_end(SignatureStore::const_iterator it, const SignatureStore& store, uint64_t yLen) {
    auto next = std::next(it);
    return next == store.end() ? yLen : next->first;
}

// Message symbol j is the j-th store value in key order; zero values stay
// implicit because a zero symbol and an absent one encode identically.
SparseMessage values_message(const std::map<uint64_t, uint64_t>& store) {
    SparseMessage msg;
    msg.msgLen = store.size();
    uint64_t j = 0;
    for (const auto& [key, val] : store) {
        if (val != 0) msg.entries.emplace_back(j, Elem(val));
        ++j;
    }
    return msg;
}

// Signatures cover [k, k+L); every strictly longer gap to the next start
// must be matched by a residual holding exactly the gap bits.
void verify_tiling(const LevelGrowth& g, const BitString& y, const Params& p) {
    const SignatureStore& fin = g.snapshots.back();
    size_t matched = 0;
    for (auto it = fin.begin(); it != fin.end(); ++it) {
        uint64_t k = it->first;
        if (y.pack(k, p.L) != it->second) bug("stored signature disagrees with y");
        uint64_t d = pair_end(it, fin, y.size()) - k;
        if (d < p.L || d >= 2 * p.L) bug("final signature gap outside [L, 2L)");
        if (d == p.L) continue;
        auto res = g.residuals.find(k + p.L);
        if (res == g.residuals.end()) bug("gap has no residual");
        BitString bits = depad_residual(BitString::unpack(res->second, p.L));
        if (bits.size() != d - p.L) bug("residual length disagrees with gap");
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != y[k + p.L + i]) bug("residual bits disagree with y");
        ++matched;
    }
    if (matched != g.residuals.size()) bug("residual store has stray entries");
}

// Marker occurrences in a finished codeword are exactly the planted ones:
// every in-between position would overlap a planted marker, which the
// non-overlap property of the code forbids.
void verify_marker_placement(const BitString& cw, const Params& p, const MuCode& mu,
                             const std::vector<BitString>& mk) {
    std::map<uint64_t, uint64_t> planted;
    for (uint64_t l = 1; l <= p.t; ++l) {
        uint64_t off = p.instrumented_offset(l);
        for (uint64_t j = 0; j < p.chunk_count(); ++j)
            planted.emplace(off + j * p.marker_period(), l);
    }
    planted.emplace(p.info_offset(), 0);

    std::vector<uint64_t> mkPacked;
    for (const BitString& w : mk) mkPacked.push_back(w.pack(0, p.L));

    size_t seen = 0;
    for (const auto& [pos, val] : mu.scan(cw)) {
        size_t idx = 0;
        while (idx < mkPacked.size() && mkPacked[idx] != val) ++idx;
        if (idx == mkPacked.size()) {
            if (pos <= p.info_offset()) bug("stray codeword occurrence outside the payload");
            continue;
        }
        auto it = planted.find(pos);
        if (it == planted.end() || it->second != idx) bug("marker at an unplanted position");
        ++seen;
    }
    if (seen != planted.size()) bug("planted marker not found by scan");
}

const char* legit_reason(const LegitReport& rep) {
    switch (rep.kind) {
        case LegitReport::Kind::WindowNoSignature: return "payload is not legit: a window carries no signature";
        case LegitReport::Kind::DuplicateWindow: return "payload is not legit: repeated non-overlapping window";
        case LegitReport::Kind::MarkerPresent: return "payload is not legit: contains a marker";
        case LegitReport::Kind::None: break;
    }
    return "payload is not legit";
}

} // namespace

AdjacencyMatrix build_adjacency(const SignatureStore& sigs, const MuCode& mu) {
    if (sigs.empty()) throw ParamError("signature store is empty");
    AdjacencyMatrix A;
    A.muSize = mu.size();
    std::unordered_set<uint64_t> ranks;
    ranks.reserve(sigs.size());
    bool havePrev = false;
    uint64_t prevRank = 0, prevPos = 0;
    for (const auto& [pos, val] : sigs) {
        uint64_t r = mu.rank_packed(val);
        if (!ranks.insert(r).second) throw ParamError("duplicate signature value in store");
        if (havePrev) A.rows.emplace(prevRank, AdjacencyTarget{r, pos - prevPos});
        havePrev = true;
        prevRank = r;
        prevPos = pos;
    }
    return A;
}

Elem compress_row(const std::optional<AdjacencyTarget>& row, uint32_t L) {
    if (!row) return 0;
    Elem lim = Elem(1) << L;
    if (row->weight == 0) throw ParamError("adjacency weight must be nonzero");
    if (Elem(row->col) >= lim || Elem(row->weight) >= lim)
        throw ParamError("adjacency entry does not fit in L bits");
    return (Elem(row->col) << L) | Elem(row->weight);
}

std::optional<AdjacencyTarget> decompress_row(Elem e, uint32_t L) {
    if (e == 0) return std::nullopt;
    Elem mask = (Elem(1) << L) - 1;
    AdjacencyTarget t;
    t.weight = static_cast<uint64_t>(e & mask);
    t.col = static_cast<uint64_t>(e >> L);
    if (t.weight == 0) throw ParamError("compressed adjacency row has zero weight");
    return t;
}

BitString pad_residual(const BitString& s, uint32_t L) {
    if (s.size() >= L) throw ParamError("residual must be shorter than the signature length");
    BitString out = s;
    out.push_back(1);
    while (out.size() < L) out.push_back(0);
    return out;
}

BitString depad_residual(const BitString& padded) {
    size_t i = padded.size();
    while (i > 0 && padded[i - 1] == 0) --i;
    if (i == 0) throw ParamError("padded residual carries no delimiter bit");
    return padded.slice(0, i - 1);
}

LevelGrowth grow_levels(const SignatureStore& level0, const BitString& y, const Params& p) {
    const uint64_t L = p.L;
    LevelGrowth g;
    SignatureStore store = level0;

    auto record_residual = [&](uint64_t k, uint64_t kNext) {
        uint64_t v = k + L;
        uint64_t val = pad_residual(y.slice(v, kNext - v), p.L).pack(0, L);
        auto [it, inserted] = g.residuals.emplace(v, val);
        if (!inserted && it->second != val) bug("residual re-recorded with a different value");
    };

    for (uint32_t level = 1; level <= p.numLevels; ++level) {
        SignatureStore fresh;
        for (auto it = store.begin(); it != store.end(); ++it) {
            uint64_t k = it->first;
            uint64_t d = pair_end(it, store, y.size()) - k;
            if (d >= 2 * L) {
                uint64_t u = k + d / 2;
                fresh.emplace(u, y.pack(u, L));
            } else if (d > L) {
                record_residual(k, k + d);
            }
        }
        store.merge(fresh);
        if (!fresh.empty()) bug("midpoint signature collides with an existing key");
        g.snapshots.push_back(store);
    }

    // Pairs created by the last pass can still have a gap in (L, 2L); this
    // sweep makes the residual set a pure function of the final store.
    for (auto it = store.begin(); it != store.end(); ++it) {
        uint64_t d = pair_end(it, store, y.size()) - it->first;
        if (d > L && d < 2 * L) record_residual(it->first, it->first + d);
    }
    return g;
}

BitString instrument(const BitString& u, const BitString& marker, const Params& p) {
    if (u.size() != p.uLen) throw ParamError("redundancy string has the wrong length");
    if (marker.size() != p.L) throw ParamError("marker has the wrong length");
    BitString out;
    for (uint64_t off = 0; off < u.size(); off += p.chunk_bits()) {
        out.append(marker);
        out.append(u.slice(off, p.chunk_bits()));
    }
    return out;
}

BitString encode(const BitString& z, const Params& p, const MuCode& mu, EncodeTrace* trace) {
    LegitReport rep = check_legit(z, p, mu);
    if (!rep.ok) throw ParamError(legit_reason(rep));
    if (mu.size() != p.muSize) bug("marker code size disagrees with params");

    std::vector<BitString> mk = mu.markers(p.t);
    BitString y = mk[0];
    y.append(z);

    SignatureStore level0;
    for (const auto& [pos, val] : mu.scan(y)) level0.emplace(pos, val);
    if (level0.empty() || level0.begin()->first != 0) bug("m_0 not found at the head of y");

    AdjacencyMatrix A = build_adjacency(level0, mu);
    LevelGrowth g = grow_levels(level0, y, p);
    verify_tiling(g, y, p);

    const FieldSpec& fAdj = FieldSpec::get(p.fieldAdj);
    const FieldSpec& fSig = FieldSpec::get(p.fieldSig);

    RsCode adjCode = rs_make_code(p.fieldAdj, p.muSize, 4 * p.t);
    SparseMessage adjMsg;
    adjMsg.msgLen = p.muSize;
    for (const auto& [rank, target] : A.rows)
        adjMsg.entries.emplace_back(rank, compress_row(target, p.L));
    std::vector<Elem> adjPar = rs_encode(adjCode, adjMsg);

    std::vector<std::vector<Elem>> levelPar;
    for (const SignatureStore& snap : g.snapshots) {
        RsCode code = rs_make_code(p.fieldSig, snap.size(), 2 * p.t);
        levelPar.push_back(rs_encode(code, values_message(snap)));
    }

    RsCode resCode = rs_make_code(p.fieldSig, g.residuals.size(), 3 * p.t);
    std::vector<Elem> resPar = rs_encode(resCode, values_message(g.residuals));

    std::vector<BitString> redundancy;
    for (uint64_t l = 1; l <= p.t; ++l) {
        BitString u;
        for (uint64_t i = 0; i < 4; ++i) u.append(fAdj.to_bits(adjPar[4 * (l - 1) + i]));
        for (uint32_t lev = 0; lev < p.numLevels; ++lev) {
            u.append(fSig.to_bits(levelPar[lev][2 * (l - 1)]));
            u.append(fSig.to_bits(levelPar[lev][2 * (l - 1) + 1]));
        }
        for (uint64_t i = 0; i < 3; ++i) u.append(fSig.to_bits(resPar[3 * (l - 1) + i]));
        if (u.size() != p.uLen) bug("redundancy string length disagrees with layout");
        redundancy.push_back(std::move(u));
    }

    BitString cw;
    for (uint64_t l = p.t; l >= 1; --l) cw.append(instrument(redundancy[l - 1], mk[l], p));
    cw.append(y);
    if (cw.size() != p.n) bug("codeword length disagrees with n");
    verify_marker_placement(cw, p, mu, mk);

    if (trace) {
        trace->y = std::move(y);
        trace->level0 = std::move(level0);
        trace->adjacency = std::move(A);
        trace->snapshots = std::move(g.snapshots);
        trace->residuals = std::move(g.residuals);
        trace->redundancy = std::move(redundancy);
    }
    return cw;
}

} // namespace brc
