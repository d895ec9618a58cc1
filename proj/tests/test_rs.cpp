#include "doctest.h"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "brc/error.hpp"
#include "brc/gf.hpp"
#include "brc/rng.hpp"
#include "brc/rs.hpp"

using brc::Elem;
using brc::FieldSpec;
using brc::ReceivedWord;
using brc::RsCode;
using brc::SparseMessage;

namespace {

// Schoolbook long-division oracle: parity of msg(x) * x^P modulo gen,
// independent of the library's power-ladder path.
std::vector<Elem> dense_parity(const FieldSpec& f, const std::vector<Elem>& msg,
                               const std::vector<Elem>& gen) {
    size_t P = gen.size() - 1;
    std::vector<Elem> work(P + msg.size(), 0);
    for (size_t j = 0; j < msg.size(); ++j) work[P + j] = msg[j];
    for (size_t top = work.size(); top-- > P;) {
        Elem lead = work[top];
        if (lead == 0) continue;
        for (size_t i = 0; i <= P; ++i) work[top - P + i] ^= f.mul(lead, gen[i]);
    }
    std::vector<Elem> par(P);
    for (size_t i = 0; i < P; ++i) par[i] = work[P - 1 - i];
    return par;
}

SparseMessage to_sparse(uint64_t msgLen, const std::vector<Elem>& dense) {
    SparseMessage m;
    m.msgLen = msgLen;
    for (uint64_t j = 0; j < dense.size(); ++j)
        if (dense[j] != 0) m.entries.emplace_back(j, dense[j]);
    return m;
}

Elem rand_elem(brc::SplitMix64& rng, const FieldSpec& f) {
    Elem v = rng.next();
    if (f.width() > 64) v = (v << 64) | rng.next();
    return v & f.mask();
}

Elem rand_nonzero(brc::SplitMix64& rng, const FieldSpec& f) {
    Elem v;
    do v = rand_elem(rng, f);
    while (v == 0);
    return v;
}

// Dense symbol view of a codeword: message symbols then parity symbols.
std::vector<Elem> dense_codeword(const RsCode& code, const std::vector<Elem>& msg) {
    std::vector<Elem> word = msg;
    for (Elem p : brc::rs_encode(code, to_sparse(code.msgLen, msg))) word.push_back(p);
    return word;
}

ReceivedWord to_received(const RsCode& code, const std::vector<Elem>& word,
                         const std::set<uint64_t>& erased) {
    ReceivedWord r;
    r.msgLen = code.msgLen;
    for (uint64_t j = 0; j < code.msgLen; ++j) {
        if (erased.count(j))
            r.msgErasures.push_back(j);
        else
            r.msgSymbols.emplace_back(j, word[j]);
    }
    for (uint32_t i = 0; i < code.parityCount; ++i) {
        if (erased.count(code.msgLen + i))
            r.parity.push_back(std::nullopt);
        else
            r.parity.push_back(word[code.msgLen + i]);
    }
    return r;
}

} // namespace

TEST_CASE("rs generator is monic with roots at consecutive alpha powers") {
    for (uint32_t w : {8u, 24u, 48u}) {
        const FieldSpec& f = FieldSpec::get(w);
        RsCode code = brc::rs_make_code(w, 20, 6);
        CHECK(code.generator.size() == 7);
        CHECK((code.generator.back() == 1));
        Elem root = 1;
        for (uint32_t l = 1; l <= 6; ++l) {
            root = f.mul(root, f.alpha());
            Elem acc = 0;
            for (size_t i = code.generator.size(); i-- > 0;)
                acc = f.mul(acc, root) ^ code.generator[i];
            CHECK((acc == 0));
        }
        // alpha^0 is not a root, so the systematic word cannot be shortened.
        Elem acc = 0;
        for (size_t i = code.generator.size(); i-- > 0;) acc = f.mul(acc, Elem(1)) ^ code.generator[i];
        CHECK((acc != 0));
    }
}

TEST_CASE("rs sparse encode matches the dense long-division oracle") {
    for (uint32_t w : {8u, 24u, 48u}) {
        const FieldSpec& f = FieldSpec::get(w);
        brc::SplitMix64 rng(0xd15e00 + w);
        RsCode code = brc::rs_make_code(w, 64, 8);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Elem> msg(64, 0);
            for (auto& v : msg)
                if (rng.below(3) != 0) v = rand_elem(rng, f);
            auto sparse = brc::rs_encode(code, to_sparse(64, msg));
            auto dense = dense_parity(f, msg, code.generator);
            CHECK((sparse == dense));
        }
    }
}

TEST_CASE("rs encode is linear and zero on the zero message") {
    const FieldSpec& f = FieldSpec::get(8);
    RsCode code = brc::rs_make_code(8, 32, 4);
    auto zero = brc::rs_encode(code, SparseMessage{32, {}});
    for (Elem p : zero) CHECK((p == 0));
    brc::SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Elem> a(32, 0), b(32, 0);
        for (uint64_t j = 0; j < 32; ++j) {
            if (rng.below(2)) a[j] = rand_elem(rng, f);
            if (rng.below(2)) b[j] = rand_elem(rng, f);
        }
        std::vector<Elem> s(32);
        for (uint64_t j = 0; j < 32; ++j) s[j] = a[j] ^ b[j];
        auto pa = brc::rs_encode(code, to_sparse(32, a));
        auto pb = brc::rs_encode(code, to_sparse(32, b));
        auto ps = brc::rs_encode(code, to_sparse(32, s));
        for (uint32_t i = 0; i < 4; ++i) CHECK((ps[i] == (pa[i] ^ pb[i])));
    }
}

TEST_CASE("rs decode round-trips random errors and erasures within budget") {
    for (uint32_t w : {8u, 24u}) {
        const FieldSpec& f = FieldSpec::get(w);
        brc::SplitMix64 rng(0xfaded + w);
        RsCode code = brc::rs_make_code(w, 40, 8);
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<Elem> msg(40, 0);
            for (auto& v : msg)
                if (rng.below(2)) v = rand_elem(rng, f);
            auto word = dense_codeword(code, msg);
            uint32_t e = uint32_t(rng.below(5));
            uint32_t fe = uint32_t(rng.below(9 - 2 * e));
            std::set<uint64_t> touched, erased;
            auto corrupted = word;
            for (uint32_t i = 0; i < e; ++i) {
                uint64_t pos;
                do pos = rng.below(48);
                while (touched.count(pos));
                touched.insert(pos);
                corrupted[pos] ^= rand_nonzero(rng, f);
            }
            for (uint32_t i = 0; i < fe; ++i) {
                uint64_t pos;
                do pos = rng.below(48);
                while (touched.count(pos));
                touched.insert(pos);
                erased.insert(pos);
            }
            auto got = brc::rs_decode(code, to_received(code, corrupted, erased));
            REQUIRE(got.has_value());
            CHECK((got->entries == to_sparse(40, msg).entries));
        }
    }
}

TEST_CASE("rs decode spec shape: one error plus two erasures over gf(2^8)") {
    const FieldSpec& f = FieldSpec::get(8);
    RsCode code = brc::rs_make_code(8, 4, 4);
    brc::SplitMix64 rng(0x1e2e);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<Elem> msg(4);
        for (auto& v : msg) v = rand_elem(rng, f);
        auto word = dense_codeword(code, msg);
        auto corrupted = word;
        uint64_t epos = rng.below(8);
        corrupted[epos] ^= rand_nonzero(rng, f);
        std::set<uint64_t> erased;
        while (erased.size() < 2) {
            uint64_t pos = rng.below(8);
            if (pos != epos) erased.insert(pos);
        }
        auto got = brc::rs_decode(code, to_received(code, corrupted, erased));
        REQUIRE(got.has_value());
        CHECK((got->entries == to_sparse(4, msg).entries));
    }
}

TEST_CASE("rs erasure-only decode works at the full parity budget") {
    const FieldSpec& f = FieldSpec::get(24);
    RsCode code = brc::rs_make_code(24, 20, 6);
    brc::SplitMix64 rng(0xe0e0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Elem> msg(20);
        for (auto& v : msg) v = rand_elem(rng, f);
        auto word = dense_codeword(code, msg);
        std::set<uint64_t> erased;
        while (erased.size() < 6) erased.insert(rng.below(26));
        auto got = brc::rs_decode(code, to_received(code, word, erased));
        REQUIRE(got.has_value());
        CHECK((got->entries == to_sparse(20, msg).entries));
    }
    // One erasure past the budget is a reported failure, not an exception.
    std::vector<Elem> msg(20);
    for (auto& v : msg) v = rand_elem(rng, f);
    auto word = dense_codeword(code, msg);
    std::set<uint64_t> erased;
    while (erased.size() < 7) erased.insert(rng.below(26));
    CHECK_FALSE(brc::rs_decode(code, to_received(code, word, erased)).has_value());
}

TEST_CASE("rs decode never claims success beyond guarantee: nearest-codeword oracle") {
    const FieldSpec& f = FieldSpec::get(8);
    RsCode code = brc::rs_make_code(8, 2, 4);
    // All 2^16 codewords of the toy code, as dense 6-symbol words.
    std::vector<std::vector<Elem>> words;
    words.reserve(65536);
    for (uint32_t a = 0; a < 256; ++a)
        for (uint32_t b = 0; b < 256; ++b)
            words.push_back(dense_codeword(code, {Elem(a), Elem(b)}));
    auto dist = [](const std::vector<Elem>& x, const std::vector<Elem>& y) {
        uint32_t d = 0;
        for (size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]);
        return d;
    };
    brc::SplitMix64 gen(0x04ac1e);
    for (int trial = 0; trial < 3000; ++trial) {
        const auto& cw = words[gen.below(65536)];
        auto recvWord = cw;
        uint32_t k = uint32_t(gen.below(4)); // 0..3 injected errors
        std::set<uint64_t> touched;
        for (uint32_t i = 0; i < k; ++i) {
            uint64_t pos;
            do pos = gen.below(6);
            while (touched.count(pos));
            touched.insert(pos);
            recvWord[pos] ^= rand_nonzero(gen, f);
        }
        uint32_t dmin = 7;
        for (const auto& w : words) dmin = std::min(dmin, dist(w, recvWord));
        auto got = brc::rs_decode(code, to_received(code, recvWord, {}));
        if (got.has_value()) {
            std::vector<Elem> outMsg(2, 0);
            for (auto& [pos, val] : got->entries) outMsg[pos] = val;
            auto outWord = dense_codeword(code, outMsg);
            uint32_t e = dist(outWord, recvWord);
            CHECK(2 * e <= 4);
            CHECK(e == dmin);
        } else {
            CHECK(dmin > 2);
        }
    }
}

TEST_CASE("rs sparse decode recovers missing symbols at huge message lengths") {
    RsCode code = brc::rs_make_code(48, uint64_t(1) << 30, 8);
    const FieldSpec& f = *code.field;
    brc::SplitMix64 rng(0xb16b16);
    for (int trial = 0; trial < 20; ++trial) {
        SparseMessage msg;
        msg.msgLen = code.msgLen;
        std::set<uint64_t> positions;
        while (positions.size() < 5) positions.insert(rng.below(code.msgLen));
        for (uint64_t pos : positions) msg.entries.emplace_back(pos, rand_nonzero(rng, f));
        auto parity = brc::rs_encode(code, msg);
        ReceivedWord recv;
        recv.msgLen = code.msgLen;
        // Drop two symbols: errors at positions the decoder cannot know.
        for (size_t i = 0; i < msg.entries.size(); ++i)
            if (i != 1 && i != 3) recv.msgSymbols.push_back(msg.entries[i]);
        for (uint32_t i = 0; i < 8; ++i) {
            if (i == 2 || i == 5)
                recv.parity.push_back(std::nullopt);
            else
                recv.parity.push_back(parity[i]);
        }
        auto got = brc::rs_decode(code, recv);
        REQUIRE(got.has_value());
        CHECK((got->entries == msg.entries));
    }
}

TEST_CASE("rs decode is deterministic") {
    RsCode code = brc::rs_make_code(48, uint64_t(1) << 20, 8);
    const FieldSpec& f = *code.field;
    brc::SplitMix64 rng(0xdead);
    SparseMessage msg;
    msg.msgLen = code.msgLen;
    for (uint64_t pos : {7ull, 999ull, 65536ull, 1000000ull})
        msg.entries.emplace_back(pos, rand_nonzero(rng, f));
    auto parity = brc::rs_encode(code, msg);
    ReceivedWord recv;
    recv.msgLen = code.msgLen;
    recv.msgSymbols = {msg.entries[0], msg.entries[2]};
    for (uint32_t i = 0; i < 8; ++i) recv.parity.push_back(parity[i]);
    auto a = brc::rs_decode(code, recv);
    auto b = brc::rs_decode(code, recv);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK((a->entries == b->entries));
    CHECK((a->entries == msg.entries));
}

TEST_CASE("rs error decode beyond the discrete log cap is refused, erasures still work") {
    RsCode code = brc::rs_make_code(96, uint64_t(1) << 45, 4);
    const FieldSpec& f = *code.field;
    brc::SplitMix64 rng(0xcab);
    SparseMessage msg;
    msg.msgLen = code.msgLen;
    for (uint64_t pos : {uint64_t(123), (uint64_t(1) << 44) + 9, (uint64_t(1) << 45) - 2})
        msg.entries.emplace_back(pos, rand_nonzero(rng, f));
    auto parity = brc::rs_encode(code, msg);

    ReceivedWord erasureOnly;
    erasureOnly.msgLen = code.msgLen;
    erasureOnly.msgSymbols = msg.entries;
    erasureOnly.parity = {parity[0], std::nullopt, parity[2], std::nullopt};
    auto got = brc::rs_decode(code, erasureOnly);
    REQUIRE(got.has_value());
    CHECK((got->entries == msg.entries));

    ReceivedWord withError = erasureOnly;
    withError.parity = {parity[0], parity[1], parity[2], parity[3]};
    withError.msgSymbols.erase(withError.msgSymbols.begin());
    CHECK_THROWS_AS(brc::rs_decode(code, withError), brc::ParamError);
}

TEST_CASE("rs input validation") {
    RsCode code = brc::rs_make_code(8, 10, 4);
    CHECK_THROWS_AS(brc::rs_make_code(8, 300, 4), brc::ParamError);
    CHECK_THROWS_AS(brc::rs_make_code(8, 10, 0), brc::ParamError);
    CHECK_THROWS_AS(brc::rs_encode(code, SparseMessage{9, {}}), brc::ParamError);
    CHECK_THROWS_AS(brc::rs_encode(code, SparseMessage{10, {{11, 1}}}), brc::ParamError);
    CHECK_THROWS_AS(brc::rs_encode(code, SparseMessage{10, {{3, 1}, {3, 2}}}), brc::ParamError);
    CHECK_THROWS_AS(brc::rs_encode(code, SparseMessage{10, {{3, 0}}}), brc::ParamError);

    ReceivedWord recv;
    recv.msgLen = 10;
    recv.parity = {Elem(0), Elem(0), Elem(0)};
    CHECK_THROWS_AS(brc::rs_decode(code, recv), brc::ParamError);
    recv.parity.push_back(Elem(0));
    recv.msgSymbols = {{4, 1}};
    recv.msgErasures = {4};
    CHECK_THROWS_AS(brc::rs_decode(code, recv), brc::ParamError);
}

TEST_CASE("rs zero-length message degenerates cleanly") {
    RsCode code = brc::rs_make_code(8, 0, 3);
    auto parity = brc::rs_encode(code, SparseMessage{0, {}});
    for (Elem p : parity) CHECK((p == 0));
    ReceivedWord recv;
    recv.msgLen = 0;
    recv.parity = {parity[0], std::nullopt, parity[2]};
    auto got = brc::rs_decode(code, recv);
    REQUIRE(got.has_value());
    CHECK(got->entries.empty());
}
