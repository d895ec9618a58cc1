#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "brc/channel.hpp"
#include "brc/decoder.hpp"
#include "brc/encoder.hpp"
#include "brc/error.hpp"
#include "brc/legit.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"
#include "doctest.h"

using namespace brc;

namespace {

BitString random_bits(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    BitString s;
    uint64_t word = 0;
    for (size_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng();
        s.push_back((word >> (i % 64)) & 1);
    }
    return s;
}

struct Fixture {
    Params p;
    MuCode mu;
    BitString z;
    BitString c;
    EncodeTrace trace;
};

Fixture make_fixture(uint64_t m, uint64_t t, uint32_t cfg, uint64_t seed) {
    Params p = derive_params(m, t, cfg);
    MuCode mu(p.L);
    BitString z = sample_legit(p, mu, seed).z;
    EncodeTrace trace;
    BitString c = encode(z, p, mu, &trace);
    return {std::move(p), std::move(mu), std::move(z), std::move(c), std::move(trace)};
}

// Seed whose payload carries at least `want` natural signatures.
uint64_t seed_with_sigs(uint64_t m, uint64_t t, uint32_t cfg, size_t want) {
    Params p = derive_params(m, t, cfg);
    MuCode mu(p.L);
    for (uint64_t seed = 0;; ++seed) {
        REQUIRE(seed < 2000);
        if (mu.scan(sample_legit(p, mu, seed).z).size() >= want) return seed;
    }
}

void roundtrip(const Fixture& fx, const FragmentMultiset& frags, DecodeStats* stats = nullptr) {
    DecodeOptions opt;
    opt.truthY = &fx.trace.y;
    opt.stats = stats;
    BitString got = decode(frags, fx.p, fx.mu, opt);
    REQUIRE(got == fx.z);
}

bool same_rows(const AdjacencyMatrix& a, const AdjacencyMatrix& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (const auto& [k, v] : a.rows) {
        auto it = b.rows.find(k);
        if (it == b.rows.end() || !(it->second == v)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("partial string tracks knowledge and rejects contradictions") {
    PartialString ps(8);
    CHECK(ps.size() == 8);
    CHECK(ps.unknown_count() == 8);
    CHECK_FALSE(ps.known(0));

    ps.write(0, 1);
    CHECK(ps.known(0));
    CHECK(ps.get(0) == 1);
    CHECK(ps.unknown_count() == 7);
    ps.write(0, 1); // re-writing the same value is fine
    CHECK(ps.unknown_count() == 7);
    CHECK_THROWS_AS(ps.write(0, 0), DecodeConflict);

    ps.write_str(5, BitString::from_string("101"));
    CHECK(ps.get(5) == 1);
    CHECK(ps.get(6) == 0);
    CHECK(ps.get(7) == 1);
    CHECK_THROWS_AS(ps.write_str(7, BitString::from_string("10")), DecodeConflict);
    CHECK_THROWS_AS(ps.write(8, 0), DecodeConflict);

    CHECK(ps.compatible(5, BitString::from_string("101")));
    CHECK(ps.compatible(1, BitString::from_string("0011"))); // all-unknown span
    CHECK_FALSE(ps.compatible(5, BitString::from_string("111")));
    CHECK_FALSE(ps.compatible(7, BitString::from_string("10"))); // out of bounds

    CHECK_THROWS_AS(ps.to_bits(), DecodeFailure);
    for (size_t i = 1; i < 5; ++i) ps.write(i, 0);
    CHECK(ps.to_bits() == BitString::from_string("10000101"));
}

TEST_CASE("partial string checks the harness ground truth") {
    BitString truth = BitString::from_string("10110100");
    PartialString ps(8, &truth);
    ps.write(0, 1);
    CHECK_THROWS_AS(ps.write(1, 1), DecodeConflict); // truth says 0
    CHECK_THROWS_AS(PartialString(7, &truth), ParamError);
}

TEST_CASE("classification splits at the anchor and partitions fragments") {
    Fixture fx = make_fixture(256, 2, 3, 1);
    const Params& p = fx.p;

    SUBCASE("whole codeword becomes one redundancy and one information fragment") {
        FragmentClassification cls = split_and_classify({fx.c}, p, fx.mu);
        REQUIRE(cls.rFragments.size() == 1);
        REQUIRE(cls.zFragments.size() == 1);
        CHECK(cls.discarded.empty());
        CHECK(cls.rFragments[0] == fx.c.slice(0, p.info_offset()));
        CHECK(cls.zFragments[0] == fx.trace.y);
    }

    SUBCASE("a marker anywhere makes a redundancy fragment") {
        BitString f = fx.mu.markers(p.t)[1];
        f.append(random_bits(30, 7));
        FragmentClassification cls = split_and_classify({f}, p, fx.mu);
        REQUIRE(cls.rFragments.size() == 1);
        CHECK(cls.zFragments.empty());
        CHECK(cls.discarded.empty());
    }

    SUBCASE("short fragment with no occurrence is discarded") {
        BitString f(2 * p.L); // all zeros: no codeword ends in 0
        FragmentClassification cls = split_and_classify({f}, p, fx.mu);
        CHECK(cls.rFragments.empty());
        CHECK(cls.zFragments.empty());
        REQUIRE(cls.discarded.size() == 1);
    }

    SUBCASE("fragment containing the anchor splits before it") {
        BitString f = BitString::from_string("11");
        f.append(fx.trace.y.slice(0, p.L + 2));
        FragmentClassification cls = split_and_classify({f}, p, fx.mu);
        REQUIRE(cls.zFragments.size() == 1);
        CHECK(cls.zFragments[0] == fx.trace.y.slice(0, p.L + 2));
        REQUIRE(cls.discarded.size() == 1);
        CHECK(cls.discarded[0] == BitString::from_string("11"));
    }

    SUBCASE("long marker-free fragment is information even without occurrences") {
        // Tail of the payload, long enough to keep regardless of content.
        BitString f = fx.trace.y.slice(fx.trace.y.size() - 3 * p.L, 3 * p.L);
        FragmentClassification cls = split_and_classify({f}, p, fx.mu);
        CHECK(cls.rFragments.empty());
        REQUIRE(cls.zFragments.size() == 1);
    }
}

TEST_CASE("redundancy strings survive exactly when their full run does") {
    Fixture fx = make_fixture(256, 2, 3, 2);
    const Params& p = fx.p;

    SUBCASE("whole codeword yields every string") {
        FragmentClassification cls = split_and_classify({fx.c}, p, fx.mu);
        auto strings = extract_redundancy_strings(cls.rFragments, p, fx.mu);
        REQUIRE(strings.size() == 2);
        CHECK(strings.at(1) == fx.trace.redundancy[0]);
        CHECK(strings.at(2) == fx.trace.redundancy[1]);
    }

    SUBCASE("a cut inside a region loses exactly that string") {
        uint64_t cut = p.instrumented_offset(2) + p.instrumented_len() / 2;
        FragmentClassification cls = split_and_classify(break_at(fx.c, {{cut}}), p, fx.mu);
        auto strings = extract_redundancy_strings(cls.rFragments, p, fx.mu);
        REQUIRE(strings.size() == 1);
        CHECK(strings.count(1) == 1);
        CHECK(strings.at(1) == fx.trace.redundancy[0]);
    }

    SUBCASE("a run with wrong spacing yields nothing") {
        BitString marker = fx.mu.markers(p.t)[1];
        BitString f;
        for (uint64_t j = 0; j < p.chunk_count(); ++j) {
            f.append(marker);
            f.append(BitString(p.chunk_bits() + 1)); // one filler bit too many
        }
        auto strings = extract_redundancy_strings({f}, p, fx.mu);
        CHECK(strings.empty());
    }

    SUBCASE("differing duplicate recoveries are a conflict") {
        BitString u2 = fx.trace.redundancy[1];
        u2.set(17, u2[17] ^ 1);
        BitString f1 = instrument(fx.trace.redundancy[1], fx.mu.markers(p.t)[2], p);
        BitString f2 = instrument(u2, fx.mu.markers(p.t)[2], p);
        CHECK_THROWS_AS(extract_redundancy_strings({f1, f2}, p, fx.mu), DecodeConflict);
        // Identical duplicates are fine.
        auto strings = extract_redundancy_strings({f1, f1}, p, fx.mu);
        CHECK(strings.at(2) == fx.trace.redundancy[1]);
    }
}

TEST_CASE("approximate adjacency is exact on surviving pairs") {
    uint64_t seed = seed_with_sigs(256, 2, 3, 2);
    Fixture fx = make_fixture(256, 2, 3, seed);
    const Params& p = fx.p;
    REQUIRE(fx.trace.level0.size() >= 3);

    SUBCASE("unbroken payload reproduces the full matrix") {
        FragmentClassification cls = split_and_classify({fx.c}, p, fx.mu);
        AdjacencyMatrix approx = extract_approx_adjacency(cls.zFragments, p, fx.mu);
        CHECK(same_rows(approx, fx.trace.adjacency));
    }

    SUBCASE("a cut inside a signature removes its two incident rows") {
        std::vector<std::pair<uint64_t, uint64_t>> sigs(fx.trace.level0.begin(),
                                                        fx.trace.level0.end());
        uint64_t cut = p.info_offset() + sigs[1].first + p.L / 2;
        FragmentClassification cls = split_and_classify(break_at(fx.c, {{cut}}), p, fx.mu);
        AdjacencyMatrix approx = extract_approx_adjacency(cls.zFragments, p, fx.mu);

        AdjacencyMatrix expect = fx.trace.adjacency;
        expect.rows.erase(fx.mu.rank_packed(sigs[0].second));
        expect.rows.erase(fx.mu.rank_packed(sigs[1].second));
        CHECK(same_rows(approx, expect));
    }

    SUBCASE("conflicting rows across fragments are rejected") {
        std::vector<std::pair<uint64_t, uint64_t>> sigs(fx.trace.level0.begin(),
                                                        fx.trace.level0.end());
        uint64_t pos = sigs[1].first;
        BitString f1 = fx.trace.y.slice(0, pos + p.L + 4);
        BitString f2 = f1;
        uint64_t altRank = fx.mu.rank_packed(sigs[1].second) == 5 ? 6 : 5;
        BitString alt = fx.mu.unrank(altRank);
        for (uint64_t b = 0; b < p.L; ++b) f2.set(pos + b, alt[b]);
        CHECK_THROWS_AS(
            extract_approx_adjacency({f1, f2}, p, fx.mu), DecodeConflict);
    }
}

TEST_CASE("adjacency repair recovers deletions within the break budget") {
    const uint64_t t = 2;
    for (uint64_t seed = 0; seed < 8; ++seed) {
        Fixture fx = make_fixture(256, t, 3, seed);
        std::map<uint64_t, BitString> full = {{1, fx.trace.redundancy[0]},
                                              {2, fx.trace.redundancy[1]}};
        std::mt19937_64 rng(seed * 977 + 13);
        for (int trial = 0; trial < 25; ++trial) {
            uint64_t t1 = rng() % (t + 1);
            uint64_t t2 = rng() % (t - t1 + 1);

            AdjacencyMatrix approx = fx.trace.adjacency;
            uint64_t wantDrop = std::min<uint64_t>(2 * t1, approx.rows.size());
            while (approx.rows.size() > fx.trace.adjacency.rows.size() - wantDrop) {
                auto it = approx.rows.begin();
                std::advance(it, rng() % approx.rows.size());
                approx.rows.erase(it);
            }
            auto strings = full;
            for (uint64_t k = 0; k < t2; ++k)
                strings.erase(strings.begin()->first);

            AdjacencyMatrix repaired = repair_adjacency(approx, strings, fx.p);
            CHECK(same_rows(repaired, fx.trace.adjacency));
        }
    }
}

TEST_CASE("adjacency repair fails loudly beyond the budget") {
    // Three missing rows with one string lost costs 2*3 + 4 = 10 > 4t = 8.
    // With every string lost there is no detection power at all, so the
    // overrun must be provoked while some parity survives.
    uint64_t seed = seed_with_sigs(1024, 2, 3, 5);
    Fixture fx = make_fixture(1024, 2, 3, seed);
    REQUIRE(fx.trace.adjacency.rows.size() >= 4);
    AdjacencyMatrix approx = fx.trace.adjacency;
    for (int k = 0; k < 3; ++k) approx.rows.erase(approx.rows.begin());
    std::map<uint64_t, BitString> strings = {{1, fx.trace.redundancy[0]}};
    CHECK_THROWS_AS(repair_adjacency(approx, strings, fx.p), DecodeFailure);
}

TEST_CASE("unbroken codeword decodes with zero repair") {
    for (auto [m, t] : {std::pair<uint64_t, uint64_t>{256, 1}, {256, 2}, {1024, 2}}) {
        Fixture fx = make_fixture(m, t, 3, 3);
        DecodeStats stats;
        roundtrip(fx, {fx.c}, &stats);
        CHECK(stats.discardedFragments == 0);
        CHECK(stats.missingStrings == 0);
        CHECK(stats.adjacencyRepaired == 0);
        REQUIRE(stats.levelErasures.size() == fx.p.numLevels);
        for (uint64_t e : stats.levelErasures) CHECK(e == 0);
        CHECK(stats.residualErasures == 0);
        CHECK(stats.leftoverFragments == 0);
    }
}

TEST_CASE("round trips across strategies, seeds, and short-fragment loss") {
    const char* strategies[] = {"uniform", "signature-target", "marker-target",
                                "boundary-target"};
    for (auto [m, t] : {std::pair<uint64_t, uint64_t>{256, 1}, {256, 2}, {1024, 2}}) {
        for (uint64_t seed = 0; seed < 6; ++seed) {
            Fixture fx = make_fixture(m, t, 3, seed);
            for (const char* strategy : strategies) {
                BreakPattern pat = attack(strategy, fx.c, fx.p, fx.mu, seed + 100);
                FragmentMultiset frags = break_at(fx.c, pat);
                roundtrip(fx, frags);
                roundtrip(fx, drop_short(frags, fx.p.L, fx.p));

                FragmentMultiset shuffled = frags;
                std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(uint32_t(seed)));
                roundtrip(fx, shuffled);
            }
        }
    }
}

TEST_CASE("round trips at the largest supported break budget") {
    for (uint64_t seed = 0; seed < 3; ++seed) {
        Fixture fx = make_fixture(1024, 4, 3, seed);
        for (const char* strategy : {"uniform", "signature-target", "marker-target"}) {
            FragmentMultiset frags = break_at(fx.c, attack(strategy, fx.c, fx.p, fx.mu, seed));
            roundtrip(fx, frags);
        }
    }
}

TEST_CASE("single cuts round trip at every region boundary") {
    Fixture fx = make_fixture(256, 1, 3, 5);
    const Params& p = fx.p;
    std::set<uint64_t> cuts;
    for (uint64_t x : {uint64_t(1), uint64_t(p.L - 1), uint64_t(p.L),
                       p.instrumented_len() - 1, p.instrumented_len(),
                       p.instrumented_len() + 1, p.info_offset() - 1, p.info_offset(),
                       p.info_offset() + 1, p.info_offset() + p.L / 2,
                       p.info_offset() + p.L - 1, p.info_offset() + p.L,
                       p.n - p.L, p.n - 1})
        cuts.insert(x);
    for (uint64_t x = 1; x < p.n; x += 37) cuts.insert(x); // sampled sweep
    for (uint64_t x : cuts) {
        CAPTURE(x);
        roundtrip(fx, break_at(fx.c, {{x}}));
    }
}

TEST_CASE("payload without natural signatures still round trips") {
    Params p = derive_params(256, 2, 3);
    MuCode mu(p.L);
    uint64_t seed = 0;
    for (;; ++seed) {
        REQUIRE(seed < 500);
        if (mu.scan(sample_legit(p, mu, seed).z).empty()) break;
    }
    Fixture fx = make_fixture(256, 2, 3, seed);
    REQUIRE(fx.trace.level0.size() == 1);

    roundtrip(fx, {fx.c});
    roundtrip(fx, break_at(fx.c, attack("uniform", fx.c, fx.p, fx.mu, 9)));
    roundtrip(fx, break_at(fx.c, {{fx.p.n / 3, 2 * fx.p.n / 3}}));
}

TEST_CASE("decode succeeds with every redundancy string destroyed") {
    // One interior cut per instrumented region kills all strings; the intact
    // information region must carry the day on its own.
    Fixture fx = make_fixture(256, 2, 3, 11);
    BreakPattern pat = attack("marker-target", fx.c, fx.p, fx.mu, 4);
    DecodeStats stats;
    roundtrip(fx, break_at(fx.c, pat), &stats);
    CHECK(stats.missingStrings == 2);
}

TEST_CASE("decode repairs severed signatures and reports it") {
    uint64_t seed = seed_with_sigs(256, 2, 3, 2);
    Fixture fx = make_fixture(256, 2, 3, seed);
    BreakPattern pat = attack("signature-target", fx.c, fx.p, fx.mu, 21);
    REQUIRE(!pat.positions.empty());
    DecodeStats stats;
    roundtrip(fx, break_at(fx.c, pat), &stats);
    CHECK(stats.adjacencyRepaired >= 1);
}

TEST_CASE("tampered evidence is rejected by the truth harness") {
    // The tamper must hit a pure information fragment: redundancy-region
    // flips are legitimately absorbed by error correction.
    Fixture fx = make_fixture(256, 2, 3, 13);
    uint64_t a = fx.p.info_offset() + 50, b = fx.p.info_offset() + 150;
    FragmentMultiset frags = break_at(fx.c, {{a, b}});
    BitString middle = fx.trace.y.slice(50, 100);
    auto it = std::find(frags.begin(), frags.end(), middle);
    REQUIRE(it != frags.end());
    it->set(50, (*it)[50] ^ 1);
    DecodeOptions opt;
    opt.truthY = &fx.trace.y;
    CHECK_THROWS_AS(decode(frags, fx.p, fx.mu, opt), DecodeFailure);
}

TEST_CASE("malformed inputs raise parameter errors") {
    Fixture fx = make_fixture(256, 1, 3, 0);
    FragmentMultiset over = {fx.c, BitString::from_string("0")};
    CHECK_THROWS_AS(decode(over, fx.p, fx.mu), ParamError);

    MuCode wrong(fx.p.L + 4);
    CHECK_THROWS_AS(decode({fx.c}, fx.p, wrong), ParamError);

    CHECK_THROWS_AS(decode({}, fx.p, fx.mu), DecodeFailure);
}
