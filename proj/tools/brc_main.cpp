#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "brc/channel.hpp"
#include "brc/decoder.hpp"
#include "brc/encoder.hpp"
#include "brc/error.hpp"
#include "brc/io.hpp"
#include "brc/legit.hpp"
#include "brc/mu.hpp"
#include "brc/params.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw brc::ParamError("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out.good()) throw brc::ParamError("cannot write " + path);
}

struct EncodeArgs {
    uint64_t m = 0, t = 0, seed = 0;
    uint32_t c = 0;
    std::string out, zFile;
};

int run_encode(const EncodeArgs& a) {
    brc::Params p = brc::derive_params(a.m, a.t, a.c);
    brc::MuCode mu(p.L);
    brc::BitString z;
    if (!a.zFile.empty()) {
        brc::FragmentFile zf = brc::load_fragment_file(a.zFile);
        if (zf.m != a.m || zf.t != a.t || zf.c != a.c)
            throw brc::ParamError("payload file header disagrees with the flags");
        if (zf.lines.size() != 1)
            throw brc::ParamError("payload file must contain exactly one line");
        z = zf.lines[0];
    } else {
        z = brc::sample_legit(p, mu, a.seed).z;
    }
    brc::BitString cw = brc::encode(z, p, mu);
    brc::store_fragment_file(a.out, {a.m, a.t, a.c, {cw}});
    brc::store_fragment_file(a.out + ".truth", {a.m, a.t, a.c, {z}});
    return 0;
}

struct BreakArgs {
    std::string in, strategy, out;
    uint64_t seed = 0, dropShort = 0;
};

int run_break(const BreakArgs& a) {
    brc::FragmentFile in = brc::load_fragment_file(a.in);
    brc::Params p = brc::derive_params(in.m, in.t, in.c);
    brc::MuCode mu(p.L);
    if (in.lines.size() != 1) throw brc::ParamError("codeword file must contain exactly one line");
    const brc::BitString& cw = in.lines[0];

    brc::BreakPattern pat = brc::attack(a.strategy, cw, p, mu, a.seed);
    brc::FragmentMultiset frags = brc::break_at(cw, pat);
    if (a.dropShort > 0) frags = brc::drop_short(frags, a.dropShort, p);
    brc::store_fragment_file(a.out, {in.m, in.t, in.c, frags});

    std::string side;
    for (size_t i = 0; i < pat.positions.size(); ++i) {
        if (i) side += ' ';
        side += std::to_string(pat.positions[i]);
    }
    side += '\n';
    write_text(a.out + ".pattern", side);
    return 0;
}

struct DecodeArgs {
    std::string in, out;
};

int run_decode(const DecodeArgs& a) {
    brc::FragmentFile in = brc::load_fragment_file(a.in);
    brc::Params p = brc::derive_params(in.m, in.t, in.c);
    brc::MuCode mu(p.L);
    brc::FragmentMultiset frags(in.lines.begin(), in.lines.end());
    std::sort(frags.begin(), frags.end());
    brc::BitString z = brc::decode(frags, p, mu);
    brc::store_fragment_file(a.out, {in.m, in.t, in.c, {z}});
    return 0;
}

struct VerifyArgs {
    uint64_t m = 0, t = 0, seed = 0, trials = 100;
    uint32_t c = 0;
    std::string strategy = "uniform";
};

int run_verify(const VerifyArgs& a) {
    brc::Params p = brc::derive_params(a.m, a.t, a.c);
    brc::MuCode mu(p.L);
    uint64_t ok = 0, attempts = 0;
    double sampleMs = 0, encodeMs = 0, breakMs = 0, decodeMs = 0;
    for (uint64_t i = 0; i < a.trials; ++i) {
        uint64_t trialSeed = a.seed + i;
        auto t0 = Clock::now();
        brc::SampleResult sr = brc::sample_legit(p, mu, trialSeed);
        sampleMs += ms_since(t0);
        attempts += sr.attempts;

        auto t1 = Clock::now();
        brc::BitString cw = brc::encode(sr.z, p, mu);
        encodeMs += ms_since(t1);

        auto t2 = Clock::now();
        brc::FragmentMultiset frags =
            brc::break_at(cw, brc::attack(a.strategy, cw, p, mu, trialSeed));
        breakMs += ms_since(t2);

        auto t3 = Clock::now();
        bool good = false;
        try {
            good = brc::decode(frags, p, mu) == sr.z;
        } catch (const brc::DecodeFailure&) {
        }
        decodeMs += ms_since(t3);
        if (good) ++ok;
    }

    double trials = double(a.trials);
    std::cout << ok << "/" << a.trials << " round trips succeeded\n";
    std::cout << "sampling: mean attempts " << double(attempts) / trials << ", rejection rate "
              << (attempts ? double(attempts - a.trials) / double(attempts) : 0.0) << "\n";
    std::cout << "timing (total ms): sample " << sampleMs << ", encode " << encodeMs << ", break "
              << breakMs << ", decode " << decodeMs << "\n";
    return ok == a.trials ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"break-resilient codeword toolkit"};
    app.require_subcommand(1);

    EncodeArgs ea;
    CLI::App* enc = app.add_subcommand("encode", "sample or read a payload and encode it");
    enc->add_option("--m", ea.m, "payload length in bits")->required();
    enc->add_option("--t", ea.t, "break budget")->required();
    enc->add_option("--c", ea.c, "signature length multiplier")->required();
    enc->add_option("--seed", ea.seed, "payload sampling seed");
    enc->add_option("--out", ea.out, "codeword file; truth sidecar at <out>.truth")->required();
    enc->add_option("--z-file", ea.zFile, "explicit payload file instead of sampling");

    BreakArgs ba;
    CLI::App* brk = app.add_subcommand("break", "break a codeword into fragments");
    brk->add_option("--in", ba.in, "codeword file")->required();
    brk->add_option("--strategy", ba.strategy,
                    "uniform | signature-target | marker-target | boundary-target | "
                    "exhaustive-worst")
        ->required();
    brk->add_option("--seed", ba.seed, "attack seed");
    brk->add_option("--drop-short", ba.dropShort, "drop fragments shorter than this");
    brk->add_option("--out", ba.out, "fragment file; pattern sidecar at <out>.pattern")
        ->required();

    DecodeArgs da;
    CLI::App* dec = app.add_subcommand("decode", "recover the payload from fragments");
    dec->add_option("--in", da.in, "fragment file")->required();
    dec->add_option("--out", da.out, "recovered payload file")->required();

    VerifyArgs va;
    CLI::App* ver = app.add_subcommand("verify", "run seeded encode-break-decode trials");
    ver->add_option("--m", va.m, "payload length in bits")->required();
    ver->add_option("--t", va.t, "break budget")->required();
    ver->add_option("--c", va.c, "signature length multiplier")->required();
    ver->add_option("--seed", va.seed, "base seed");
    ver->add_option("--strategy", va.strategy, "attack strategy");
    ver->add_option("--trials", va.trials, "number of trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (enc->parsed()) return run_encode(ea);
        if (brk->parsed()) return run_break(ba);
        if (dec->parsed()) return run_decode(da);
        return run_verify(va);
    } catch (const brc::DecodeFailure& e) {
        std::cerr << "decode failure: " << e.what() << "\n";
        return 1;
    } catch (const brc::ParamError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
