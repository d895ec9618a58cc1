#include "brc/rs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "brc/error.hpp"
#include "brc/rng.hpp"

namespace brc {
namespace {

// Dense polynomial, coefficient i is the degree-i term. Empty vector is the
// zero polynomial. All degrees here are tiny (at most 2 * parityCount).
using Poly = std::vector<Elem>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const FieldSpec& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) r[i + j] ^= f.mul(a[i], b[j]);
    }
    return r;
}

// In-place remainder modulo a monic divisor.
void reduce(const FieldSpec& f, Poly& r, const Poly& g) {
    size_t gd = g.size() - 1;
    while (r.size() > gd) {
        Elem lead = r.back();
        size_t shift = r.size() - 1 - gd;
        if (lead != 0)
            for (size_t i = 0; i < gd; ++i)
                if (g[i] != 0) r[shift + i] ^= f.mul(lead, g[i]);
        r.pop_back();
    }
    trim(r);
}

Poly mulmod(const FieldSpec& f, const Poly& a, const Poly& b, const Poly& g) {
    Poly r = mul(f, a, b);
    reduce(f, r, g);
    return r;
}

// Squaring in characteristic 2 spreads coefficients to even degrees.
Poly sqmod(const FieldSpec& f, const Poly& a, const Poly& g) {
    if (a.empty()) return {};
    Poly r(2 * a.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) r[2 * i] = f.mul(a[i], a[i]);
    reduce(f, r, g);
    return r;
}

Poly make_monic(const FieldSpec& f, Poly p) {
    trim(p);
    if (p.empty() || p.back() == 1) return p;
    Elem inv = f.inv(p.back());
    for (Elem& c : p) c = f.mul(c, inv);
    return p;
}

Poly pgcd(const FieldSpec& f, Poly a, Poly b) {
    a = make_monic(f, std::move(a));
    b = make_monic(f, std::move(b));
    while (!b.empty()) {
        reduce(f, a, b);
        std::swap(a, b);
        b = make_monic(f, std::move(b));
    }
    return a;
}

// Quotient a / b for monic b dividing a exactly.
Poly pdiv(const FieldSpec& f, Poly a, const Poly& b) {
    size_t bd = b.size() - 1;
    Poly q(a.size() - bd, 0);
    while (a.size() > bd) {
        Elem lead = a.back();
        size_t shift = a.size() - 1 - bd;
        q[shift] = lead;
        if (lead != 0)
            for (size_t i = 0; i < bd; ++i)
                if (b[i] != 0) a[shift + i] ^= f.mul(lead, b[i]);
        a.pop_back();
    }
    return q;
}

Elem peval(const FieldSpec& f, const Poly& p, Elem x) {
    Elem r = 0;
    for (size_t i = p.size(); i-- > 0;) r = f.mul(r, x) ^ p[i];
    return r;
}

// Formal derivative in characteristic 2: only odd-degree terms survive.
Poly pderiv(const Poly& p) {
    Poly r;
    for (size_t i = 1; i < p.size(); i += 2) {
        if (r.size() < i) r.resize(i, 0);
        r[i - 1] = p[i];
    }
    trim(r);
    return r;
}

// x^e modulo the generator, from the precomputed x^(2^i) ladder.
Poly x_pow_mod(const FieldSpec& f, uint64_t e, const RsCode& code) {
    Poly r{1};
    for (uint32_t i = 0; e != 0; ++i, e >>= 1)
        if (e & 1) r = mulmod(f, r, code.xPow2[i], code.generator);
    return r;
}

// Berlekamp-Massey: minimal LFSR for u, returned as (locator, length). The
// caller rejects results whose degree disagrees with the length.
std::pair<Poly, uint32_t> berlekamp_massey(const FieldSpec& f, const std::vector<Elem>& u) {
    Poly lam{1}, back{1};
    uint32_t len = 0, gap = 1;
    Elem lastDelta = 1;
    for (size_t n = 0; n < u.size(); ++n) {
        Elem delta = u[n];
        for (uint32_t i = 1; i <= len; ++i)
            if (i < lam.size() && lam[i] != 0) delta ^= f.mul(lam[i], u[n - i]);
        if (delta == 0) {
            ++gap;
            continue;
        }
        Poly prev = lam;
        Elem coef = f.mul(delta, f.inv(lastDelta));
        if (lam.size() < back.size() + gap) lam.resize(back.size() + gap, 0);
        for (size_t i = 0; i < back.size(); ++i)
            if (back[i] != 0) lam[i + gap] ^= f.mul(coef, back[i]);
        if (2 * len <= n) {
            len = uint32_t(n + 1) - len;
            back = std::move(prev);
            lastDelta = delta;
            gap = 1;
        } else {
            ++gap;
        }
    }
    trim(lam);
    return {lam, len};
}

// Locator degrees d in [0, N) with lam(alpha^-d) = 0, by Chien walk.
std::vector<uint64_t> chien_roots(const FieldSpec& f, const Poly& lam, uint64_t N) {
    std::vector<uint64_t> roots;
    Poly cur = lam;
    Poly step(lam.size());
    Elem ainv = f.inv(f.alpha());
    step[0] = 1;
    for (size_t j = 1; j < step.size(); ++j) step[j] = f.mul(step[j - 1], ainv);
    for (uint64_t d = 0; d < N; ++d) {
        Elem s = 0;
        for (Elem c : cur) s ^= c;
        if (s == 0) roots.push_back(d);
        for (size_t j = 1; j < cur.size(); ++j) cur[j] = f.mul(cur[j], step[j]);
    }
    return roots;
}

// Roots of a monic squarefree completely-split polynomial, by random trace
// splitting. Returns false if splitting stalls (treated as decode failure).
bool trace_roots(const FieldSpec& f, const Poly& g, SplitMix64& rng, std::vector<Elem>& out) {
    if (g.size() <= 1) return true;
    if (g.size() == 2) {
        out.push_back(g[0]);
        return true;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        Elem beta = rng.next();
        if (f.width() > 64) beta = (beta << 64) | rng.next();
        beta &= f.mask();
        if (beta == 0) continue;
        Poly term{0, beta};
        Poly acc = term;
        for (uint32_t i = 1; i < f.width(); ++i) {
            term = sqmod(f, term, g);
            if (acc.size() < term.size()) acc.resize(term.size(), 0);
            for (size_t j = 0; j < term.size(); ++j) acc[j] ^= term[j];
        }
        trim(acc);
        Poly h = pgcd(f, g, acc);
        if (h.size() > 1 && h.size() < g.size())
            return trace_roots(f, h, rng, out) && trace_roots(f, pdiv(f, g, h), rng, out);
    }
    return false;
}

uint64_t fold_elem(Elem v) {
    return uint64_t(v) * 0x9e3779b97f4a7c15ull ^ uint64_t(v >> 64) * 0xbf58476d1ce4e5b9ull;
}

// Shared baby-step table per field width: (folded alpha^j, j), sorted by the
// fold. Grows monotonically; candidates are verified against a real power.
struct BabyTable {
    std::vector<std::pair<uint64_t, uint32_t>> entries;
    uint64_t built = 0;
};

constexpr uint64_t kBabyCap = 1ull << 22;

std::map<uint32_t, BabyTable>& baby_tables() {
    static std::map<uint32_t, BabyTable> tables;
    return tables;
}
std::mutex& baby_mutex() {
    static std::mutex m;
    return m;
}

// Discrete log of x base alpha within [0, N), baby-step giant-step.
std::optional<uint64_t> bounded_dlog(const FieldSpec& f, Elem x, uint64_t N) {
    uint64_t B = uint64_t(std::sqrt(double(N)));
    while (B > 1 && (B - 1) * (B - 1) >= N) --B;
    while (B * B < N) ++B;
    if (B > kBabyCap)
        throw ParamError("message too long for error decoding (discrete log table cap)");
    std::lock_guard<std::mutex> lock(baby_mutex());
    BabyTable& table = baby_tables()[f.width()];
    if (table.built < B) {
        table.entries.clear();
        table.entries.reserve(B);
        Elem p = 1;
        for (uint64_t j = 0; j < B; ++j) {
            table.entries.emplace_back(fold_elem(p), uint32_t(j));
            p = f.mul(p, f.alpha());
        }
        std::sort(table.entries.begin(), table.entries.end());
        table.built = B;
    }
    Elem giant = f.inv(f.pow(f.alpha(), B));
    Elem y = x;
    for (uint64_t g = 0; g * B < N; ++g) {
        uint64_t key = fold_elem(y);
        auto it = std::lower_bound(table.entries.begin(), table.entries.end(),
                                   std::make_pair(key, uint32_t(0)));
        for (; it != table.entries.end() && it->first == key; ++it) {
            uint64_t d = g * B + it->second;
            if (d < N && f.pow(f.alpha(), d) == x) return d;
        }
        y = f.mul(y, giant);
    }
    return std::nullopt;
}

constexpr uint64_t kChienMax = 4096;

} // namespace

RsCode rs_make_code(uint32_t w, uint64_t msgLen, uint32_t parityCount) {
    const FieldSpec& f = FieldSpec::get(w);
    if (parityCount == 0) throw ParamError("parityCount must be at least 1");
    if (Elem(msgLen) + parityCount > f.group_order())
        throw ParamError("code length exceeds the field");
    RsCode code;
    code.field = &f;
    code.msgLen = msgLen;
    code.parityCount = parityCount;
    Poly g{1};
    Elem root = 1;
    for (uint32_t l = 1; l <= parityCount; ++l) {
        root = f.mul(root, f.alpha());
        g = mul(f, g, Poly{root, 1});
    }
    code.generator = std::move(g);
    uint32_t bits = std::bit_width(msgLen + parityCount) + 1;
    Poly x{0, 1};
    reduce(f, x, code.generator);
    code.xPow2.push_back(std::move(x));
    for (uint32_t i = 1; i < bits; ++i)
        code.xPow2.push_back(sqmod(f, code.xPow2.back(), code.generator));
    return code;
}

std::vector<Elem> rs_encode(const RsCode& code, const SparseMessage& msg) {
    const FieldSpec& f = *code.field;
    if (msg.msgLen != code.msgLen) throw ParamError("message length mismatch");
    Poly rem;
    uint64_t prev = 0;
    bool first = true;
    for (const auto& [pos, val] : msg.entries) {
        if (pos >= code.msgLen) throw ParamError("message position out of range");
        if (!first && pos <= prev) throw ParamError("message positions must be strictly ascending");
        if (val == 0) throw ParamError("sparse message entries must be nonzero");
        if ((val & ~f.mask()) != 0) throw ParamError("symbol exceeds field width");
        first = false;
        prev = pos;
        Poly term = x_pow_mod(f, code.parityCount + pos, code);
        if (rem.size() < term.size()) rem.resize(term.size(), 0);
        for (size_t i = 0; i < term.size(); ++i)
            if (term[i] != 0) rem[i] ^= f.mul(term[i], val);
    }
    std::vector<Elem> parity(code.parityCount, 0);
    for (size_t i = 0; i < rem.size(); ++i) parity[code.parityCount - 1 - i] = rem[i];
    return parity;
}

std::optional<SparseMessage> rs_decode(const RsCode& code, const ReceivedWord& recv) {
    const FieldSpec& f = *code.field;
    const uint32_t P = code.parityCount;
    if (recv.msgLen != code.msgLen) throw ParamError("received length mismatch");
    if (recv.parity.size() != P) throw ParamError("parity vector size mismatch");
    uint64_t prev = 0;
    bool first = true;
    for (const auto& [pos, val] : recv.msgSymbols) {
        if (pos >= code.msgLen) throw ParamError("message position out of range");
        if (!first && pos <= prev) throw ParamError("message positions must be strictly ascending");
        if ((val & ~f.mask()) != 0) throw ParamError("symbol exceeds field width");
        first = false;
        prev = pos;
    }
    for (size_t i = 0; i < recv.msgErasures.size(); ++i) {
        if (recv.msgErasures[i] >= code.msgLen) throw ParamError("erasure position out of range");
        if (i > 0 && recv.msgErasures[i] <= recv.msgErasures[i - 1])
            throw ParamError("erasure positions must be strictly ascending");
        if (std::binary_search(recv.msgSymbols.begin(), recv.msgSymbols.end(),
                               std::make_pair(recv.msgErasures[i], Elem(0)),
                               [](const auto& a, const auto& b) { return a.first < b.first; }))
            throw ParamError("position both known and erased");
    }

    // Locator degree of message position j is P+j, of parity index i is P-1-i.
    std::vector<uint64_t> eraseDeg;
    for (uint64_t j : recv.msgErasures) eraseDeg.push_back(P + j);
    for (uint32_t i = 0; i < P; ++i)
        if (!recv.parity[i]) eraseDeg.push_back(P - 1 - i);
    if (eraseDeg.size() > P) return std::nullopt;
    const uint32_t fcount = uint32_t(eraseDeg.size());

    // Syndromes from the known symbols; erased positions contribute zero.
    std::vector<Elem> synd(P, 0);
    auto addSymbol = [&](uint64_t deg, Elem v) {
        if (v == 0) return;
        Elem x1 = f.pow(f.alpha(), deg);
        Elem xl = 1;
        for (uint32_t l = 0; l < P; ++l) {
            xl = f.mul(xl, x1);
            synd[l] ^= f.mul(v, xl);
        }
    };
    for (const auto& [pos, val] : recv.msgSymbols) addSymbol(P + pos, val);
    for (uint32_t i = 0; i < P; ++i)
        if (recv.parity[i]) addSymbol(P - 1 - i, *recv.parity[i]);

    const uint64_t N = code.msgLen + P;
    Poly gammaPoly{1};
    std::vector<Elem> eraseX;
    for (uint64_t d : eraseDeg) {
        Elem X = f.pow(f.alpha(), d);
        eraseX.push_back(X);
        gammaPoly = mul(f, gammaPoly, Poly{1, X});
    }

    Poly sPoly(synd.begin(), synd.end());
    trim(sPoly);
    Poly xi = mul(f, sPoly, gammaPoly);
    if (xi.size() > P) xi.resize(P);

    std::vector<Elem> tail;
    for (uint32_t idx = fcount; idx < P; ++idx)
        tail.push_back(idx < xi.size() ? xi[idx] : 0);
    auto [lam, bmLen] = berlekamp_massey(f, tail);
    if (lam.empty() || lam[0] == 0) return std::nullopt;
    const uint32_t e = uint32_t(lam.size() - 1);
    if (e != bmLen) return std::nullopt;
    if (2ull * e + fcount > P) return std::nullopt;

    std::vector<uint64_t> errDeg;
    std::vector<Elem> errX;
    if (e > 0) {
        if (N <= kChienMax) {
            for (uint64_t d : chien_roots(f, lam, N)) {
                errDeg.push_back(d);
                errX.push_back(f.pow(f.alpha(), d));
            }
        } else {
            Poly monic = make_monic(f, lam);
            if (monic.size() > 2) {
                // Distinct-roots-in-field test: x^(2^w) must reduce to x.
                Poly frob{0, 1};
                reduce(f, frob, monic);
                for (uint32_t i = 0; i < f.width(); ++i) frob = sqmod(f, frob, monic);
                if (frob.size() != 2 || frob[0] != 0 || frob[1] != 1) return std::nullopt;
            }
            SplitMix64 rng(0x524f4f54u ^ f.width());
            std::vector<Elem> roots;
            if (!trace_roots(f, monic, rng, roots)) return std::nullopt;
            for (Elem r : roots) {
                if (r == 0) return std::nullopt;
                auto d = bounded_dlog(f, f.inv(r), N);
                if (!d) return std::nullopt;
                errDeg.push_back(*d);
                errX.push_back(f.inv(r));
            }
        }
        if (errDeg.size() != e) return std::nullopt;
        for (uint64_t d : errDeg)
            if (std::find(eraseDeg.begin(), eraseDeg.end(), d) != eraseDeg.end())
                return std::nullopt;
    }

    Poly psi = mul(f, lam, gammaPoly);
    Poly omega = mul(f, sPoly, psi);
    if (omega.size() > P) omega.resize(P);
    trim(omega);
    Poly dpsi = pderiv(psi);

    std::vector<std::pair<uint64_t, Elem>> fixes; // (locator degree, additive correction)
    auto forney = [&](uint64_t d, Elem X, bool isError) -> bool {
        Elem xinv = f.inv(X);
        Elem den = peval(f, dpsi, xinv);
        if (den == 0) return false;
        Elem y = f.mul(peval(f, omega, xinv), f.inv(den));
        if (y == 0 && isError) return false;
        if (y != 0) fixes.emplace_back(d, y);
        return true;
    };
    for (size_t i = 0; i < errDeg.size(); ++i)
        if (!forney(errDeg[i], errX[i], true)) return std::nullopt;
    for (size_t i = 0; i < eraseDeg.size(); ++i)
        if (!forney(eraseDeg[i], eraseX[i], false)) return std::nullopt;

    // Recheck: corrected syndromes must vanish everywhere.
    std::vector<Elem> delta(P, 0);
    for (const auto& [d, y] : fixes) {
        Elem X = f.pow(f.alpha(), d);
        Elem xl = 1;
        for (uint32_t l = 0; l < P; ++l) {
            xl = f.mul(xl, X);
            delta[l] ^= f.mul(y, xl);
        }
    }
    for (uint32_t l = 0; l < P; ++l)
        if ((synd[l] ^ delta[l]) != 0) return std::nullopt;

    std::map<uint64_t, Elem> vals;
    for (const auto& [pos, val] : recv.msgSymbols)
        if (val != 0) vals[pos] = val;
    for (const auto& [d, y] : fixes) {
        if (d < P) continue; // parity fix, not part of the message
        uint64_t j = d - P;
        auto it = vals.find(j);
        Elem v = (it == vals.end() ? Elem(0) : it->second) ^ y;
        if (v == 0) {
            if (it != vals.end()) vals.erase(it);
        } else {
            vals[j] = v;
        }
    }
    SparseMessage out;
    out.msgLen = code.msgLen;
    for (const auto& [pos, val] : vals) out.entries.emplace_back(pos, val);
    return out;
}

} // namespace brc
