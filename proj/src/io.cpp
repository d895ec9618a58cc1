#include "brc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "brc/error.hpp"

namespace brc {

namespace {

// Consumes a decimal integer; no sign, no leading junk.
template <typename Int>
Int eat_int(std::string_view& s) {
    Int value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr == s.data())
        throw ParamError("fragment file header has a malformed integer");
    s.remove_prefix(size_t(ptr - s.data()));
    return value;
}

void eat_literal(std::string_view& s, std::string_view lit) {
    if (s.substr(0, lit.size()) != lit)
        throw ParamError("fragment file header is malformed");
    s.remove_prefix(lit.size());
}

} // namespace

std::string format_fragment_file(const FragmentFile& f) {
    std::string out = "BRC1 m=" + std::to_string(f.m) + " t=" + std::to_string(f.t) +
                      " c=" + std::to_string(f.c) + "\n";
    for (const BitString& line : f.lines) {
        out += line.to_string();
        out += '\n';
    }
    return out;
}

FragmentFile parse_fragment_file(std::string_view text) {
    if (text.empty() || text.back() != '\n')
        throw ParamError("fragment file must end with a newline");

    size_t eol = text.find('\n');
    std::string_view header = text.substr(0, eol);
    FragmentFile f;
    eat_literal(header, "BRC1 m=");
    f.m = eat_int<uint64_t>(header);
    eat_literal(header, " t=");
    f.t = eat_int<uint64_t>(header);
    eat_literal(header, " c=");
    f.c = eat_int<uint32_t>(header);
    if (!header.empty()) throw ParamError("fragment file header has trailing characters");

    std::string_view body = text.substr(eol + 1);
    while (!body.empty()) {
        size_t end = body.find('\n');
        std::string_view line = body.substr(0, end);
        if (line.empty()) throw ParamError("fragment file has an empty body line");
        f.lines.push_back(BitString::from_string(line));
        body.remove_prefix(end + 1);
    }
    return f;
}

FragmentFile load_fragment_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParamError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw ParamError("cannot read " + path);
    return parse_fragment_file(buf.str());
}

void store_fragment_file(const std::string& path, const FragmentFile& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParamError("cannot open " + path + " for writing");
    out << format_fragment_file(f);
    out.flush();
    if (!out.good()) throw ParamError("cannot write " + path);
}

} // namespace brc
