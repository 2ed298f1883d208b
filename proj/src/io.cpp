#include "lsm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lsm {

namespace {

// line-oriented tokenizer: strips '#' comments, skips blank lines
class LineReader {
public:
    explicit LineReader(std::istream& is) : is_(is) {}

    // next non-empty line split into tokens; false at EOF
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(is_, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
            tokens.clear();
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    // peek variant: the caller can push the line back
    bool next_or_buffered(std::vector<std::string>& tokens) {
        if (buffered_) {
            tokens = buffer_;
            buffered_ = false;
            return true;
        }
        return next(tokens);
    }
    void push_back(const std::vector<std::string>& tokens) {
        buffer_ = tokens;
        buffered_ = true;
    }

    int line() const { return line_no_; }

private:
    std::istream& is_;
    int line_no_ = 0;
    bool buffered_ = false;
    std::vector<std::string> buffer_;
};

[[noreturn]] void parse_error(const LineReader& r, const std::string& what) {
    std::ostringstream os;
    os << "parse error at line " << r.line() << ": " << what;
    throw std::runtime_error(os.str());
}

long long to_int(LineReader& r, const std::string& tok) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        parse_error(r, "expected an integer, got '" + tok + "'");
    return value;
}

// one block per line: exactly k strictly ascending points in [0, n)
std::vector<Pt> parse_block_line(LineReader& r, const std::vector<std::string>& tokens, int k, int n) {
    if (static_cast<int>(tokens.size()) != k) parse_error(r, "expected a block of " + std::to_string(k) + " points");
    std::vector<Pt> pts(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        long long v = to_int(r, tokens[static_cast<std::size_t>(i)]);
        if (v < 0 || v >= n) parse_error(r, "point out of range");
        if (i > 0 && v <= pts[static_cast<std::size_t>(i) - 1]) parse_error(r, "block not strictly ascending");
        pts[static_cast<std::size_t>(i)] = static_cast<Pt>(v);
    }
    return pts;
}

void check_no_duplicate_blocks(LineReader& r, const std::vector<std::uint64_t>& ranks) {
    std::vector<std::uint64_t> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        parse_error(r, "duplicate block within a system");
}

void append_int(std::string& out, long long v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

void append_block(std::string& out, std::span<const Cell> blk) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
        if (i) out.push_back(' ');
        append_int(out, blk[i]);
    }
    out.push_back('\n');
}

void flush_chunk(std::ostream& os, std::string& chunk) {
    os.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    chunk.clear();
}

constexpr std::size_t kChunk = 1 << 20;

const char* kind_token(ArrayKind k) {
    switch (k) {
        case ArrayKind::OA: return "OA";
        case ArrayKind::PA: return "PA";
        case ArrayKind::OD: return "OD";
        case ArrayKind::Latin: return "LATIN";
    }
    return "?";
}

}  // namespace

void write_design(std::ostream& os, const Design& d) {
    std::string chunk;
    chunk.reserve(kChunk + 256);
    chunk += "DESIGN ";
    append_int(chunk, d.t);
    chunk.push_back(' ');
    append_int(chunk, d.k);
    chunk.push_back(' ');
    append_int(chunk, d.n);
    chunk.push_back(' ');
    append_int(chunk, static_cast<long long>(d.block_count()));
    chunk.push_back('\n');
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        append_block(chunk, d.block(b));
        if (chunk.size() >= kChunk) flush_chunk(os, chunk);
    }
    flush_chunk(os, chunk);
}

void write_large_set(std::ostream& os, const LargeSet& ls) {
    std::string chunk;
    chunk.reserve(kChunk + 256);
    chunk += "LARGESET ";
    append_int(chunk, ls.t);
    chunk.push_back(' ');
    append_int(chunk, ls.k);
    chunk.push_back(' ');
    append_int(chunk, ls.n);
    chunk.push_back(' ');
    append_int(chunk, ls.mu);
    chunk.push_back(' ');
    append_int(chunk, static_cast<long long>(ls.systems.size()));
    chunk.push_back('\n');
    for (std::size_t s = 0; s < ls.systems.size(); ++s) {
        chunk += "SYSTEM ";
        append_int(chunk, static_cast<long long>(s));
        chunk.push_back('\n');
        const Design& d = ls.systems[s];
        for (std::size_t b = 0; b < d.block_count(); ++b) {
            append_block(chunk, d.block(b));
            if (chunk.size() >= kChunk) flush_chunk(os, chunk);
        }
    }
    flush_chunk(os, chunk);
}

void write_hdesign(std::ostream& os, const GroupedDesign& d) {
    std::string chunk;
    chunk += "HDESIGN ";
    append_int(chunk, d.n);
    chunk.push_back(' ');
    append_int(chunk, d.g);
    chunk.push_back(' ');
    append_int(chunk, d.k);
    chunk.push_back(' ');
    append_int(chunk, d.t);
    chunk.push_back(' ');
    append_int(chunk, static_cast<long long>(d.block_count()));
    chunk.push_back('\n');
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        append_block(chunk, d.block(b));
        if (chunk.size() >= kChunk) flush_chunk(os, chunk);
    }
    flush_chunk(os, chunk);
}

void write_large_set_h(std::ostream& os, const LargeSetH& ls) {
    std::string chunk;
    chunk += "LARGESETH ";
    append_int(chunk, ls.n);
    chunk.push_back(' ');
    append_int(chunk, ls.g);
    chunk.push_back(' ');
    append_int(chunk, ls.k);
    chunk.push_back(' ');
    append_int(chunk, ls.t);
    chunk.push_back(' ');
    append_int(chunk, static_cast<long long>(ls.systems.size()));
    chunk.push_back('\n');
    for (std::size_t s = 0; s < ls.systems.size(); ++s) {
        chunk += "SYSTEM ";
        append_int(chunk, static_cast<long long>(s));
        chunk.push_back('\n');
        const GroupedDesign& d = ls.systems[s];
        for (std::size_t b = 0; b < d.block_count(); ++b) {
            append_block(chunk, d.block(b));
            if (chunk.size() >= kChunk) flush_chunk(os, chunk);
        }
    }
    flush_chunk(os, chunk);
}

void write_array(std::ostream& os, const CodeArray& a) {
    std::string chunk;
    chunk += "ARRAY ";
    chunk += kind_token(a.kind);
    chunk.push_back(' ');
    append_int(chunk, a.kind == ArrayKind::OA ? a.strength : a.index);
    chunk.push_back(' ');
    append_int(chunk, a.kind == ArrayKind::OA || a.kind == ArrayKind::Latin ? 0 : a.strength);
    chunk.push_back(' ');
    append_int(chunk, a.v);
    chunk.push_back(' ');
    append_int(chunk, a.rows);
    chunk.push_back(' ');
    append_int(chunk, a.cols);
    chunk.push_back('\n');
    for (int r = 0; r < a.rows; ++r) {
        append_block(chunk, a.row(r));
        if (chunk.size() >= kChunk) flush_chunk(os, chunk);
    }
    flush_chunk(os, chunk);
}

void write_one_factorization(std::ostream& os, const OneFactorization& f) {
    LargeSet ls;
    ls.t = 1;
    ls.k = 2;
    ls.n = f.n;
    ls.mu = 1;
    for (const auto& factor : f.factors) {
        Design d(1, 2, f.n);
        for (auto [x, y] : factor) d.add_block({x, y});
        ls.systems.push_back(std::move(d));
    }
    write_large_set(os, ls);
}

namespace {

Design read_design_body(LineReader& r, const std::vector<std::string>& header) {
    if (header.size() != 5) parse_error(r, "DESIGN header needs: t k n blockcount");
    Design d(static_cast<int>(to_int(r, header[1])), static_cast<int>(to_int(r, header[2])),
             static_cast<int>(to_int(r, header[3])));
    long long count = to_int(r, header[4]);
    if (d.t < 1 || d.k < 1 || d.n < 1 || d.k > d.n || count < 0)
        parse_error(r, "bad DESIGN parameters");
    std::vector<std::string> tokens;
    std::vector<std::uint64_t> ranks;
    ranks.reserve(static_cast<std::size_t>(count));
    d.reserve_blocks(static_cast<std::size_t>(count));
    for (long long b = 0; b < count; ++b) {
        if (!r.next(tokens)) parse_error(r, "unexpected end of file inside DESIGN body");
        std::vector<Pt> pts = parse_block_line(r, tokens, d.k, d.n);
        d.add_block(pts);
        ranks.push_back(rank_subset(d.block(d.block_count() - 1)));
    }
    check_no_duplicate_blocks(r, ranks);
    std::vector<std::string> trailing;
    if (r.next(trailing)) parse_error(r, "unexpected content after the last block");
    return d;
}

LargeSet read_large_set_body(LineReader& r, const std::vector<std::string>& header) {
    if (header.size() != 6) parse_error(r, "LARGESET header needs: t k n mu count");
    LargeSet ls;
    ls.t = static_cast<int>(to_int(r, header[1]));
    ls.k = static_cast<int>(to_int(r, header[2]));
    ls.n = static_cast<int>(to_int(r, header[3]));
    ls.mu = static_cast<int>(to_int(r, header[4]));
    long long count = to_int(r, header[5]);
    if (ls.t < 1 || ls.k < 1 || ls.n < 1 || ls.k > ls.n || ls.mu < 0 || count < 0)
        parse_error(r, "bad LARGESET parameters");

    std::vector<std::string> tokens;
    for (long long s = 0; s < count; ++s) {
        if (!r.next_or_buffered(tokens) || tokens.size() != 2 || tokens[0] != "SYSTEM" ||
            to_int(r, tokens[1]) != s)
            parse_error(r, "expected 'SYSTEM " + std::to_string(s) + "'");
        Design d(ls.t, ls.k, ls.n);
        std::vector<std::uint64_t> ranks;
        while (r.next_or_buffered(tokens)) {
            if (tokens[0] == "SYSTEM") {
                r.push_back(tokens);
                break;
            }
            std::vector<Pt> pts = parse_block_line(r, tokens, ls.k, ls.n);
            d.add_block(pts);
            ranks.push_back(rank_subset(d.block(d.block_count() - 1)));
        }
        check_no_duplicate_blocks(r, ranks);
        ls.systems.push_back(std::move(d));
    }
    std::vector<std::string> trailing;
    if (r.next_or_buffered(trailing)) parse_error(r, "unexpected content after the last system");
    return ls;
}

GroupedDesign read_hdesign_body(LineReader& r, const std::vector<std::string>& header) {
    if (header.size() != 6) parse_error(r, "HDESIGN header needs: n g k t blockcount");
    GroupedDesign d;
    d.n = static_cast<int>(to_int(r, header[1]));
    d.g = static_cast<int>(to_int(r, header[2]));
    d.k = static_cast<int>(to_int(r, header[3]));
    d.t = static_cast<int>(to_int(r, header[4]));
    long long count = to_int(r, header[5]);
    if (d.n < 1 || d.g < 1 || d.k < 1 || d.t < 1 || count < 0) parse_error(r, "bad HDESIGN parameters");
    std::vector<std::string> tokens;
    std::vector<std::uint64_t> ranks;
    for (long long b = 0; b < count; ++b) {
        if (!r.next(tokens)) parse_error(r, "unexpected end of file inside HDESIGN body");
        std::vector<Pt> pts = parse_block_line(r, tokens, d.k, d.point_count());
        try {
            d.add_block(pts);
        } catch (const std::invalid_argument& e) {
            parse_error(r, e.what());
        }
        ranks.push_back(rank_subset(d.block(d.block_count() - 1)));
    }
    check_no_duplicate_blocks(r, ranks);
    std::vector<std::string> trailing;
    if (r.next(trailing)) parse_error(r, "unexpected content after the last block");
    return d;
}

LargeSetH read_large_set_h_body(LineReader& r, const std::vector<std::string>& header) {
    if (header.size() != 6) parse_error(r, "LARGESETH header needs: n g k t count");
    LargeSetH ls;
    ls.n = static_cast<int>(to_int(r, header[1]));
    ls.g = static_cast<int>(to_int(r, header[2]));
    ls.k = static_cast<int>(to_int(r, header[3]));
    ls.t = static_cast<int>(to_int(r, header[4]));
    long long count = to_int(r, header[5]);
    if (ls.n < 1 || ls.g < 1 || ls.k < 1 || ls.t < 1 || count < 0)
        parse_error(r, "bad LARGESETH parameters");

    std::vector<std::string> tokens;
    for (long long s = 0; s < count; ++s) {
        if (!r.next_or_buffered(tokens) || tokens.size() != 2 || tokens[0] != "SYSTEM" ||
            to_int(r, tokens[1]) != s)
            parse_error(r, "expected 'SYSTEM " + std::to_string(s) + "'");
        GroupedDesign d;
        d.n = ls.n;
        d.g = ls.g;
        d.k = ls.k;
        d.t = ls.t;
        std::vector<std::uint64_t> ranks;
        while (r.next_or_buffered(tokens)) {
            if (tokens[0] == "SYSTEM") {
                r.push_back(tokens);
                break;
            }
            std::vector<Pt> pts = parse_block_line(r, tokens, ls.k, d.point_count());
            try {
                d.add_block(pts);
            } catch (const std::invalid_argument& e) {
                parse_error(r, e.what());
            }
            ranks.push_back(rank_subset(d.block(d.block_count() - 1)));
        }
        check_no_duplicate_blocks(r, ranks);
        ls.systems.push_back(std::move(d));
    }
    std::vector<std::string> trailing;
    if (r.next_or_buffered(trailing)) parse_error(r, "unexpected content after the last system");
    return ls;
}

CodeArray read_array_body(LineReader& r, const std::vector<std::string>& header) {
    if (header.size() != 7) parse_error(r, "ARRAY header needs: kind t-or-lambda strength v rows cols");
    CodeArray a;
    const std::string& kind = header[1];
    long long f2 = to_int(r, header[2]);
    long long f3 = to_int(r, header[3]);
    a.v = static_cast<int>(to_int(r, header[4]));
    a.rows = static_cast<int>(to_int(r, header[5]));
    a.cols = static_cast<int>(to_int(r, header[6]));
    if (kind == "OA") {
        a.kind = ArrayKind::OA;
        a.strength = static_cast<int>(f2);
        a.index = 1;
        if (f3 != 0) parse_error(r, "OA header field 3 must be 0");
    } else if (kind == "PA" || kind == "OD") {
        a.kind = kind == "PA" ? ArrayKind::PA : ArrayKind::OD;
        a.index = static_cast<int>(f2);
        a.strength = static_cast<int>(f3);
    } else if (kind == "LATIN") {
        a.kind = ArrayKind::Latin;
        a.index = 0;
        a.strength = 0;
        if (f2 != 0 || f3 != 0) parse_error(r, "LATIN header fields 2-3 must be 0");
    } else {
        parse_error(r, "unknown array kind '" + kind + "'");
    }
    if (a.v < 1 || a.rows < 0 || a.cols < 1) parse_error(r, "bad ARRAY dimensions");

    a.cells.reserve(static_cast<std::size_t>(a.rows) * a.cols);
    std::vector<std::string> tokens;
    for (int row = 0; row < a.rows; ++row) {
        if (!r.next(tokens)) parse_error(r, "unexpected end of file inside ARRAY body");
        if (static_cast<int>(tokens.size()) != a.cols) parse_error(r, "expected a row of " + std::to_string(a.cols) + " cells");
        for (const std::string& tok : tokens) {
            long long v = to_int(r, tok);
            if (v < 0 || v >= a.v) parse_error(r, "cell value outside Z_v");
            a.cells.push_back(static_cast<Cell>(v));
        }
    }
    std::vector<std::string> trailing;
    if (r.next(trailing)) parse_error(r, "unexpected content after the last row");
    return a;
}

}  // namespace

Design read_design(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header) || header[0] != "DESIGN") parse_error(r, "expected a DESIGN header");
    return read_design_body(r, header);
}

LargeSet read_large_set(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header) || header[0] != "LARGESET") parse_error(r, "expected a LARGESET header");
    return read_large_set_body(r, header);
}

GroupedDesign read_hdesign(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header) || header[0] != "HDESIGN") parse_error(r, "expected an HDESIGN header");
    return read_hdesign_body(r, header);
}

LargeSetH read_large_set_h(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header) || header[0] != "LARGESETH") parse_error(r, "expected a LARGESETH header");
    return read_large_set_h_body(r, header);
}

CodeArray read_array(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header) || header[0] != "ARRAY") parse_error(r, "expected an ARRAY header");
    return read_array_body(r, header);
}

OneFactorization large_set_as_one_factorization(const LargeSet& ls) {
    if (ls.t != 1 || ls.k != 2 || ls.mu != 1)
        throw std::invalid_argument("not a one-factorization (need LARGESET 1 2 n 1)");
    OneFactorization f;
    f.n = ls.n;
    for (const Design& d : ls.systems) {
        std::vector<std::pair<Pt, Pt>> factor;
        for (std::size_t b = 0; b < d.block_count(); ++b) {
            auto blk = d.block(b);
            factor.emplace_back(blk[0], blk[1]);
        }
        f.factors.push_back(std::move(factor));
    }
    return f;
}

ParsedFile read_any(std::istream& is) {
    LineReader r(is);
    std::vector<std::string> header;
    if (!r.next(header)) parse_error(r, "empty file");
    const std::string& key = header[0];
    if (key == "DESIGN") return read_design_body(r, header);
    if (key == "LARGESET") return read_large_set_body(r, header);
    if (key == "HDESIGN") return read_hdesign_body(r, header);
    if (key == "LARGESETH") return read_large_set_h_body(r, header);
    if (key == "ARRAY") return read_array_body(r, header);
    parse_error(r, "unknown file header '" + key + "'");
}

ParsedFile read_any_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_any(is);
}

void write_any_file(const std::string& path, const ParsedFile& payload) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::visit(
        [&](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, Design>) write_design(os, value);
            else if constexpr (std::is_same_v<T, LargeSet>) write_large_set(os, value);
            else if constexpr (std::is_same_v<T, GroupedDesign>) write_hdesign(os, value);
            else if constexpr (std::is_same_v<T, LargeSetH>) write_large_set_h(os, value);
            else write_array(os, value);
        },
        payload);
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

std::string kind_name(const ParsedFile& payload) {
    switch (payload.index()) {
        case 0: return "design";
        case 1: return "ls";
        case 2: return "h";
        case 3: return "lh";
        default: return "array";
    }
}

}  // namespace lsm
