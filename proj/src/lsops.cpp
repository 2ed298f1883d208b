#include "lsm/lsops.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace lsm {

namespace {

std::string subset_str(std::span<const Pt> pts) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
    os << "}";
    return os.str();
}

// blocks must be sorted, distinct, in range; tampered storage is reported
VerifyResult check_blocks_well_formed(const Design& d) {
    if (d.k <= 0 || d.n <= 0 || d.t <= 0 || d.t >= d.k || d.k > d.n)
        return verify_fail("degenerate parameters (need 0 < t < k <= n)");
    if (d.cells.size() % static_cast<std::size_t>(d.k) != 0)
        return verify_fail("cell storage is not a whole number of blocks");
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        auto blk = d.block(b);
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] < 0 || blk[i] >= d.n) {
                std::ostringstream os;
                os << "block " << b << " holds out-of-range point " << blk[i];
                return verify_fail(os.str());
            }
            if (i > 0 && blk[i] <= blk[i - 1]) {
                std::ostringstream os;
                os << "block " << b << " is not strictly ascending";
                return verify_fail(os.str());
            }
        }
    }
    return verify_ok();
}

// iterate all t-subsets of a sorted block, applying fn(rank)
template <typename Fn>
void for_each_t_subset(std::span<const Cell> blk, int t, Fn&& fn) {
    const int k = static_cast<int>(blk.size());
    int idx[8];
    for (int i = 0; i < t; ++i) idx[i] = i;
    for (;;) {
        std::uint64_t r = 0;
        for (int i = 0; i < t; ++i) r += binom(blk[static_cast<std::size_t>(idx[i])], i + 1);
        fn(r);
        int i = t - 1;
        while (i >= 0 && idx[i] == k - (t - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

VerifyResult verify_steiner(const Design& d) {
    if (auto v = check_blocks_well_formed(d)) return v;
    std::vector<std::uint32_t> cover(binom(d.n, d.t), 0);
    for (std::size_t b = 0; b < d.block_count(); ++b)
        for_each_t_subset(d.block(b), d.t, [&](std::uint64_t r) { ++cover[r]; });
    for (std::size_t r = 0; r < cover.size(); ++r) {
        if (cover[r] != 1) {
            std::vector<Pt> sub = unrank_subset(r, d.t, d.n);
            std::ostringstream os;
            os << d.t << "-subset " << subset_str(sub) << " is covered " << cover[r]
               << " times, expected 1";
            return verify_fail(os.str());
        }
    }
    const std::uint64_t want_blocks = binom(d.n, d.t) / binom(d.k, d.t);
    if (d.block_count() != want_blocks) {
        std::ostringstream os;
        os << "block count " << d.block_count() << " != " << want_blocks;
        return verify_fail(os.str());
    }
    return verify_ok();
}

VerifyResult verify_ls(const LargeSet& ls) {
    if (ls.systems.empty()) return verify_fail("large set holds no systems");
    if (ls.mu < 1) return verify_fail("multiplicity must be positive");
    for (const Design& d : ls.systems)
        if (d.t != ls.t || d.k != ls.k || d.n != ls.n)
            return verify_fail("member system parameters differ from the large set header");

    const std::uint64_t want =
        static_cast<std::uint64_t>(ls.mu) * binom(ls.n - ls.t, ls.k - ls.t);
    if (ls.systems.size() != want) {
        std::ostringstream os;
        os << "system count " << ls.systems.size() << " != mu*binom(n-t,k-t) = " << want;
        return verify_fail(os.str());
    }

    // verify members in parallel, report the lowest failing index
    std::vector<VerifyResult> member(ls.systems.size());
    parallel_for(ls.systems.size(),
                 [&](std::size_t i) { member[i] = verify_steiner(ls.systems[i]); });
    for (std::size_t i = 0; i < member.size(); ++i) {
        if (member[i]) {
            std::ostringstream os;
            os << "system " << i << ": " << member[i]->message;
            return verify_fail(os.str());
        }
    }

    CoverageTable table = coverage(ls.systems);
    std::int64_t bad = table.first_deviation(static_cast<std::uint32_t>(ls.mu));
    if (bad >= 0) {
        std::vector<Pt> sub = unrank_subset(static_cast<std::uint64_t>(bad), ls.k, ls.n);
        std::ostringstream os;
        os << ls.k << "-subset " << subset_str(sub) << " is covered "
           << table.counts[static_cast<std::size_t>(bad)] << " times, expected " << ls.mu;
        return verify_fail(os.str());
    }
    return verify_ok();
}

LargeSet union_ls(const LargeSet& a, const LargeSet& b) {
    if (a.t != b.t || a.k != b.k || a.n != b.n)
        throw std::invalid_argument("union_ls: parameter mismatch");
    LargeSet out;
    out.t = a.t;
    out.k = a.k;
    out.n = a.n;
    out.mu = a.mu + b.mu;
    out.systems = a.systems;
    out.systems.insert(out.systems.end(), b.systems.begin(), b.systems.end());
    return out;
}

LargeSet perm_ls(const Design& s, const CodeArray& p) {
    const CodeArray* pa = &p;
    CodeArray converted;
    if (p.kind == ArrayKind::OD) {
        converted = od_as_pa(p);
        pa = &converted;
    }
    if (pa->kind != ArrayKind::PA) throw std::invalid_argument("perm_ls expects a PA (or OD)");
    if (pa->strength != s.k)
        throw std::invalid_argument("perm_ls: PA strength must equal the block size k");
    if (pa->cols != s.n || pa->v != s.n)
        throw std::invalid_argument("perm_ls: PA must consist of permutations of Z_n");
    if (auto v = verify_steiner(s))
        throw std::invalid_argument("perm_ls: input design invalid: " + v->message);
    if (auto v = verify_array(*pa))
        throw std::invalid_argument("perm_ls: permutation array invalid: " + v->message);

    const std::uint64_t num = static_cast<std::uint64_t>(pa->index) * binom(s.n, s.t);
    const std::uint64_t den = binom(s.k, s.t);
    if (num % den != 0) throw std::invalid_argument("perm_ls: lambda*binom(n,t) not divisible by binom(k,t)");

    LargeSet out;
    out.t = s.t;
    out.k = s.k;
    out.n = s.n;
    out.mu = static_cast<int>(num / den);
    out.systems.resize(static_cast<std::size_t>(pa->rows));
    parallel_for(out.systems.size(), [&](std::size_t r) {
        auto perm = pa->row(static_cast<int>(r));
        Design img(s.t, s.k, s.n);
        img.reserve_blocks(s.block_count());
        std::vector<Pt> tmp(static_cast<std::size_t>(s.k));
        for (std::size_t b = 0; b < s.block_count(); ++b) {
            auto blk = s.block(b);
            for (int i = 0; i < s.k; ++i) tmp[static_cast<std::size_t>(i)] = perm[blk[static_cast<std::size_t>(i)]];
            img.add_block(tmp);
        }
        out.systems[r] = std::move(img);
    });
    return out;
}

LargeSet part_expand(const Design& s, int a_size, const CodeArray& p) {
    const CodeArray* pa = &p;
    CodeArray converted;
    if (p.kind == ArrayKind::OD) {
        converted = od_as_pa(p);
        pa = &converted;
    }
    if (pa->kind != ArrayKind::PA) throw std::invalid_argument("part_expand expects a PA (or OD)");
    if (a_size < 0 || a_size >= s.n) throw std::invalid_argument("part_expand: bad A-part size");
    const int m = s.n - a_size;
    if (pa->cols != m || pa->v != m)
        throw std::invalid_argument("part_expand: PA rows must permute the B-part");
    if (auto v = verify_steiner(s))
        throw std::invalid_argument("part_expand: input design invalid: " + v->message);
    if (auto v = verify_array(*pa))
        throw std::invalid_argument("part_expand: permutation array invalid: " + v->message);

    LargeSet out;
    out.t = s.t;
    out.k = s.k;
    out.n = s.n;
    out.systems.resize(static_cast<std::size_t>(pa->rows));
    parallel_for(out.systems.size(), [&](std::size_t r) {
        auto perm = pa->row(static_cast<int>(r));
        Design img(s.t, s.k, s.n);
        img.reserve_blocks(s.block_count());
        std::vector<Pt> tmp(static_cast<std::size_t>(s.k));
        for (std::size_t b = 0; b < s.block_count(); ++b) {
            auto blk = s.block(b);
            for (int i = 0; i < s.k; ++i) {
                Pt q = blk[static_cast<std::size_t>(i)];
                tmp[static_cast<std::size_t>(i)] = q < a_size ? q : a_size + perm[q - a_size];
            }
            img.add_block(tmp);
        }
        out.systems[r] = std::move(img);
    });

    // multiplicity is read off the coverage, then the whole outcome is verified
    CoverageTable table = coverage(out.systems);
    out.mu = static_cast<int>(table.counts.empty() ? 0 : table.counts[0]);
    if (auto v = verify_ls(out))
        throw std::runtime_error("part_expand: outcome is not a large set: " + v->message);

    // closed-form cross-check for the quadruple case with |A| = 3
    if (s.k == 4 && s.t == 3 && a_size == 3) {
        std::uint64_t predicted = static_cast<std::uint64_t>(pa->index) * binom(s.n - 4, 3) / 4;
        if (static_cast<std::uint64_t>(out.mu) != predicted) {
            std::ostringstream os;
            os << "part_expand: verified mu " << out.mu << " contradicts the closed form "
               << predicted;
            throw std::runtime_error(os.str());
        }
    }
    return out;
}

std::map<Configuration, std::uint64_t> config_census(const Design& d,
                                                     std::span<const int> part_sizes) {
    int total = 0;
    for (int sz : part_sizes) {
        if (sz < 0) throw std::invalid_argument("config_census: negative part size");
        total += sz;
    }
    if (total != d.n) throw std::invalid_argument("config_census: parts do not partition the point set");
    std::vector<int> part_of(static_cast<std::size_t>(d.n), 0);
    int pos = 0;
    for (std::size_t p = 0; p < part_sizes.size(); ++p)
        for (int i = 0; i < part_sizes[p]; ++i) part_of[static_cast<std::size_t>(pos++)] = static_cast<int>(p);

    std::map<Configuration, std::uint64_t> census;
    Configuration cfg(part_sizes.size());
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        std::fill(cfg.begin(), cfg.end(), 0);
        for (Cell p : d.block(b)) ++cfg[static_cast<std::size_t>(part_of[static_cast<std::size_t>(p)])];
        ++census[cfg];
    }
    return census;
}

}  // namespace lsm
