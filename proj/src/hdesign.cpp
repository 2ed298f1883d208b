#include "lsm/hdesign.hpp"

#include <algorithm>
#include <sstream>

#include "lsm/lsops.hpp"

namespace lsm {

namespace {

std::string subset_str(std::span<const Pt> pts) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
    os << "}";
    return os.str();
}

VerifyResult check_grouped_well_formed(const GroupedDesign& d) {
    if (d.n < 1 || d.g < 1 || d.k < 1 || d.t < 1 || d.t > d.k || d.k > d.n)
        return verify_fail("degenerate parameters (need 1 <= t <= k <= n groups)");
    if (d.cells.size() % static_cast<std::size_t>(d.k) != 0)
        return verify_fail("cell storage is not a whole number of blocks");
    const int np = d.point_count();
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        auto blk = d.block(b);
        for (std::size_t i = 0; i < blk.size(); ++i) {
            if (blk[i] < 0 || blk[i] >= np) {
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
        for (std::size_t i = 1; i < blk.size(); ++i)
            if (d.group_of(blk[i]) == d.group_of(blk[i - 1])) {
                std::ostringstream os;
                os << "block " << b << " " << subset_str(std::vector<Pt>(blk.begin(), blk.end()))
                   << " meets group " << d.group_of(blk[i]) << " twice";
                return verify_fail(os.str());
            }
    }
    return verify_ok();
}

bool transversal_subset(std::span<const Pt> pts, int g) {
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] / g == pts[i - 1] / g) return false;
    return true;
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

std::uint64_t h_block_count(const GroupedDesign& d) {
    std::uint64_t gt = 1;
    for (int i = 0; i < d.t; ++i) gt *= static_cast<std::uint64_t>(d.g);
    return binom(d.n, d.t) * gt / binom(d.k, d.t);
}

}  // namespace

void GroupedDesign::add_block(std::span<const Pt> pts) {
    if (static_cast<int>(pts.size()) != k) throw std::invalid_argument("block size != k");
    Pt tmp[16];
    const int np = point_count();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i] < 0 || pts[i] >= np) throw std::invalid_argument("point out of range");
        tmp[i] = pts[i];
    }
    std::sort(tmp, tmp + pts.size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (tmp[i] == tmp[i - 1]) throw std::invalid_argument("duplicate point in block");
        if (tmp[i] / g == tmp[i - 1] / g) throw std::invalid_argument("block meets a group twice");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) cells.push_back(static_cast<Cell>(tmp[i]));
}

VerifyResult verify_h(const GroupedDesign& d) {
    if (auto v = check_grouped_well_formed(d)) return v;
    std::vector<std::uint32_t> cover(binom(d.point_count(), d.t), 0);
    for (std::size_t b = 0; b < d.block_count(); ++b)
        for_each_t_subset(d.block(b), d.t, [&](std::uint64_t r) { ++cover[r]; });
    for (std::size_t r = 0; r < cover.size(); ++r) {
        std::vector<Pt> sub = unrank_subset(r, d.t, d.point_count());
        std::uint32_t want = transversal_subset(sub, d.g) ? 1 : 0;
        if (cover[r] != want) {
            std::ostringstream os;
            os << "transversal " << d.t << "-subset " << subset_str(sub) << " is covered "
               << cover[r] << " times, expected " << want;
            return verify_fail(os.str());
        }
    }
    if (d.block_count() != h_block_count(d)) {
        std::ostringstream os;
        os << "block count " << d.block_count() << " != " << h_block_count(d);
        return verify_fail(os.str());
    }
    return verify_ok();
}

VerifyResult verify_lh(const LargeSetH& ls) {
    if (ls.systems.empty()) return verify_fail("large set holds no systems");
    for (const GroupedDesign& d : ls.systems)
        if (d.n != ls.n || d.g != ls.g || d.k != ls.k || d.t != ls.t)
            return verify_fail("member parameters differ from the large set header");

    std::uint64_t gkt = 1;
    for (int i = 0; i < ls.k - ls.t; ++i) gkt *= static_cast<std::uint64_t>(ls.g);
    const std::uint64_t want = binom(ls.n - ls.t, ls.k - ls.t) * gkt;
    if (ls.systems.size() != want) {
        std::ostringstream os;
        os << "system count " << ls.systems.size() << " != binom(n-t,k-t)*g^(k-t) = " << want;
        return verify_fail(os.str());
    }

    std::vector<VerifyResult> member(ls.systems.size());
    parallel_for(ls.systems.size(), [&](std::size_t i) { member[i] = verify_h(ls.systems[i]); });
    for (std::size_t i = 0; i < member.size(); ++i) {
        if (member[i]) {
            std::ostringstream os;
            os << "system " << i << ": " << member[i]->message;
            return verify_fail(os.str());
        }
    }

    const int np = ls.n * ls.g;
    std::vector<std::uint32_t> cover(binom(np, ls.k), 0);
    for (const GroupedDesign& d : ls.systems)
        for (std::size_t b = 0; b < d.block_count(); ++b) ++cover[rank_subset(d.block(b))];
    for (std::size_t r = 0; r < cover.size(); ++r) {
        std::vector<Pt> sub = unrank_subset(r, ls.k, np);
        std::uint32_t want_cover = transversal_subset(sub, ls.g) ? 1 : 0;
        if (cover[r] != want_cover) {
            std::ostringstream os;
            os << "transversal " << ls.k << "-subset " << subset_str(sub) << " is covered "
               << cover[r] << " times across systems, expected " << want_cover;
            return verify_fail(os.str());
        }
    }
    return verify_ok();
}

LargeSetH lh_from_ls(const LargeSet& ls, const CodeArray& oa) {
    if (oa.kind != ArrayKind::OA) throw std::invalid_argument("lh_from_ls expects an OA");
    if (oa.strength != ls.t || oa.cols != ls.k)
        throw std::invalid_argument("lh_from_ls: OA must have strength t and k columns");
    const int g = oa.v;
    std::uint64_t gkt = 1;
    for (int i = 0; i < ls.k - ls.t; ++i) gkt *= static_cast<std::uint64_t>(g);
    if (static_cast<std::uint64_t>(ls.mu) != gkt)
        throw std::invalid_argument("lh_from_ls: multiplicity must equal g^(k-t)");
    if (auto v = verify_ls(ls))
        throw std::invalid_argument("lh_from_ls: input large set invalid: " + v->message);

    std::vector<CodeArray> loa = loa_from_oa(oa);

    LargeSetH out;
    out.n = ls.n;
    out.g = g;
    out.k = ls.k;
    out.t = ls.t;
    out.systems.assign(ls.systems.size(), GroupedDesign{});
    for (std::size_t i = 0; i < out.systems.size(); ++i) {
        out.systems[i].n = ls.n;
        out.systems[i].g = g;
        out.systems[i].k = ls.k;
        out.systems[i].t = ls.t;
    }

    // seen[r] = how many systems so far (ascending index) contained subset r;
    // the j-th of them receives the blocks built from LOA part C_j.
    std::vector<std::uint32_t> seen(binom(ls.n, ls.k), 0);
    std::vector<Pt> pt(static_cast<std::size_t>(ls.k));
    for (std::size_t s = 0; s < ls.systems.size(); ++s) {
        const Design& d = ls.systems[s];
        GroupedDesign& target = out.systems[s];
        target.cells.reserve(d.block_count() * loa[0].cells.size() / static_cast<std::size_t>(ls.k));
        for (std::size_t b = 0; b < d.block_count(); ++b) {
            auto blk = d.block(b);
            std::uint32_t j = seen[rank_subset(blk)]++;
            const CodeArray& part = loa[j];
            for (int r = 0; r < part.rows; ++r) {
                auto y = part.row(r);
                for (int i = 0; i < ls.k; ++i)
                    pt[static_cast<std::size_t>(i)] = blk[static_cast<std::size_t>(i)] * g + y[static_cast<std::size_t>(i)];
                target.add_block(pt);
            }
        }
    }
    return out;
}

LargeSetH lh_expand(const LargeSetH& lh, const CodeArray& oa) {
    if (oa.kind != ArrayKind::OA) throw std::invalid_argument("lh_expand expects an OA");
    if (oa.strength != lh.t || oa.cols != lh.k)
        throw std::invalid_argument("lh_expand: OA must have strength t and k columns");
    if (auto v = verify_lh(lh))
        throw std::invalid_argument("lh_expand: input large set invalid: " + v->message);

    const int u = oa.v;
    std::vector<CodeArray> loa = loa_from_oa(oa);

    LargeSetH out;
    out.n = lh.n;
    out.g = lh.g * u;
    out.k = lh.k;
    out.t = lh.t;
    out.systems.reserve(lh.systems.size() * loa.size());
    std::vector<Pt> pt(static_cast<std::size_t>(lh.k));
    for (const GroupedDesign& a : lh.systems) {
        for (const CodeArray& part : loa) {
            GroupedDesign c;
            c.n = out.n;
            c.g = out.g;
            c.k = out.k;
            c.t = out.t;
            c.cells.reserve(a.block_count() * static_cast<std::size_t>(part.rows) * static_cast<std::size_t>(lh.k));
            for (std::size_t b = 0; b < a.block_count(); ++b) {
                auto blk = a.block(b);
                for (int r = 0; r < part.rows; ++r) {
                    auto row = part.row(r);
                    for (int i = 0; i < lh.k; ++i) {
                        int x = blk[static_cast<std::size_t>(i)] / lh.g;
                        int y = blk[static_cast<std::size_t>(i)] % lh.g;
                        pt[static_cast<std::size_t>(i)] = x * out.g + y * u + row[static_cast<std::size_t>(i)];
                    }
                    c.add_block(pt);
                }
            }
            out.systems.push_back(std::move(c));
        }
    }
    return out;
}

bool h_feasible(int n, int g) {
    if (n < 4) return false;
    if ((static_cast<long long>(g) * n) % 2 != 0) return false;
    if ((static_cast<long long>(g) * (n - 1) * (n - 2)) % 3 != 0) return false;
    if (n == 5 && g == 2) return false;
    return true;
}

}  // namespace lsm
