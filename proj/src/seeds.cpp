#include "lsm/seeds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lsm/lsops.hpp"

namespace lsm {

#include "seed_tables.inc"

namespace {

template <std::size_t Rows, std::size_t Cols>
std::vector<std::vector<Pt>> to_perms(const int16_t (&table)[Rows][Cols]) {
    std::vector<std::vector<Pt>> out(Rows, std::vector<Pt>(Cols));
    for (std::size_t r = 0; r < Rows; ++r)
        for (std::size_t c = 0; c < Cols; ++c) out[r][c] = table[r][c];
    return out;
}

template <std::size_t Rows, std::size_t Cols>
std::vector<std::vector<Pt>> to_blocks(const int16_t (&table)[Rows][Cols]) {
    std::vector<std::vector<Pt>> out(Rows, std::vector<Pt>(Cols));
    for (std::size_t r = 0; r < Rows; ++r)
        for (std::size_t c = 0; c < Cols; ++c) out[r][c] = table[r][c];
    return out;
}

void check_permutation(std::span<const Pt> perm, int n) {
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Pt p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
}

}  // namespace

Design seed_sqs4() {
    Design d(3, 4, 4);
    d.add_block({0, 1, 2, 3});
    return d;
}

Design seed_s_4_5_11() {
    Design d(4, 5, 11);
    d.reserve_blocks(66);
    for (const auto& row : kS45_11Blocks) d.add_block({row[0], row[1], row[2], row[3], row[4]});
    return d;
}

std::vector<std::vector<Pt>> perms_s11() { return to_perms(kPermsS11); }
std::vector<std::vector<Pt>> perms_s10() { return to_perms(kPermsS10); }
std::vector<std::vector<Pt>> perms_h7() { return to_perms(kPermsH7); }

RawGroupedBlocks raw_h_5_4() {
    RawGroupedBlocks d;
    d.point_count = 20;
    d.groups = {{0, 2, 4, 6}, {1, 3, 5, 7}, {8, 11, 14, 17}, {9, 12, 15, 18}, {10, 13, 16, 19}};
    d.blocks = to_blocks(kH5Blocks);
    return d;
}

RawGroupedBlocks raw_h_6_3() {
    RawGroupedBlocks d;
    d.point_count = 18;
    d.groups = {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {9, 12, 15}, {10, 13, 16}, {11, 14, 17}};
    d.blocks = to_blocks(kH6Blocks);
    return d;
}

RawGroupedBlocks raw_h_7_2() {
    RawGroupedBlocks d;
    d.point_count = 14;
    d.groups.resize(7);
    for (int i = 0; i < 7; ++i) d.groups[static_cast<std::size_t>(i)] = {i, i + 7};
    d.blocks = to_blocks(kH7Blocks);
    return d;
}

std::vector<RawGroupedBlocks> orbit_cyclic(const RawGroupedBlocks& d, int modulus) {
    if (modulus < 1 || modulus > d.point_count)
        throw std::invalid_argument("orbit_cyclic: modulus outside point range");
    std::vector<RawGroupedBlocks> orbit;
    orbit.reserve(static_cast<std::size_t>(modulus));
    for (int s = 0; s < modulus; ++s) {
        RawGroupedBlocks img;
        img.point_count = d.point_count;
        img.groups = d.groups;
        img.blocks.reserve(d.blocks.size());
        for (const auto& blk : d.blocks) {
            std::vector<Pt> nb(blk.size());
            for (std::size_t i = 0; i < blk.size(); ++i)
                nb[i] = blk[i] < modulus ? (blk[i] + s) % modulus : blk[i];
            std::sort(nb.begin(), nb.end());
            img.blocks.push_back(std::move(nb));
        }
        orbit.push_back(std::move(img));
    }
    return orbit;
}

GroupedDesign to_canonical(const RawGroupedBlocks& d, int t) {
    const int n = static_cast<int>(d.groups.size());
    if (n == 0) throw std::invalid_argument("to_canonical: no groups");
    const int g = static_cast<int>(d.groups[0].size());
    std::vector<Pt> relabel(static_cast<std::size_t>(d.point_count), -1);
    for (int gi = 0; gi < n; ++gi) {
        const auto& grp = d.groups[static_cast<std::size_t>(gi)];
        if (static_cast<int>(grp.size()) != g)
            throw std::invalid_argument("to_canonical: unequal group sizes");
        std::vector<Pt> sorted_grp = grp;
        std::sort(sorted_grp.begin(), sorted_grp.end());
        for (int slot = 0; slot < g; ++slot)
            relabel[static_cast<std::size_t>(sorted_grp[static_cast<std::size_t>(slot)])] = gi * g + slot;
    }
    for (Pt p : relabel)
        if (p < 0) throw std::invalid_argument("to_canonical: groups do not partition the points");

    GroupedDesign out;
    out.n = n;
    out.g = g;
    out.t = t;
    out.k = d.blocks.empty() ? 0 : static_cast<int>(d.blocks[0].size());
    std::vector<Pt> nb;
    for (const auto& blk : d.blocks) {
        nb.assign(blk.size(), 0);
        for (std::size_t i = 0; i < blk.size(); ++i) nb[i] = relabel[static_cast<std::size_t>(blk[i])];
        out.add_block(nb);
    }
    return out;
}

GroupedDesign seed_h_5_4() { return to_canonical(raw_h_5_4(), 3); }
GroupedDesign seed_h_6_3() { return to_canonical(raw_h_6_3(), 3); }
GroupedDesign seed_h_7_2() { return to_canonical(raw_h_7_2(), 3); }

Design apply_perm(const Design& d, std::span<const Pt> perm) {
    check_permutation(perm, d.n);
    Design img(d.t, d.k, d.n);
    img.reserve_blocks(d.block_count());
    std::vector<Pt> tmp(static_cast<std::size_t>(d.k));
    for (std::size_t b = 0; b < d.block_count(); ++b) {
        auto blk = d.block(b);
        for (int i = 0; i < d.k; ++i)
            tmp[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(blk[static_cast<std::size_t>(i)])];
        img.add_block(tmp);
    }
    return img;
}

std::vector<Design> apply_perms(const Design& d, std::span<const std::vector<Pt>> perms) {
    std::vector<Design> out;
    out.reserve(perms.size());
    for (const auto& perm : perms) out.push_back(apply_perm(d, perm));
    return out;
}

Design derived_design(const Design& s, Pt p) {
    if (p < 0 || p >= s.n) throw std::invalid_argument("derived_design: point out of range");
    if (auto v = verify_steiner(s))
        throw std::invalid_argument("derived_design: input invalid: " + v->message);
    Design out(s.t - 1, s.k - 1, s.n - 1);
    std::vector<Pt> tmp;
    for (std::size_t b = 0; b < s.block_count(); ++b) {
        auto blk = s.block(b);
        if (!std::binary_search(blk.begin(), blk.end(), static_cast<Cell>(p))) continue;
        tmp.clear();
        for (Cell q : blk)
            if (q != p) tmp.push_back(q < p ? q : q - 1);
        out.add_block(tmp);
    }
    return out;
}

Design extend_complement(const Design& s) {
    if (s.t != 4 || s.k != 5 || s.n != 11)
        throw std::invalid_argument("extend_complement expects an S(4,5,11)");
    if (auto v = verify_steiner(s))
        throw std::invalid_argument("extend_complement: input invalid: " + v->message);
    Design out(5, 6, 12);
    out.reserve_blocks(2 * s.block_count());
    std::vector<Pt> tmp;
    for (std::size_t b = 0; b < s.block_count(); ++b) {
        auto blk = s.block(b);
        tmp.assign(blk.begin(), blk.end());
        tmp.push_back(11);
        out.add_block(tmp);
    }
    for (std::size_t b = 0; b < s.block_count(); ++b) {
        auto blk = s.block(b);
        tmp.clear();
        for (Pt q = 0; q < 11; ++q)
            if (!std::binary_search(blk.begin(), blk.end(), static_cast<Cell>(q))) tmp.push_back(q);
        out.add_block(tmp);
    }
    return out;
}

LargeSet ls_4_5_11() {
    Design base = seed_s_4_5_11();
    LargeSet out;
    out.t = 4;
    out.k = 5;
    out.n = 11;
    out.mu = 2;
    out.systems.push_back(base);
    for (const auto& perm : perms_s11()) out.systems.push_back(apply_perm(base, perm));
    return out;
}

LargeSet ls_3_4_10_mu2() {
    LargeSet src = ls_4_5_11();
    LargeSet out;
    out.t = 3;
    out.k = 4;
    out.n = 10;
    out.mu = 2;
    out.systems.reserve(src.systems.size());
    for (const Design& s : src.systems) out.systems.push_back(derived_design(s, 10));
    return out;
}

LargeSet ls_3_4_10_mu3() {
    Design base = derived_design(seed_s_4_5_11(), 10);
    LargeSet out;
    out.t = 3;
    out.k = 4;
    out.n = 10;
    out.mu = 3;
    out.systems.push_back(base);
    for (const auto& perm : perms_s10()) out.systems.push_back(apply_perm(base, perm));
    return out;
}

LargeSet ls_5_6_12() {
    LargeSet src = ls_4_5_11();
    LargeSet out;
    out.t = 5;
    out.k = 6;
    out.n = 12;
    out.mu = 2;
    out.systems.reserve(src.systems.size());
    for (const Design& s : src.systems) out.systems.push_back(extend_complement(s));
    return out;
}

LargeSet ls_3_4_10(int mu) {
    if (mu < 2) throw std::invalid_argument("ls_3_4_10 requires mu >= 2");
    int b = -1;
    for (int cand = 0; cand <= 2; ++cand) {
        if (mu - 3 * cand >= 0 && (mu - 3 * cand) % 2 == 0) {
            b = cand;
            break;
        }
    }
    if (b < 0) throw std::logic_error("ls_3_4_10: no feasible composition");
    const int a = (mu - 3 * b) / 2;

    LargeSet out;
    out.t = 3;
    out.k = 4;
    out.n = 10;
    out.mu = mu;
    if (a > 0) {
        LargeSet two = ls_3_4_10_mu2();
        for (int i = 0; i < a; ++i)
            out.systems.insert(out.systems.end(), two.systems.begin(), two.systems.end());
    }
    if (b > 0) {
        LargeSet three = ls_3_4_10_mu3();
        for (int i = 0; i < b; ++i)
            out.systems.insert(out.systems.end(), three.systems.begin(), three.systems.end());
    }
    return out;
}

namespace {

LargeSetH orbit_lh(const RawGroupedBlocks& raw, int modulus, int t) {
    std::vector<RawGroupedBlocks> orbit = orbit_cyclic(raw, modulus);
    LargeSetH out;
    GroupedDesign first = to_canonical(orbit[0], t);
    out.n = first.n;
    out.g = first.g;
    out.k = first.k;
    out.t = t;
    out.systems.push_back(std::move(first));
    for (std::size_t i = 1; i < orbit.size(); ++i) out.systems.push_back(to_canonical(orbit[i], t));
    return out;
}

}  // namespace

LargeSetH lh_5_4() { return orbit_lh(raw_h_5_4(), 8, 3); }
LargeSetH lh_6_3() { return orbit_lh(raw_h_6_3(), 9, 3); }

LargeSetH lh_7_2() {
    RawGroupedBlocks raw = raw_h_7_2();
    LargeSetH out;
    out.n = 7;
    out.g = 2;
    out.k = 4;
    out.t = 3;
    for (const auto& perm : perms_h7()) {
        check_permutation(perm, 14);
        RawGroupedBlocks img;
        img.point_count = raw.point_count;
        img.groups = raw.groups;
        img.blocks.reserve(raw.blocks.size());
        for (const auto& blk : raw.blocks) {
            std::vector<Pt> nb(blk.size());
            for (std::size_t i = 0; i < blk.size(); ++i) nb[i] = perm[static_cast<std::size_t>(blk[i])];
            std::sort(nb.begin(), nb.end());
            img.blocks.push_back(std::move(nb));
        }
        out.systems.push_back(to_canonical(img, 3));
    }
    return out;
}

}  // namespace lsm
