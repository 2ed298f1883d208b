#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"

using namespace lsm;

TEST_CASE("seed designs have the catalogued shapes") {
    Design s11 = seed_s_4_5_11();
    CHECK(s11.t == 4);
    CHECK(s11.k == 5);
    CHECK(s11.n == 11);
    CHECK(s11.block_count() == 66);
    CHECK_FALSE(verify_steiner(s11));

    CHECK(seed_sqs4().block_count() == 1);
    CHECK(perms_s11().size() == 13);
    CHECK(perms_s10().size() == 20);
    CHECK(perms_h7().size() == 8);
    // the first table row is the identity
    std::vector<Pt> id(14);
    std::iota(id.begin(), id.end(), 0);
    CHECK(perms_h7()[0] == id);

    GroupedDesign h7 = seed_h_7_2();
    CHECK(h7.n == 7);
    CHECK(h7.g == 2);
    CHECK(h7.block_count() == 70);
    // canonical group-major encoding: group of p is p / g
    for (std::size_t b = 0; b < h7.block_count(); ++b) {
        auto blk = h7.block(b);
        for (std::size_t i = 1; i < blk.size(); ++i) CHECK(blk[i] / 2 != blk[i - 1] / 2);
    }
    // block count formula: binom(n,t) g^t / binom(k,t)
    GroupedDesign h6 = seed_h_6_3();
    CHECK(h6.block_count() == binom(6, 3) * 27 / binom(4, 3));
    CHECK(h6.block_count() == 135);
}

TEST_CASE("cyclic orbit: translate 0 is the identity and orbits relabel cleanly") {
    RawGroupedBlocks raw = raw_h_5_4();
    std::vector<RawGroupedBlocks> orbit = orbit_cyclic(raw, 8);
    REQUIRE(orbit.size() == 8);
    CHECK(orbit[0].blocks.size() == raw.blocks.size());
    // translate 0 only re-sorts rows
    for (std::size_t b = 0; b < raw.blocks.size(); ++b) {
        std::vector<Pt> sorted_raw = raw.blocks[b];
        std::sort(sorted_raw.begin(), sorted_raw.end());
        CHECK(orbit[0].blocks[b] == sorted_raw);
    }
    CHECK(to_canonical(orbit[0], 3) == seed_h_5_4());
}

TEST_CASE("applying the identity permutation reproduces the design") {
    Design s11 = seed_s_4_5_11();
    std::vector<Pt> id(11);
    std::iota(id.begin(), id.end(), 0);
    Design img = apply_perm(s11, id);
    CHECK(img == s11);
    std::vector<Pt> not_perm = {0, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK_THROWS(apply_perm(s11, not_perm));
}

TEST_CASE("permutation images keep block counts and validity") {
    Design s11 = seed_s_4_5_11();
    auto perms = perms_s11();
    std::vector<Design> images = apply_perms(s11, perms);
    REQUIRE(images.size() == 13);
    for (const Design& img : images) {
        CHECK(img.block_count() == 66);
        CHECK_FALSE(verify_steiner(img));
    }
}

TEST_CASE("derived design at the last point") {
    Design s11 = seed_s_4_5_11();
    Design d10 = derived_design(s11, 10);
    CHECK(d10.t == 3);
    CHECK(d10.k == 4);
    CHECK(d10.n == 10);
    CHECK(d10.block_count() == 30);
    CHECK_FALSE(verify_steiner(d10));
}

TEST_CASE("derived design relabels interior points") {
    // SQS(4) seen as S(3,4,4); removing point 1 leaves the triple {0,1,2}
    Design s = seed_sqs4();
    Design t = derived_design(s, 1);
    CHECK(t.t == 2);
    CHECK(t.k == 3);
    CHECK(t.n == 3);
    REQUIRE(t.block_count() == 1);
    CHECK(std::vector<Cell>(t.block(0).begin(), t.block(0).end()) == std::vector<Cell>{0, 1, 2});
}

TEST_CASE("extension by the new point plus complements") {
    Design s11 = seed_s_4_5_11();
    Design e = extend_complement(s11);
    CHECK(e.block_count() == binom(12, 5) / binom(6, 5));
    CHECK(e.block_count() == 132);
    CHECK_FALSE(verify_steiner(e));
    for (std::size_t b = 0; b < e.block_count(); ++b) {
        auto blk = e.block(b);
        bool has11 = std::find(blk.begin(), blk.end(), static_cast<Cell>(11)) != blk.end();
        if (!has11) {
            // must be the complement of a source block within the first 11 points
            std::vector<Pt> comp;
            for (Pt q = 0; q < 11; ++q)
                if (std::find(blk.begin(), blk.end(), static_cast<Cell>(q)) == blk.end())
                    comp.push_back(q);
            CHECK(comp.size() == 5);
            bool found = false;
            for (std::size_t sb = 0; sb < s11.block_count(); ++sb) {
                auto src = s11.block(sb);
                if (std::equal(src.begin(), src.end(), comp.begin(), comp.end())) found = true;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("LS(3,4,10;mu) composition") {
    CHECK(ls_3_4_10(2).systems.size() == 14);
    CHECK(ls_3_4_10(3).systems.size() == 21);
    CHECK(ls_3_4_10(4).systems.size() == 28);
    CHECK(ls_3_4_10(5).systems.size() == 35);
    LargeSet nine = ls_3_4_10(9);
    CHECK(nine.systems.size() == 63);
    CHECK_FALSE(verify_ls(nine));
    CHECK_THROWS(ls_3_4_10(1));
}

TEST_CASE("derived large set verifies at mu=5 via union") {
    LargeSet five = ls_3_4_10(5);
    CHECK_FALSE(verify_ls(five));
}
