#include "doctest.h"
#include "lsm/hdesign.hpp"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"
#include "lsm/recursion.hpp"

using namespace lsm;

TEST_CASE("verify_h accepts the seeds and checks the block-count formula") {
    GroupedDesign h5 = seed_h_5_4();
    CHECK(h5.block_count() == binom(5, 3) * 64 / binom(4, 3));  // 160
    CHECK_FALSE(verify_h(h5));
    CHECK_FALSE(verify_h(seed_h_6_3()));
    CHECK_FALSE(verify_h(seed_h_7_2()));
}

TEST_CASE("verify_h flags a point moved within its own group") {
    GroupedDesign h7 = seed_h_7_2();
    // swap the parity of one point: stays in the same group, breaks coverage
    Cell& cell = h7.cells[0];
    cell = static_cast<Cell>(cell ^ 1);
    std::sort(h7.cells.begin(), h7.cells.begin() + 4);
    VerifyResult v = verify_h(h7);
    REQUIRE(v.has_value());
    CHECK_FALSE(v->message.empty());
}

TEST_CASE("verify_h flags a non-transversal block") {
    GroupedDesign d;
    d.n = 4;
    d.g = 2;
    d.k = 4;
    d.t = 3;
    d.add_block({0, 2, 4, 6});
    d.cells[1] = 1;  // block {0,1,4,6} meets group 0 twice
    VerifyResult v = verify_h(d);
    REQUIRE(v.has_value());
    CHECK(v->message.find("group") != std::string::npos);
}

TEST_CASE("verify_lh accepts the three seed expansions") {
    CHECK_FALSE(verify_lh(lh_5_4()));
    CHECK_FALSE(verify_lh(lh_6_3()));
    CHECK_FALSE(verify_lh(lh_7_2()));
}

TEST_CASE("verify_lh checks the cardinality identity") {
    LargeSetH lh = lh_7_2();
    lh.systems.pop_back();
    VerifyResult v = verify_lh(lh);
    REQUIRE(v.has_value());
    CHECK(v->message.find("system count") != std::string::npos);
}

TEST_CASE("lh_from_ls keeps the system count") {
    LargeSet ls = ls_3_4_10_mu2();
    LargeSetH lh = lh_from_ls(ls, zero_sum_oa(4, 2));
    CHECK(lh.systems.size() == ls.systems.size());
    CHECK(lh.n == 10);
    CHECK(lh.g == 2);
    for (const GroupedDesign& d : lh.systems) CHECK(d.block_count() == 240);
    CHECK_FALSE(verify_lh(lh));
}

TEST_CASE("lh_from_ls rejects a multiplicity that is not g^(k-t)") {
    LargeSet ls = ls_3_4_10_mu3();
    CHECK_THROWS(lh_from_ls(ls, zero_sum_oa(4, 2)));
}

TEST_CASE("lh_expand grows the group size") {
    LargeSetH base = lh_6_3();
    LargeSetH out = lh_expand(base, zero_sum_oa(4, 2));
    CHECK(out.g == 6);
    CHECK(out.systems.size() == 18);
    CHECK_FALSE(verify_lh(out));

    LargeSetH five = lh_expand(lh_5_4(), zero_sum_oa(4, 2));
    CHECK(five.g == 8);
    CHECK(five.systems.size() == 16);
    CHECK_FALSE(verify_lh(five));
}

TEST_CASE("necessary conditions for H(n,g,4,3)") {
    CHECK_FALSE(h_feasible(5, 2));
    for (int g = 1; g <= 12; ++g) {
        CHECK(h_feasible(6, g) == (g % 3 == 0));
        CHECK(h_feasible(7, g) == (g % 2 == 0));
    }
    CHECK(h_feasible(4, 1));
    CHECK(h_feasible(10, 2));
    CHECK_FALSE(h_feasible(3, 6));
    // every verified H-design in the corpus satisfies the condition
    CHECK(h_feasible(5, 4));
    CHECK(h_feasible(6, 3));
    CHECK(h_feasible(7, 2));
    CHECK(h_feasible(8, 3));
}
