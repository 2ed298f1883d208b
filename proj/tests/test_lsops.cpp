#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"
#include "lsm/recursion.hpp"

using namespace lsm;

namespace {

// all permutations of Z_n packaged as a PA_{n!/1}(k=n? ...) -- here used as
// the full symmetric group acting as a PA of the requested strength
CodeArray symmetric_group_pa(int n, int strength) {
    CodeArray a;
    a.kind = ArrayKind::PA;
    a.strength = strength;
    a.v = n;
    a.cols = n;
    std::vector<Cell> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    int rows = 0;
    do {
        a.cells.insert(a.cells.end(), perm.begin(), perm.end());
        ++rows;
    } while (std::next_permutation(perm.begin(), perm.end()));
    a.rows = rows;
    a.index = static_cast<int>(rows / binom(n, strength));
    return a;
}

}  // namespace

TEST_CASE("verify_steiner accepts the catalogued systems") {
    CHECK_FALSE(verify_steiner(seed_s_4_5_11()));
    Design b1 = boolean_sqs(1, 3);
    CHECK(b1.block_count() == binom(8, 3) / 4);
    CHECK_FALSE(verify_steiner(b1));
}

TEST_CASE("verify_steiner reports the uncovered subset after deleting a block") {
    Design s = seed_s_4_5_11();
    s.cells.resize(s.cells.size() - 5);  // drop the last block
    VerifyResult v = verify_steiner(s);
    REQUIRE(v.has_value());
    CHECK(v->message.find("covered 0 times") != std::string::npos);
}

TEST_CASE("verify_ls flags a duplicated system") {
    LargeSet ls = ls_3_4_10_mu2();
    ls.systems[1] = ls.systems[0];
    VerifyResult v = verify_ls(ls);
    REQUIRE(v.has_value());
    CHECK(v->message.find("covered") != std::string::npos);
}

TEST_CASE("verify_ls checks the cardinality identity") {
    LargeSet ls = ls_3_4_10_mu2();
    ls.systems.pop_back();
    VerifyResult v = verify_ls(ls);
    REQUIRE(v.has_value());
    CHECK(v->message.find("system count") != std::string::npos);
}

TEST_CASE("union of large sets adds multiplicities") {
    LargeSet two = ls_3_4_10_mu2();
    LargeSet three = ls_3_4_10_mu3();
    LargeSet five = union_ls(two, three);
    CHECK(five.mu == 5);
    CHECK(five.systems.size() == 35);
    CHECK_FALSE(verify_ls(five));

    LargeSet four = union_ls(two, two);
    CHECK(four.mu == 4);
    CHECK_FALSE(verify_ls(four));

    LargeSet wrong = two;
    wrong.n = 11;
    CHECK_THROWS(union_ls(two, wrong));
}

TEST_CASE("perm_ls over the full symmetric group on the trivial system") {
    CodeArray s4 = symmetric_group_pa(4, 4);
    REQUIRE(s4.rows == 24);
    REQUIRE(s4.index == 24);
    REQUIRE_FALSE(verify_array(s4));
    LargeSet ls = perm_ls(seed_sqs4(), s4);
    CHECK(ls.mu == 24);
    CHECK(ls.systems.size() == 24);
    for (const Design& d : ls.systems) CHECK(d == seed_sqs4());
    CHECK_FALSE(verify_ls(ls));
}

TEST_CASE("perm_ls multiplicity formula") {
    // lambda=1, t=3, k=4, n=14 gives mu = binom(14,3)/binom(4,3) = 91
    CHECK(binom(14, 3) / binom(4, 3) == 91);
}

TEST_CASE("perm_ls accepts an OD by inflating its index") {
    CodeArray od = symmetric_group_pa(4, 4);
    od.kind = ArrayKind::OD;
    od.index = 1;  // 24 rows = 1 * binom(4,4) * 4!
    REQUIRE_FALSE(verify_array(od));
    LargeSet ls = perm_ls(seed_sqs4(), od);
    CHECK(ls.mu == 24);
}

TEST_CASE("configuration census of the derived S(3,4,10)") {
    Design d10 = derived_design(seed_s_4_5_11(), 10);
    std::vector<int> parts = {3, 7};
    auto census = config_census(d10, parts);
    CHECK(census[Configuration{3, 1}] == 1);
    CHECK(census[Configuration{2, 2}] == 9);
    CHECK(census[Configuration{1, 3}] == 15);
    CHECK(census[Configuration{0, 4}] == 5);

    // independent recount straight off the blocks
    std::map<int, int> by_a;
    for (std::size_t b = 0; b < d10.block_count(); ++b) {
        int in_a = 0;
        for (Cell p : d10.block(b))
            if (p < 3) ++in_a;
        ++by_a[in_a];
    }
    CHECK(by_a[3] == 1);
    CHECK(by_a[2] == 9);
    CHECK(by_a[1] == 15);
    CHECK(by_a[0] == 5);
}

TEST_CASE("configuration census of S(5,6,12) with parts 5+7") {
    Design s12 = extend_complement(seed_s_4_5_11());
    std::vector<int> parts = {5, 7};
    auto census = config_census(s12, parts);
    CHECK(census[Configuration{5, 1}] == 1);
    CHECK(census[Configuration{4, 2}] == 15);
    CHECK(census[Configuration{3, 3}] == 50);
    CHECK(census[Configuration{2, 4}] == 50);
    CHECK(census[Configuration{1, 5}] == 15);
    CHECK(census[Configuration{0, 6}] == 1);
    std::uint64_t total = 0;
    for (const auto& [cfg, count] : census) total += count;
    CHECK(total == s12.block_count());
}

TEST_CASE("census with a single part is the block count") {
    Design d10 = derived_design(seed_s_4_5_11(), 10);
    std::vector<int> parts = {10};
    auto census = config_census(d10, parts);
    REQUIRE(census.size() == 1);
    CHECK(census[Configuration{4}] == d10.block_count());
}

TEST_CASE("part_expand realizes the closed form on an SQS(8)") {
    // |A| = 3 and a strength-4 permutation family on the remaining 5 points:
    // mu must come out as lambda * binom(n-4,3) / 4 = 24 * 4 = 24... with
    // lambda = 24 (S_5 has 120 rows = 24 * binom(5,4)) and n = 8: 24*C(4,3)/4 = 24.
    CodeArray s5 = symmetric_group_pa(5, 4);
    REQUIRE(s5.index == 24);
    REQUIRE_FALSE(verify_array(s5));
    Design sqs8 = boolean_sqs(1, 3);
    LargeSet ls = part_expand(sqs8, 3, s5);
    CHECK(ls.mu == 24);
    CHECK(ls.systems.size() == 120);
    CHECK_FALSE(verify_ls(ls));
}

TEST_CASE("part_expand rejects a family whose coverage is not constant") {
    // a pair-strength family is too weak for quadruple systems
    Design d10 = derived_design(seed_s_4_5_11(), 10);
    CodeArray weak = half_agl_pa(7);
    CHECK_THROWS_AS(part_expand(d10, 3, weak), std::runtime_error);
}

TEST_CASE("union coverage is the pointwise sum of the parts") {
    LargeSet two = ls_3_4_10_mu2();
    LargeSet three = ls_3_4_10_mu3();
    LargeSet five = union_ls(two, three);
    CoverageTable ta = coverage(two.systems);
    CoverageTable tb = coverage(three.systems);
    CoverageTable tc = coverage(five.systems);
    REQUIRE(tc.counts.size() == ta.counts.size());
    for (std::size_t r = 0; r < tc.counts.size(); ++r)
        REQUIRE(tc.counts[r] == ta.counts[r] + tb.counts[r]);
}

TEST_CASE("perm_ls on a one-factor with a pair PA") {
    // S(1,2,4) = a perfect matching; agl_pa(4) rows act as the permutations
    Design matching(1, 2, 4);
    matching.add_block({0, 1});
    matching.add_block({2, 3});
    LargeSet ls = perm_ls(matching, agl_pa(4));
    CHECK(ls.mu == 4);  // 2 * binom(4,1) / binom(2,1)
    CHECK(ls.systems.size() == 12);
    CHECK_FALSE(verify_ls(ls));
}
