#include <map>
#include <sstream>

#include "doctest.h"
#include "lsm/io.hpp"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"
#include "lsm/recursion.hpp"

using namespace lsm;

namespace {

LargeSet trivial_ls() {
    LargeSet ls;
    ls.t = 3;
    ls.k = 4;
    ls.n = 4;
    ls.mu = 3;
    for (int i = 0; i < 3; ++i) ls.systems.push_back(seed_sqs4());
    return ls;
}

}  // namespace

TEST_CASE("dls yields one SQS(2n) per permutation row") {
    std::vector<Design> out = double_by_permutations(seed_sqs4(), agl_pa(4));
    REQUIRE(out.size() == 12);
    for (const Design& d : out) {
        CHECK(d.n == 8);
        CHECK(d.block_count() == binom(8, 3) / 4);
        CHECK_FALSE(verify_steiner(d));
    }
}

TEST_CASE("db yields one SQS(2n) per source system") {
    LargeSet base = trivial_ls();
    OneFactorization f = circle_one_factorization(4);
    std::vector<Design> out = double_by_factorizations(base, f, f, cyclic_latin(3));
    REQUIRE(out.size() == 3);
    for (const Design& d : out) CHECK_FALSE(verify_steiner(d));
    LargeSet wrong = base;
    wrong.mu = 4;  // not of the form g*(n-1)
    wrong.systems.push_back(seed_sqs4());
    CHECK_THROWS(double_by_factorizations(wrong, f, f, cyclic_latin(3)));
}

TEST_CASE("double_ls keeps the multiplicity") {
    LargeSet out = double_ls(trivial_ls(), agl_pa(4));
    CHECK(out.n == 8);
    CHECK(out.mu == 3);
    CHECK(out.systems.size() == 15);
    CHECK_FALSE(verify_ls(out));
}

TEST_CASE("leftover plan for n=4, mu=3") {
    std::vector<LeftoverLabel> plan = leftover_plan(4, 3);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0] == LeftoverLabel{LeftoverLabel::Family::D, 3});
    CHECK(plan[1] == LeftoverLabel{LeftoverLabel::Family::E, 3});
    CHECK(plan[2] == LeftoverLabel{LeftoverLabel::Family::E, 7});
}

TEST_CASE("leftover label multiset identity") {
    for (auto [n, mu] : {std::pair{4, 3}, {10, 9}, {8, 7}, {20, 19}}) {
        int t = (mu + n - 1) / n;
        CHECK(t * n + (mu - t) * n - 3 * mu == (n - 3) * mu);
        CHECK(leftover_plan(n, mu).size() == static_cast<std::size_t>((n - 3) * mu));
    }
}

TEST_CASE("every slot-transversal quadruple lies in exactly mu label families") {
    // n=4, mu=3: count, over all D_j and E_j, how many contain each quadruple
    const int n = 4, mu = 3;
    const int t = 1;
    for (int p0 = 0; p0 < n; ++p0)
        for (int p1 = 0; p1 < n; ++p1)
            for (int p2 = 0; p2 < n; ++p2)
                for (int p3 = 0; p3 < n; ++p3) {
                    int count = 0;
                    for (int j = 0; j < t * n; ++j)
                        if (mod(p0 + p2 - p1 + j, n) == p3) ++count;
                    for (int j = 0; j < (mu - t) * n; ++j)
                        if (mod(p2 + p1 - p0 + j, n) == p3) ++count;
                    CHECK(count == mu);
                }
}

TEST_CASE("Boolean quadruple systems") {
    Design b1 = boolean_sqs(1, 3);
    CHECK(b1.block_count() == 14);
    CHECK_FALSE(verify_steiner(b1));
    for (int i = 1; i < 8; ++i) CHECK_FALSE(verify_steiner(boolean_sqs(i, 3)));
    CHECK_THROWS(boolean_sqs(0, 3));
    CHECK_THROWS(boolean_sqs(8, 3));

    // coverage across the seven systems: XOR-zero quadruples three times,
    // everything else exactly once
    std::vector<Design> all;
    for (int i = 1; i < 8; ++i) all.push_back(boolean_sqs(i, 3));
    CoverageTable tab = coverage(all);
    for (std::uint64_t r = 0; r < tab.counts.size(); ++r) {
        std::vector<Pt> sub = unrank_subset(r, 4, 8);
        int x = sub[0] ^ sub[1] ^ sub[2] ^ sub[3];
        CHECK(tab.counts[r] == (x == 0 ? 3u : 1u));
    }
}

TEST_CASE("quadrupling splits coverage between the two system types exactly") {
    const int n = 4, mu = 3, gamma = 2;
    LargeSet base = trivial_ls();
    OneFactorization f = circle_one_factorization(n);
    LargeSet out = quad_ls(base, agl_pa(4), f, cyclic_latin(3));
    REQUIRE(out.systems.size() == 39);
    const std::size_t type_a = static_cast<std::size_t>(3 * n * mu);
    std::vector<Design> a_part(out.systems.begin(), out.systems.begin() + type_a);
    std::vector<Design> b_part(out.systems.begin() + type_a, out.systems.end());
    CoverageTable ta = coverage(a_part);
    CoverageTable tb = coverage(b_part);
    for (std::uint64_t r = 0; r < ta.counts.size(); ++r) {
        std::vector<Pt> sub = unrank_subset(r, 4, 16);
        std::vector<Cell> cells(sub.begin(), sub.end());
        int group = config_group(classify_configuration(std::span<const Cell>(cells), 4, n));
        int in_a = static_cast<int>(ta.counts[r]);
        int in_b = static_cast<int>(tb.counts[r]);
        switch (group) {
            case 1:
                CHECK(in_a == 0);
                CHECK(in_b == mu);
                break;
            case 2:
            case 4:
                CHECK(in_a == mu);
                CHECK(in_b == 0);
                break;
            case 3:
                CHECK(in_a == gamma);
                CHECK(in_b == mu - gamma);
                break;
            default:
                CHECK(in_a + in_b == mu);
        }
    }
}

TEST_CASE("driver stages agree with direct calls and m=0 is the identity") {
    LargeSet base = trivial_ls();
    CodeArray pa = agl_pa(4);
    CHECK(rec4n_driver(base, pa, 0) == base);
    CHECK(rec4n_driver(base, pa, 1) == double_ls(base, pa));
    OneFactorization f = circle_one_factorization(4);
    CHECK(rec4n_driver(base, pa, 2) == quad_ls(base, pa, f, cyclic_latin(3)));
    CHECK(rec4n_driver(base, pa, 3) == pow2_ls(base, pa, f, cyclic_latin(3), 3));
    CHECK_THROWS(pow2_ls(base, pa, f, cyclic_latin(3), 2));
    CHECK_THROWS(rec4n_driver(base, pa, -1));
}

TEST_CASE("identical inputs produce byte-identical serialized outputs") {
    LargeSet base = trivial_ls();
    CodeArray pa = agl_pa(4);
    std::ostringstream s1, s2;
    write_large_set(s1, double_ls(base, pa));
    write_large_set(s2, double_ls(base, pa));
    CHECK(s1.str() == s2.str());
}

TEST_CASE("doubling relation violations are rejected") {
    LargeSet base = trivial_ls();
    CodeArray odd = half_agl_pa(7);  // gamma = 1, odd
    CHECK_THROWS(double_ls(base, odd));
    LargeSet wrong = base;
    wrong.mu = 2;
    wrong.systems.pop_back();
    CHECK_THROWS(double_ls(wrong, agl_pa(4)));
}
