#include <algorithm>
#include <random>

#include "doctest.h"
#include "lsm/designcore.hpp"
#include "lsm/recursion.hpp"

using namespace lsm;

TEST_CASE("colex rank of boundary subsets") {
    std::vector<Pt> lo = {0, 1, 2};
    std::vector<Pt> hi = {2, 3, 4};
    CHECK(rank_subset(std::span<const Pt>(lo), 5) == 0);
    CHECK(rank_subset(std::span<const Pt>(hi), 5) == binom(5, 3) - 1);
}

TEST_CASE("rank/unrank is a bijection for every k <= n <= 16") {
    for (int n = 1; n <= 16; ++n) {
        for (int k = 1; k <= n; ++k) {
            std::vector<bool> seen(binom(n, k), false);
            // walk all sorted k-subsets of [0,n)
            std::vector<Pt> sub(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) sub[static_cast<std::size_t>(i)] = i;
            for (;;) {
                std::uint64_t r = rank_subset(std::span<const Pt>(sub), n);
                REQUIRE(r < seen.size());
                REQUIRE_FALSE(seen[r]);
                seen[r] = true;
                REQUIRE(unrank_subset(r, k, n) == sub);
                int i = k - 1;
                while (i >= 0 && sub[static_cast<std::size_t>(i)] == n - (k - i)) --i;
                if (i < 0) break;
                ++sub[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < k; ++j)
                    sub[static_cast<std::size_t>(j)] = sub[static_cast<std::size_t>(j - 1)] + 1;
            }
            CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("rank rejects malformed input") {
    std::vector<Pt> unsorted = {2, 1, 3};
    CHECK_THROWS(rank_subset(std::span<const Pt>(unsorted), 5));
    CHECK_THROWS(unrank_subset(binom(5, 3), 3, 5));
}

TEST_CASE("configuration classification") {
    Design d(3, 4, 8);
    d.add_quad(0, 1, 2, 7);  // three points on level 0, one on level 1 of a 4+4 split
    CHECK(classify_configuration(d.block(0), 2, 4) == Configuration{3, 1});
    Design e(3, 4, 16);
    e.add_quad(0, 4, 8, 12);
    CHECK(classify_configuration(e.block(0), 4, 4) == Configuration{1, 1, 1, 1});
}

TEST_CASE("configuration groups partition the 35 shapes as 4+12+6+12+1") {
    CHECK(config_group({4, 0, 0, 0}) == 1);
    CHECK(config_group({0, 2, 0, 2}) == 3);
    CHECK(config_group({1, 1, 1, 1}) == 5);
    int per_group[6] = {};
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b)
            for (int c = 0; a + b + c <= 4; ++c) {
                int d = 4 - a - b - c;
                ++per_group[config_group({a, b, c, d})];
            }
    CHECK(per_group[1] == 4);
    CHECK(per_group[2] == 12);
    CHECK(per_group[3] == 6);
    CHECK(per_group[4] == 12);
    CHECK(per_group[5] == 1);
}

TEST_CASE("classification is invariant under permuting points within a block") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Pt> pts;
        while (pts.size() < 4) {
            Pt p = static_cast<Pt>(rng() % 16);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        std::vector<Cell> cells(pts.begin(), pts.end());
        Configuration base = classify_configuration(std::span<const Cell>(cells), 4, 4);
        std::shuffle(cells.begin(), cells.end(), rng);
        CHECK(classify_configuration(std::span<const Cell>(cells), 4, 4) == base);
    }
}

TEST_CASE("coverage of a single system flags exactly its blocks") {
    Design sqs8 = boolean_sqs(1, 3);
    REQUIRE(sqs8.block_count() == 14);
    std::vector<Design> one = {sqs8};
    CoverageTable tab = coverage(one);
    std::uint64_t ones = 0;
    for (std::uint32_t c : tab.counts) {
        CHECK(c <= 1);
        ones += c;
    }
    CHECK(ones == 14);
    for (std::size_t b = 0; b < sqs8.block_count(); ++b)
        CHECK(tab.counts[rank_subset(sqs8.block(b))] == 1);
}

TEST_CASE("coverage rejects mixed parameters") {
    std::vector<Design> bad = {Design(3, 4, 8), Design(3, 4, 10)};
    CHECK_THROWS(coverage(bad));
}

TEST_CASE("block ingestion sorts and validates") {
    Design d(3, 4, 10);
    d.add_block({7, 2, 9, 0});
    CHECK(std::vector<Cell>(d.block(0).begin(), d.block(0).end()) ==
          std::vector<Cell>{0, 2, 7, 9});
    CHECK_THROWS(d.add_block({1, 1, 2, 3}));
    CHECK_THROWS(d.add_block({0, 1, 2, 10}));
    CHECK_THROWS(d.add_block({0, 1, 2}));
}
