#include "doctest.h"
#include "lsm/arrays.hpp"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"
#include "lsm/search.hpp"

using namespace lsm;

TEST_CASE("exhaustive SQS(8) enumeration") {
    const std::vector<Design>& all = enumerate_sqs8();
    // 8!/|Aut| = 40320/1344 labeled systems
    CHECK(40320 / 1344 == 30);
    REQUIRE(all.size() == 30);
    for (const Design& d : all) CHECK_FALSE(verify_steiner(d));
    // order-deterministic: a second call returns the identical cached list
    CHECK(&enumerate_sqs8() == &all);
    // no two systems equal
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
}

TEST_CASE("the thirty SQS(8) together form an LS(3,4,8;6)") {
    LargeSet ls;
    ls.t = 3;
    ls.k = 4;
    ls.n = 8;
    ls.mu = 6;
    ls.systems = enumerate_sqs8();
    CHECK(30 * 14 / 70 == 6);
    CHECK_FALSE(verify_ls(ls));
}

TEST_CASE("exact multicover reproduces the trivial large set") {
    std::vector<Design> candidates = {seed_sqs4()};
    auto out = exact_multicover(candidates, 3);
    REQUIRE(out.has_value());
    CHECK(out->systems.size() == 3);
    CHECK_FALSE(verify_ls(*out));
}

TEST_CASE("exact multicover takes all 30 systems at multiplicity six") {
    auto out = exact_multicover(enumerate_sqs8(), 6);
    REQUIRE(out.has_value());
    CHECK(out->systems.size() == 30);
    CHECK_FALSE(verify_ls(*out));
}

TEST_CASE("exact multicover finds an LS(3,4,8;2) among the 30 systems") {
    auto out = exact_multicover(enumerate_sqs8(), 2);
    REQUIRE(out.has_value());
    CHECK(out->systems.size() == 10);
    CHECK_FALSE(verify_ls(*out));
}

TEST_CASE("multicover failure is reported, not invented") {
    // multiplicity 1 would need 5 pairwise disjoint SQS(8); only 2 exist
    auto out = exact_multicover(enumerate_sqs8(), 1);
    CHECK_FALSE(out.has_value());
}

TEST_CASE("pa search finds small arrays quickly and reproducibly") {
    PaSearchOutcome a = search_pa(2, 2, 4, 11, 20.0);
    REQUIRE(a.array.has_value());
    CHECK_FALSE(verify_array(*a.array));
    PaSearchOutcome b = search_pa(2, 2, 4, 11, 20.0);
    REQUIRE(b.array.has_value());
    CHECK(*a.array == *b.array);  // same seed, same trajectory
    CHECK_THROWS(search_pa(2, 3, 4, 1, 1.0));
}

TEST_CASE("pa search cross-validates the algebraic PA_1(2,7,7)") {
    PaSearchOutcome out = search_pa(1, 2, 7, 3, 120.0);
    REQUIRE(out.array.has_value());
    CHECK(out.array->rows == half_agl_pa(7).rows);
    CHECK_FALSE(verify_array(*out.array));
}

TEST_CASE("the published pair array loads and verifies when present") {
#ifdef LSM_DATA_DIR
    std::string path = std::string(LSM_DATA_DIR) + "/pa_2_2_10_10.arr";
    auto pa = acquire_pa_2_2_10_10(path, 0.0);  // zero budget: load-only
    if (pa) {
        CHECK(pa->rows == 90);
        CHECK(pa->v == 10);
        CHECK_FALSE(verify_array(*pa));
    }
#endif
}
