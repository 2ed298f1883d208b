#include <map>
#include <set>

#include "doctest.h"
#include "lsm/arrays.hpp"

using namespace lsm;

namespace {

// independent pair counter, kept apart from verify_array on purpose
std::map<std::pair<Cell, Cell>, int> pair_histogram(const CodeArray& a, int ci, int cj) {
    std::map<std::pair<Cell, Cell>, int> hist;
    for (int r = 0; r < a.rows; ++r) {
        Cell u = a.at(r, ci), v = a.at(r, cj);
        if (u > v) std::swap(u, v);
        ++hist[{u, v}];
    }
    return hist;
}

}  // namespace

TEST_CASE("zero-sum words over Z_2 with three coordinates") {
    CodeArray a = zero_sum_oa(3, 2);
    REQUIRE(a.rows == 4);
    std::vector<Cell> expect = {0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0};
    CHECK(a.cells == expect);
    CHECK_FALSE(verify_array(a));
}

TEST_CASE("zero-sum arrays verify at the advertised strength") {
    for (auto [t, g] : {std::pair{4, 2}, {3, 3}, {4, 3}, {3, 5}}) {
        CodeArray a = zero_sum_oa(t, g);
        CAPTURE(t);
        CAPTURE(g);
        CHECK(a.strength == t - 1);
        CHECK_FALSE(verify_array(a));
    }
    CHECK_THROWS(zero_sum_oa(1, 2));
}

TEST_CASE("LOA translates partition the full word space") {
    for (auto [t, g] : {std::pair{2, 3}, {3, 2}, {4, 2}}) {
        CodeArray oa = zero_sum_oa(t + 1, g);  // OA(t, t+1, g)
        std::vector<CodeArray> loa = loa_from_oa(oa);
        CHECK(loa.size() == static_cast<std::size_t>(g));
        CHECK(loa[0] == oa);
        std::set<std::vector<Cell>> words;
        std::uint64_t total = 0;
        for (const CodeArray& part : loa) {
            CHECK_FALSE(verify_array(part));
            for (int r = 0; r < part.rows; ++r) {
                auto row = part.row(r);
                words.insert(std::vector<Cell>(row.begin(), row.end()));
                ++total;
            }
        }
        CHECK(words.size() == total);  // pairwise disjoint
        std::uint64_t space = 1;
        for (int i = 0; i <= t; ++i) space *= static_cast<std::uint64_t>(g);
        CHECK(words.size() == space);
    }
}

TEST_CASE("affine maps give a PA_2(2,q,q) for prime powers") {
    for (int q : {4, 5, 7, 8, 9}) {
        CAPTURE(q);
        CodeArray a = agl_pa(q);
        CHECK(a.rows == q * (q - 1));
        CHECK_FALSE(verify_array(a));
        // independent oracle: each unordered pair twice in every column pair
        for (int ci = 0; ci < q; ++ci)
            for (int cj = ci + 1; cj < q; ++cj) {
                auto hist = pair_histogram(a, ci, cj);
                REQUIRE(hist.size() == static_cast<std::size_t>(q * (q - 1) / 2));
                for (const auto& [pair, count] : hist) REQUIRE(count == 2);
            }
    }
    CHECK_THROWS(agl_pa(6));
}

TEST_CASE("affine maps over GF(5) are sharply pair-transitive") {
    CodeArray a = agl_pa(5);
    REQUIRE(a.rows == 20);
    CodeArray od = a;
    od.kind = ArrayKind::OD;
    od.index = 1;
    CHECK_FALSE(verify_array(od));  // each ordered pair exactly once
}

TEST_CASE("quadratic-residue restriction gives a PA_1(2,q,q) for q = 3 mod 4") {
    for (int q : {3, 7, 11}) {
        CAPTURE(q);
        CodeArray a = half_agl_pa(q);
        CHECK(a.rows == q * (q - 1) / 2);
        CHECK_FALSE(verify_array(a));
        for (int ci = 0; ci < q; ++ci)
            for (int cj = ci + 1; cj < q; ++cj)
                for (const auto& [pair, count] : pair_histogram(a, ci, cj)) REQUIRE(count == 1);
    }
    CHECK_THROWS(half_agl_pa(5));
    CHECK_THROWS(half_agl_pa(9));
}

TEST_CASE("every column of a verified pair PA is balanced") {
    // each value must occur gamma*(n-1)/2 times per column
    for (const CodeArray& a : {agl_pa(4), half_agl_pa(7), agl_pa(9)}) {
        REQUIRE_FALSE(verify_array(a));
        const int expect = a.index * (a.v - 1) / 2;
        for (int c = 0; c < a.cols; ++c) {
            std::vector<int> count(static_cast<std::size_t>(a.v), 0);
            for (int r = 0; r < a.rows; ++r) ++count[static_cast<std::size_t>(a.at(r, c))];
            for (int v = 0; v < a.v; ++v) REQUIRE(count[static_cast<std::size_t>(v)] == expect);
        }
    }
}

TEST_CASE("pa_repeat multiplies the index") {
    CodeArray p7 = half_agl_pa(7);
    CodeArray doubled = pa_repeat(p7, 2);
    CHECK(doubled.rows == 42);
    CHECK(doubled.index == 2);
    CHECK_FALSE(verify_array(doubled));
    CHECK(pa_repeat(p7, 1) == p7);
    CodeArray six = pa_repeat(agl_pa(4), 3);
    CHECK(six.index == 6);
    CHECK(six.rows == 36);
    CHECK_FALSE(verify_array(six));
    CHECK_THROWS(pa_repeat(p7, 0));
}

TEST_CASE("rotation one-factorization") {
    OneFactorization f4 = circle_one_factorization(4);
    REQUIRE(f4.factors.size() == 3);
    CHECK(f4.factors[0] == std::vector<std::pair<Pt, Pt>>{{3, 0}, {1, 2}});
    CHECK(f4.factors[1] == std::vector<std::pair<Pt, Pt>>{{3, 1}, {2, 0}});
    CHECK(f4.factors[2] == std::vector<std::pair<Pt, Pt>>{{3, 2}, {0, 1}});
    CHECK_FALSE(verify_one_factorization(f4));

    OneFactorization f2 = circle_one_factorization(2);
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0] == std::vector<std::pair<Pt, Pt>>{{1, 0}});

    OneFactorization f10 = circle_one_factorization(10);
    CHECK(f10.factors.size() == 9);
    CHECK_FALSE(verify_one_factorization(f10));
    std::set<std::pair<Pt, Pt>> edges;
    for (const auto& factor : f10.factors)
        for (auto [x, y] : factor) edges.insert({std::min(x, y), std::max(x, y)});
    CHECK(edges.size() == 45);

    CHECK_THROWS(circle_one_factorization(5));
}

TEST_CASE("cyclic Latin squares") {
    CodeArray m3 = cyclic_latin(3);
    CHECK(m3.cells == std::vector<Cell>{0, 1, 2, 1, 2, 0, 2, 0, 1});
    CHECK_FALSE(verify_array(m3));
    CHECK(cyclic_latin(1).cells == std::vector<Cell>{0});
    CHECK_FALSE(verify_array(cyclic_latin(9)));
}

TEST_CASE("verify_array reports a witness for a flipped cell") {
    CodeArray a = zero_sum_oa(3, 2);
    a.cells[5] = static_cast<Cell>(1 - a.cells[5]);
    VerifyResult v = verify_array(a);
    REQUIRE(v.has_value());
    CHECK(v->message.find("columns") != std::string::npos);
    CHECK(v->message.find("tuple") != std::string::npos);
}

TEST_CASE("verify_array checks row counts before content") {
    CodeArray a = agl_pa(4);
    a.rows -= 1;
    a.cells.resize(static_cast<std::size_t>(a.rows) * a.cols);
    VerifyResult v = verify_array(a);
    REQUIRE(v.has_value());
    CHECK(v->message.find("row count") != std::string::npos);
}

TEST_CASE("od_as_pa multiplies the index by k!") {
    CodeArray od = agl_pa(5);
    od.kind = ArrayKind::OD;
    od.index = 1;
    CodeArray pa = od_as_pa(od);
    CHECK(pa.kind == ArrayKind::PA);
    CHECK(pa.index == 2);
    CHECK_FALSE(verify_array(pa));
}
