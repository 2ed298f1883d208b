#ifndef LSM_HDESIGN_HPP
#define LSM_HDESIGN_HPP

#include <span>
#include <vector>

#include "lsm/arrays.hpp"
#include "lsm/common.hpp"
#include "lsm/designcore.hpp"

namespace lsm {

// An H-design candidate: blocks of size k over n groups of g points with flat
// group-major labels (group of p = p / g). Each block meets every group in at
// most one point; every t-subset from t distinct groups lies in exactly one
// block when verified.
struct GroupedDesign {
    int n = 0, g = 0, k = 0, t = 0;
    std::vector<Cell> cells;

    int point_count() const { return n * g; }
    std::size_t block_count() const { return k == 0 ? 0 : cells.size() / static_cast<std::size_t>(k); }
    std::span<const Cell> block(std::size_t i) const {
        return {cells.data() + i * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
    }
    void add_block(std::span<const Pt> pts);
    void add_block(std::initializer_list<Pt> pts) { add_block(std::span<const Pt>(pts.begin(), pts.size())); }
    int group_of(Pt p) const { return p / g; }

    bool operator==(const GroupedDesign&) const = default;
};

struct LargeSetH {
    int n = 0, g = 0, k = 0, t = 0;
    std::vector<GroupedDesign> systems;

    bool operator==(const LargeSetH&) const = default;
};

VerifyResult verify_h(const GroupedDesign& d);

// Every member verifies, cardinality is binom(n-t,k-t) g^{k-t}, and the
// systems partition all transversal k-subsets.
VerifyResult verify_lh(const LargeSetH& ls);

// Product construction: a verified LS(t,k,n;g^{k-t}) plus an OA(t,k,g)
// yields an LH(n,g,k,t). The j-th system containing a k-subset (ascending
// system index) receives the blocks built from LOA part C_j.
LargeSetH lh_from_ls(const LargeSet& ls, const CodeArray& oa);

// Group-size expansion: LH(n,g,k,t) + OA(t,k,u) -> LH(n,g*u,k,t), slot
// encoding (y,b) -> y*u + b, output index (i-1)*u^{k-t} + j.
LargeSetH lh_expand(const LargeSetH& lh, const CodeArray& oa);

// Necessary conditions for an H(n,g,4,3):
// gn = 0 (mod 2), g(n-1)(n-2) = 0 (mod 3), n >= 4, (n,g) != (5,2).
bool h_feasible(int n, int g);

}  // namespace lsm

#endif
