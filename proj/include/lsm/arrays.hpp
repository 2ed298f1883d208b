#ifndef LSM_ARRAYS_HPP
#define LSM_ARRAYS_HPP

#include <span>
#include <utility>
#include <vector>

#include "lsm/common.hpp"
#include "lsm/designcore.hpp"

namespace lsm {

enum class ArrayKind { OA, PA, OD, Latin };

// A rows x cols matrix over Z_v tagged with its combinatorial role.
//   OA:    strength = t, index unused (1); rows = v^t.
//   PA:    strength = k, index = lambda; rows = lambda * binom(v,k); rows have distinct entries.
//   OD:    strength = k, index = lambda; rows = lambda * binom(v,k) * k!.
//   Latin: rows = cols = v, each row and column a permutation.
struct CodeArray {
    ArrayKind kind = ArrayKind::OA;
    int index = 1;
    int strength = 0;
    int v = 0, rows = 0, cols = 0;
    std::vector<Cell> cells;

    std::span<const Cell> row(int r) const {
        return {cells.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
    Cell at(int r, int c) const { return cells[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const CodeArray&) const = default;
};

// n-1 perfect matchings partitioning the edges of K_n.
struct OneFactorization {
    int n = 0;
    std::vector<std::vector<std::pair<Pt, Pt>>> factors;

    bool operator==(const OneFactorization&) const = default;
};

// All t-tuples over Z_g with zero digit sum mod g, in lexicographic order;
// an OA(t-1, t, g).
CodeArray zero_sum_oa(int t, int g);

// Partition of (Z_v)^k into v^{k-t} translates of a verified OA(t,k,v); the
// translate offsets run lexicographically over words whose last t coordinates
// are zero, so the first member is the input array itself.
std::vector<CodeArray> loa_from_oa(const CodeArray& oa);

// All affine maps x -> a*x + b over GF(q), a != 0, rows ordered by (a,b):
// a sharply 2-transitive set, i.e. an OD_1(2,q,q), tagged PA_2(2,q,q).
CodeArray agl_pa(int q);

// Affine maps with a restricted to nonzero squares; a PA_1(2,q,q) for prime
// powers q = 3 (mod 4).
CodeArray half_agl_pa(int q);

// Row list repeated m times; index multiplied by m.
CodeArray pa_repeat(const CodeArray& p, int m);

// Rotation construction: F_r = {{n-1, r}} u {{(r+i) mod (n-1), (r-i) mod (n-1)}}.
OneFactorization circle_one_factorization(int n);

// M(i,j) = (i+j) mod v.
CodeArray cyclic_latin(int v);

// Exhaustive check of the kind-specific invariant; reports the first
// offending column set and tuple/subset with its observed count.
VerifyResult verify_array(const CodeArray& a);

VerifyResult verify_one_factorization(const OneFactorization& f);

// Reinterpret an ordered design as a perpendicular array: an OD_lambda(k,n,n)
// covers each k-subset lambda * k! times.
CodeArray od_as_pa(const CodeArray& od);

}  // namespace lsm

#endif
