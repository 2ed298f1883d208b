#ifndef LSM_RECURSION_HPP
#define LSM_RECURSION_HPP

#include <vector>

#include "lsm/arrays.hpp"
#include "lsm/common.hpp"
#include "lsm/designcore.hpp"

namespace lsm {

// Doubling via a permutation family: one SQS(2n) per row of a PA_gamma(2,n,n).
// Each source quadruple contributes 8 one-point-lifted copies and each pair
// {x1,x2} the cross block {(x1,0),(x2,0),(a(x1),1),(a(x2),1)}.
std::vector<Design> double_by_permutations(const Design& s, const CodeArray& pa);

// Doubling via one-factorization products: needs an LS(3,4,n;g(n-1)); band j
// (rows of the Latin square, g(n-3) systems each) pairs F_i with F'_{M(j,i)}.
std::vector<Design> double_by_factorizations(const LargeSet& ls, const OneFactorization& f,
                       const OneFactorization& f2, const CodeArray& latin);

// dls (on systems[0]) followed by db; LS(3,4,n;mu) -> LS(3,4,2n;mu) with
// mu = (n-1)*gamma/2.
LargeSet double_ls(const LargeSet& ls, const CodeArray& pa);

// One leftover family of (1,1,1,1)-quadruples per Type-B system of the
// quadrupling construction.
struct LeftoverLabel {
    enum class Family { D, E };
    Family family = Family::D;
    int index = 0;

    bool operator==(const LeftoverLabel&) const = default;
};

// The D/E label multiset minus the families consumed by Type A: for each
// j in [0,mu) remove one D-label and two E-labels whose set value is
// j mod n, smallest label first. Returns (n-3)*mu labels, D's then E's,
// assigned to the Type-B systems in order. Throws if a removal is infeasible.
std::vector<LeftoverLabel> leftover_plan(int n, int mu);

// LS(3,4,n;mu) -> LS(3,4,4n;mu) on Z_n x Z_4 (Types A1/A2/A3 then Type B).
LargeSet quad_ls(const LargeSet& ls, const CodeArray& pa,
                 const OneFactorization& f, const CodeArray& latin);

// Boolean Steiner quadruple system B_i on Z_2^m: quadruples with XOR-sum i
// plus those splitting into two pairs of XOR-sum i.
Design boolean_sqs(int i, int m);

// LS(3,4,n;mu) -> LS(3,4,2^m n;mu) on Z_n x Z_2^m, m >= 3.
LargeSet pow2_ls(const LargeSet& ls, const CodeArray& pa,
                 const OneFactorization& f, const CodeArray& latin, int m);

// m=0 identity, m=1 double_ls, m=2 quad_ls, m>=3 pow2_ls; the
// one-factorization and Latin square are generated internally.
LargeSet rec4n_driver(const LargeSet& ls, const CodeArray& pa, int m);

}  // namespace lsm

#endif
