#ifndef LSM_SEEDS_HPP
#define LSM_SEEDS_HPP

#include <span>
#include <vector>

#include "lsm/designcore.hpp"
#include "lsm/hdesign.hpp"

namespace lsm {

// ---- built-in seed catalog ------------------------------------------------
//
// Explicit designs and permutation tables the rest of the pipelines start
// from. H-design seeds are published with irregular group labels; they are
// expanded under their automorphisms in those labels and relabeled to the
// canonical group-major encoding for storage.

Design seed_sqs4();                      // the unique SQS(4)
Design seed_s_4_5_11();                  // S(4,5,11), 66 blocks
std::vector<std::vector<Pt>> perms_s11(); // 13 permutations of Z_11
std::vector<std::vector<Pt>> perms_s10(); // 20 permutations of Z_10
std::vector<std::vector<Pt>> perms_h7();  // 8 permutations of Z_14 (identity first)

GroupedDesign seed_h_5_4();              // H(5,4,4,3), 160 blocks
GroupedDesign seed_h_6_3();              // H(6,3,4,3), 135 blocks
GroupedDesign seed_h_7_2();              // H(7,2,4,3), 70 blocks

// H-design seed data in its published labeling, kept so the automorphism
// orbits can act before canonicalization.
struct RawGroupedBlocks {
    int point_count = 0;
    std::vector<std::vector<Pt>> groups;
    std::vector<std::vector<Pt>> blocks;
};

RawGroupedBlocks raw_h_5_4();
RawGroupedBlocks raw_h_6_3();
RawGroupedBlocks raw_h_7_2();

// Translates p -> (p + s) mod modulus for p < modulus, fixing all other
// points; one output per s in [0, modulus). Translate 0 is the input.
std::vector<RawGroupedBlocks> orbit_cyclic(const RawGroupedBlocks& d, int modulus);

// Relabels to flat group-major points (group index * g + slot index).
GroupedDesign to_canonical(const RawGroupedBlocks& d, int t);

// ---- permutation expansion -------------------------------------------------

// Image of d under p -> perm[p], blocks re-sorted.
Design apply_perm(const Design& d, std::span<const Pt> perm);
std::vector<Design> apply_perms(const Design& d, std::span<const std::vector<Pt>> perms);

// ---- derived / extension operations ---------------------------------------

// Blocks containing p, with p removed and the remaining points relabeled to
// [0, n-1) preserving order: S(t,k,n) -> S(t-1,k-1,n-1).
Design derived_design(const Design& s, Pt p);

// S(4,5,11) -> S(5,6,12): every block gains the new point 11, and every
// block complement within Z_11 joins as well.
Design extend_complement(const Design& s);

// ---- assembled large sets ---------------------------------------------------

LargeSet ls_4_5_11();        // seed + identity + 13 permutations, mu = 2
LargeSet ls_3_4_10_mu2();    // derived at point 10 from ls_4_5_11()
LargeSet ls_3_4_10_mu3();    // derived seed + identity + 20 permutations, mu = 3
LargeSet ls_5_6_12();        // extend_complement over ls_4_5_11()

// a copies of the mu=2 set and b copies of the mu=3 set with 2a+3b = mu,
// smallest feasible b in {0,1,2}. Requires mu >= 2.
LargeSet ls_3_4_10(int mu);

LargeSetH lh_5_4();          // 8 systems (orbit of h_5_4 under Z_8)
LargeSetH lh_6_3();          // 9 systems (orbit of h_6_3 under Z_9)
LargeSetH lh_7_2();          // 8 systems (the 8 permutations on h_7_2)

}  // namespace lsm

#endif
