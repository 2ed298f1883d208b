#ifndef LSM_DESIGNCORE_HPP
#define LSM_DESIGNCORE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lsm/common.hpp"

namespace lsm {

using Pt = int;       // point label
using Cell = int16_t; // storage type for point labels

// A block design candidate: blocks of size k over [0,n), each block stored
// sorted ascending. Blocks are kept in a flat array (k cells per block) so a
// large set of a few million blocks stays compact.
struct Design {
    int t = 0, k = 0, n = 0;
    std::vector<Cell> cells;

    Design() = default;
    Design(int t_, int k_, int n_) : t(t_), k(k_), n(n_) {}

    std::size_t block_count() const { return k == 0 ? 0 : cells.size() / static_cast<std::size_t>(k); }
    std::span<const Cell> block(std::size_t i) const {
        return {cells.data() + i * static_cast<std::size_t>(k), static_cast<std::size_t>(k)};
    }
    void reserve_blocks(std::size_t m) { cells.reserve(cells.size() + m * static_cast<std::size_t>(k)); }

    // Sorts the incoming points, validates range and distinctness.
    void add_block(std::span<const Pt> pts);
    void add_block(std::initializer_list<Pt> pts) { add_block(std::span<const Pt>(pts.begin(), pts.size())); }
    // Fast path for quadruples.
    void add_quad(Pt a, Pt b, Pt c, Pt d);

    bool operator==(const Design&) const = default;
};

// An ordered list of designs sharing (t,k,n) with a claimed multiplicity mu:
// every k-subset of [0,n) should lie in exactly mu member systems.
struct LargeSet {
    int t = 0, k = 0, n = 0, mu = 0;
    std::vector<Design> systems;

    bool operator==(const LargeSet&) const = default;
};

// Colexicographic rank of a sorted k-subset; independent of the ambient n.
// rank({a_1<...<a_k}) = sum_i binom(a_i, i).
std::uint64_t rank_subset(std::span<const Cell> pts);
std::uint64_t rank_subset(std::span<const Pt> pts, int n);
std::vector<Pt> unrank_subset(std::uint64_t r, int k, int n);

// Product-point helpers: flat label = level * base_n + base.
inline int level_of(Pt p, int base_n) { return p / base_n; }
inline int base_of(Pt p, int base_n) { return p % base_n; }
inline Pt product_point(int base, int level, int base_n) { return level * base_n + base; }

// Per-part intersection sizes of a block with the level partition of a
// product point set ([0,base_n) = part 0, [base_n,2*base_n) = part 1, ...).
using Configuration = std::vector<int>;
Configuration classify_configuration(std::span<const Cell> block, int parts, int base_n);

// Group number of a 4-part configuration of a quadruple:
// 1 = (4), 2 = (3,1), 3 = (2,2), 4 = (2,1,1), 5 = (1,1,1,1) shape.
int config_group(const Configuration& c);

// Dense count of how many systems contain each k-subset, indexed by colex rank.
struct CoverageTable {
    int k = 0, n = 0;
    std::vector<std::uint32_t> counts;

    bool constant(std::uint32_t mu) const;
    // smallest rank with count != mu, or -1 if none
    std::int64_t first_deviation(std::uint32_t mu) const;
};

// All systems must share (t,k,n); throws std::invalid_argument otherwise.
CoverageTable coverage(std::span<const Design> systems);

}  // namespace lsm

#endif
