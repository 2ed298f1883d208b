#ifndef LSM_LSOPS_HPP
#define LSM_LSOPS_HPP

#include <map>
#include <span>

#include "lsm/arrays.hpp"
#include "lsm/common.hpp"
#include "lsm/designcore.hpp"

namespace lsm {

// Every t-subset of [0,n) covered exactly once; reports the first t-subset
// (colex order) with count != 1, and checks block well-formedness first so
// tampered storage is reported rather than miscounted.
VerifyResult verify_steiner(const Design& d);

// Every member passes verify_steiner, systems.size() == mu * binom(n-t,k-t),
// and the coverage of every k-subset equals mu.
VerifyResult verify_ls(const LargeSet& ls);

// Concatenation; multiplicities add. Parameter mismatch throws.
LargeSet union_ls(const LargeSet& a, const LargeSet& b);

// One system per row of a PA_lambda(k,n,n) acting on the points of s;
// mu = lambda * binom(n,t) / binom(k,t). OD inputs are accepted via od_as_pa.
LargeSet perm_ls(const Design& s, const CodeArray& p);

// Rows of p permute only the B-part {a_size,...,n-1} of the point set (array
// value y stands for point a_size + y). The multiplicity is read off the
// resulting coverage and the outcome is verified; a non-constant coverage is
// reported as a Violation via std::runtime_error.
LargeSet part_expand(const Design& s, int a_size, const CodeArray& p);

// Exact block counts per configuration for an explicit partition of [0,n)
// into consecutive parts of the given sizes.
std::map<Configuration, std::uint64_t> config_census(const Design& d, std::span<const int> part_sizes);

}  // namespace lsm

#endif
