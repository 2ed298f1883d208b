#ifndef LSM_SEARCH_HPP
#define LSM_SEARCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "lsm/arrays.hpp"
#include "lsm/designcore.hpp"

namespace lsm {

// All distinct SQS(8) on labeled Z_8, by lexicographic backtracking over the
// 70 quadruples. There are exactly 30; the result is cached.
const std::vector<Design>& enumerate_sqs8();

// Depth-first multiset selection from candidates (repetition allowed, indices
// nondecreasing) whose coverage is constantly mu. Branches on the smallest
// under-covered rank. Empty optional after exhausting the space or the node
// budget.
std::optional<LargeSet> exact_multicover(std::span<const Design> candidates, int mu,
                                         std::uint64_t node_budget = 20'000'000);

struct PaSearchOutcome {
    std::optional<CodeArray> array;  // set on success, verified
    long best_energy = -1;           // residual energy on failure
    std::uint64_t moves = 0;
};

// Annealed min-conflicts over rows-as-permutations for a PA_lambda(2,n,n):
// energy = sum over column pairs and value pairs of (count - lambda)^2.
// Deterministic for a given seed; budget_seconds caps wall-clock time.
PaSearchOutcome search_pa(int lambda, int k, int n, std::uint64_t seed, double budget_seconds);

// Load data_path if it exists (verifying it), otherwise search with the
// default seed and budget. Empty optional only if both fail.
std::optional<CodeArray> acquire_pa_2_2_10_10(const std::string& data_path,
                                              double budget_seconds = 120.0);

}  // namespace lsm

#endif
