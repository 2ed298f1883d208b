#ifndef LSM_COMMON_HPP
#define LSM_COMMON_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace lsm {

// Binomial coefficients, table-backed. Supported range: 0 <= n < 640, 0 <= k <= 8
// (largest value still fits in uint64_t). Out-of-range n with k >= 2 throws.
std::uint64_t binom(int n, int k);

inline int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

// Verifiers report the first witness of a defect instead of throwing.
struct Violation {
    std::string message;
};

// Empty optional means the artifact checked out.
using VerifyResult = std::optional<Violation>;

inline VerifyResult verify_ok() { return std::nullopt; }
VerifyResult verify_fail(std::string message);

// Runs fn(0..count-1) on a small thread pool; order of execution is unspecified,
// so fn must only touch state owned by its own index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace lsm

#endif
