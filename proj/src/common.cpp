#include "lsm/common.hpp"

#include <array>
#include <thread>
#include <vector>

namespace lsm {

namespace {

constexpr int kMaxN = 640;
constexpr int kMaxK = 16;
constexpr std::uint64_t kSaturated = ~std::uint64_t{0};

struct BinomTable {
    std::vector<std::uint64_t> c;
    BinomTable() : c(static_cast<std::size_t>(kMaxN) * (kMaxK + 1), 0) {
        for (int n = 0; n < kMaxN; ++n) {
            at(n, 0) = 1;
            for (int k = 1; k <= kMaxK && k <= n; ++k) {
                std::uint64_t a = at(n - 1, k), b = at(n - 1, k - 1);
                at(n, k) = (a == kSaturated || b == kSaturated || a > kSaturated - b)
                               ? kSaturated
                               : a + b;
            }
        }
    }
    std::uint64_t& at(int n, int k) { return c[static_cast<std::size_t>(n) * (kMaxK + 1) + k]; }
    std::uint64_t get(int n, int k) const { return c[static_cast<std::size_t>(n) * (kMaxK + 1) + k]; }
};

const BinomTable& table() {
    static const BinomTable t;
    return t;
}

}  // namespace

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k == 0 || k == n) return 1;
    if (k == 1) return static_cast<std::uint64_t>(n);
    if (n >= kMaxN || k > kMaxK)
        throw std::invalid_argument("binom: out of supported range (n < 640, k <= 16)");
    std::uint64_t value = table().get(n, k);
    if (value == kSaturated) throw std::overflow_error("binom: value exceeds 64 bits");
    return value;
}

VerifyResult verify_fail(std::string message) { return Violation{std::move(message)}; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = hw == 0 ? 1 : hw;
    if (workers > count) workers = count;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace lsm
