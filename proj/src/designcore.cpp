#include "lsm/designcore.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <thread>

namespace lsm {

namespace {

void check_point(Pt p, int n) {
    if (p < 0 || p >= n) throw std::invalid_argument("point out of range");
}

}  // namespace

void Design::add_block(std::span<const Pt> pts) {
    if (static_cast<int>(pts.size()) != k) throw std::invalid_argument("block size != k");
    Pt tmp[16];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        check_point(pts[i], n);
        tmp[i] = pts[i];
    }
    std::sort(tmp, tmp + pts.size());
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (tmp[i] == tmp[i - 1]) throw std::invalid_argument("duplicate point in block");
    for (std::size_t i = 0; i < pts.size(); ++i) cells.push_back(static_cast<Cell>(tmp[i]));
}

void Design::add_quad(Pt a, Pt b, Pt c, Pt d) {
    // sorting network for 4 elements
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    if (a > c) std::swap(a, c);
    if (b > d) std::swap(b, d);
    if (b > c) std::swap(b, c);
    cells.push_back(static_cast<Cell>(a));
    cells.push_back(static_cast<Cell>(b));
    cells.push_back(static_cast<Cell>(c));
    cells.push_back(static_cast<Cell>(d));
}

std::uint64_t rank_subset(std::span<const Cell> pts) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) r += binom(pts[i], static_cast<int>(i) + 1);
    return r;
}

std::uint64_t rank_subset(std::span<const Pt> pts, int n) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        check_point(pts[i], n);
        if (i > 0 && pts[i] <= pts[i - 1]) throw std::invalid_argument("subset not strictly ascending");
        r += binom(pts[i], static_cast<int>(i) + 1);
    }
    return r;
}

std::vector<Pt> unrank_subset(std::uint64_t r, int k, int n) {
    if (r >= binom(n, k)) throw std::invalid_argument("rank out of range");
    std::vector<Pt> out(static_cast<std::size_t>(k));
    int hi = n - 1;
    for (int i = k; i >= 1; --i) {
        int a = hi;
        while (binom(a, i) > r) --a;
        out[static_cast<std::size_t>(i) - 1] = a;
        r -= binom(a, i);
        hi = a - 1;
    }
    return out;
}

Configuration classify_configuration(std::span<const Cell> block, int parts, int base_n) {
    Configuration counts(static_cast<std::size_t>(parts), 0);
    for (Cell p : block) {
        int lev = level_of(p, base_n);
        if (lev < 0 || lev >= parts) throw std::invalid_argument("point level outside partition");
        ++counts[static_cast<std::size_t>(lev)];
    }
    return counts;
}

int config_group(const Configuration& c) {
    if (c.size() != 4) throw std::invalid_argument("config_group expects 4 parts");
    int sum = 0, nonzero = 0, maxc = 0;
    for (int v : c) {
        if (v < 0) throw std::invalid_argument("negative configuration entry");
        sum += v;
        if (v > 0) ++nonzero;
        maxc = std::max(maxc, v);
    }
    if (sum != 4) throw std::invalid_argument("configuration does not sum to 4");
    switch (nonzero) {
        case 1: return 1;             // (4)
        case 2: return maxc == 3 ? 2  // (3,1)
                                 : 3; // (2,2)
        case 3: return 4;             // (2,1,1)
        default: return 5;            // (1,1,1,1)
    }
}

bool CoverageTable::constant(std::uint32_t mu) const { return first_deviation(mu) < 0; }

std::int64_t CoverageTable::first_deviation(std::uint32_t mu) const {
    for (std::size_t r = 0; r < counts.size(); ++r)
        if (counts[r] != mu) return static_cast<std::int64_t>(r);
    return -1;
}

CoverageTable coverage(std::span<const Design> systems) {
    if (systems.empty()) throw std::invalid_argument("coverage: no systems");
    const int t = systems[0].t, k = systems[0].k, n = systems[0].n;
    for (const Design& d : systems)
        if (d.t != t || d.k != k || d.n != n)
            throw std::invalid_argument("coverage: mixed design parameters");

    CoverageTable table;
    table.k = k;
    table.n = n;
    table.counts.assign(binom(n, k), 0);

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = hw == 0 ? 1 : hw;
    if (workers > systems.size()) workers = systems.size();
    if (workers <= 1) {
        for (const Design& d : systems)
            for (std::size_t b = 0; b < d.block_count(); ++b) ++table.counts[rank_subset(d.block(b))];
        return table;
    }

    // per-thread partial tables merged by addition
    std::vector<std::vector<std::uint32_t>> partial(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            auto& mine = partial[w];
            mine.assign(table.counts.size(), 0);
            for (std::size_t s = w; s < systems.size(); s += workers) {
                const Design& d = systems[s];
                for (std::size_t b = 0; b < d.block_count(); ++b) ++mine[rank_subset(d.block(b))];
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& mine : partial)
        for (std::size_t r = 0; r < mine.size(); ++r) table.counts[r] += mine[r];
    return table;
}

}  // namespace lsm
