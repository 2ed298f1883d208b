#include "lsm/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <random>

#include "lsm/io.hpp"
#include "lsm/lsops.hpp"

namespace lsm {

namespace {

// all 70 quadruples of Z_8 and the triples each covers
struct Sqs8Space {
    std::vector<std::array<int, 4>> quads;        // lexicographic
    std::vector<std::array<int, 4>> quad_triples; // triple ranks per quad
    std::vector<std::vector<int>> triple_quads;   // 56 triples -> covering quads

    Sqs8Space() {
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b)
                for (int c = b + 1; c < 8; ++c)
                    for (int d = c + 1; d < 8; ++d) quads.push_back({a, b, c, d});
        triple_quads.resize(56);
        quad_triples.resize(quads.size());
        for (std::size_t q = 0; q < quads.size(); ++q) {
            const auto& blk = quads[q];
            int slot = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    for (int l = j + 1; l < 4; ++l) {
                        int r = static_cast<int>(binom(blk[static_cast<std::size_t>(i)], 1) +
                                                 binom(blk[static_cast<std::size_t>(j)], 2) +
                                                 binom(blk[static_cast<std::size_t>(l)], 3));
                        quad_triples[q][static_cast<std::size_t>(slot++)] = r;
                        triple_quads[static_cast<std::size_t>(r)].push_back(static_cast<int>(q));
                    }
        }
    }
};

void sqs8_backtrack(const Sqs8Space& space, std::vector<bool>& covered, std::vector<int>& chosen,
                    std::vector<Design>& out) {
    int first_uncovered = -1;
    for (int r = 0; r < 56; ++r)
        if (!covered[static_cast<std::size_t>(r)]) {
            first_uncovered = r;
            break;
        }
    if (first_uncovered < 0) {
        Design d(3, 4, 8);
        for (int q : chosen) {
            const auto& blk = space.quads[static_cast<std::size_t>(q)];
            d.add_quad(blk[0], blk[1], blk[2], blk[3]);
        }
        out.push_back(std::move(d));
        return;
    }
    for (int q : space.triple_quads[static_cast<std::size_t>(first_uncovered)]) {
        const auto& trs = space.quad_triples[static_cast<std::size_t>(q)];
        bool clash = false;
        for (int tr : trs)
            if (covered[static_cast<std::size_t>(tr)]) {
                clash = true;
                break;
            }
        if (clash) continue;
        for (int tr : trs) covered[static_cast<std::size_t>(tr)] = true;
        chosen.push_back(q);
        sqs8_backtrack(space, covered, chosen, out);
        chosen.pop_back();
        for (int tr : trs) covered[static_cast<std::size_t>(tr)] = false;
    }
}

}  // namespace

const std::vector<Design>& enumerate_sqs8() {
    static const std::vector<Design> cached = [] {
        Sqs8Space space;
        std::vector<bool> covered(56, false);
        std::vector<int> chosen;
        std::vector<Design> out;
        sqs8_backtrack(space, covered, chosen, out);
        return out;
    }();
    return cached;
}

namespace {

struct MulticoverState {
    std::span<const Design> candidates;
    std::vector<std::vector<std::uint64_t>> cand_ranks;  // per candidate, sorted block ranks
    std::vector<std::vector<int>> rank_cands;            // per rank, candidates covering it
    std::vector<int> need;                               // remaining multiplicity per rank
    std::vector<int> chosen;
    std::uint64_t nodes = 0, budget = 0;

    bool dfs(int min_cand) {
        if (++nodes > budget) return false;
        std::size_t first = 0;
        while (first < need.size() && need[first] == 0) ++first;
        if (first == need.size()) return true;
        for (int c : rank_cands[first]) {
            if (c < min_cand) continue;
            const auto& ranks = cand_ranks[static_cast<std::size_t>(c)];
            bool fits = true;
            for (std::uint64_t r : ranks)
                if (need[static_cast<std::size_t>(r)] == 0) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            for (std::uint64_t r : ranks) --need[static_cast<std::size_t>(r)];
            chosen.push_back(c);
            if (dfs(c)) return true;
            if (nodes > budget) return false;  // budget exhausted, unwind
            chosen.pop_back();
            for (std::uint64_t r : ranks) ++need[static_cast<std::size_t>(r)];
        }
        return false;
    }
};

}  // namespace

std::optional<LargeSet> exact_multicover(std::span<const Design> candidates, int mu,
                                         std::uint64_t node_budget) {
    if (candidates.empty() || mu < 1) return std::nullopt;
    const int t = candidates[0].t, k = candidates[0].k, n = candidates[0].n;
    for (const Design& d : candidates)
        if (d.t != t || d.k != k || d.n != n)
            throw std::invalid_argument("exact_multicover: mixed candidate parameters");

    MulticoverState st;
    st.candidates = candidates;
    st.budget = node_budget;
    st.need.assign(binom(n, k), mu);
    st.rank_cands.resize(st.need.size());
    st.cand_ranks.resize(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Design& d = candidates[c];
        auto& ranks = st.cand_ranks[c];
        for (std::size_t b = 0; b < d.block_count(); ++b) ranks.push_back(rank_subset(d.block(b)));
        std::sort(ranks.begin(), ranks.end());
        for (std::uint64_t r : ranks) st.rank_cands[static_cast<std::size_t>(r)].push_back(static_cast<int>(c));
    }

    if (!st.dfs(0)) return std::nullopt;

    LargeSet out;
    out.t = t;
    out.k = k;
    out.n = n;
    out.mu = mu;
    for (int c : st.chosen) out.systems.push_back(candidates[static_cast<std::size_t>(c)]);
    return out;
}

namespace {

// Bookkeeping for the PA(2,n,n) search: counts per (column pair,
// value pair) bucket, a dynamic weight per bucket (breakout method), the
// rows realizing each bucket so repair moves can target conflicts, and both
// the weighted objective (guides acceptance) and the raw one (defines
// success).
struct PaState {
    int n = 0, lambda = 0, rows = 0;
    std::vector<int> cells;                     // rows x n
    std::vector<int> counts;                    // bucket -> count
    std::vector<int> weights;                   // bucket -> weight >= 1
    std::vector<std::vector<int>> bucket_rows;  // bucket -> rows realizing it
    std::vector<int> pos_in_bucket;             // (row, colpair slot) -> index
    std::vector<int> conflicts;                 // over-covered buckets (lazy)
    std::vector<bool> in_conflicts;
    long energy = 0;      // sum_b w_b (c_b - lambda)^2
    long raw_energy = 0;  // sum_b (c_b - lambda)^2

    int cp_slot(int i, int j) const { return i * n + j; }  // i < j, sparse in n*n
    int bucket_of(int i, int j, int u, int v) const {
        if (u > v) std::swap(u, v);
        return cp_slot(i, j) * n * n + u * n + v;
    }

    void rebuild() {
        counts.assign(static_cast<std::size_t>(n) * n * n * n, 0);
        weights.assign(counts.size(), 1);
        bucket_rows.assign(counts.size(), {});
        pos_in_bucket.assign(static_cast<std::size_t>(rows) * n * n, -1);
        in_conflicts.assign(counts.size(), false);
        conflicts.clear();
        energy = raw_energy = 0;
        for (int r = 0; r < rows; ++r)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    int b = bucket_of(i, j, cells[static_cast<std::size_t>(r) * n + i],
                                      cells[static_cast<std::size_t>(r) * n + j]);
                    ++counts[static_cast<std::size_t>(b)];
                    pos_in_bucket[static_cast<std::size_t>(r) * n * n + cp_slot(i, j)] =
                        static_cast<int>(bucket_rows[static_cast<std::size_t>(b)].size());
                    bucket_rows[static_cast<std::size_t>(b)].push_back(r);
                }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        int b = bucket_of(i, j, u, v);
                        long d = counts[static_cast<std::size_t>(b)] - lambda;
                        raw_energy += d * d;
                        energy += d * d;
                        if (d > 0) flag_conflict(b);
                    }
    }

    void flag_conflict(int b) {
        if (!in_conflicts[static_cast<std::size_t>(b)]) {
            in_conflicts[static_cast<std::size_t>(b)] = true;
            conflicts.push_back(b);
        }
    }

    void move_row_bucket(int r, int i, int j, int from, int to) {
        auto& src = bucket_rows[static_cast<std::size_t>(from)];
        int* pos = &pos_in_bucket[static_cast<std::size_t>(r) * n * n];
        int slot = cp_slot(i, j);
        int at = pos[slot];
        int moved = src.back();
        src[static_cast<std::size_t>(at)] = moved;
        src.pop_back();
        pos_in_bucket[static_cast<std::size_t>(moved) * n * n + slot] = at;
        auto& dst = bucket_rows[static_cast<std::size_t>(to)];
        pos[slot] = static_cast<int>(dst.size());
        dst.push_back(r);
    }

    // weighted energy change of swapping positions a and b in row r; the
    // 4(n-2) touched buckets are pairwise distinct, so the sum is exact
    long swap_delta(int r, int a, int b) const {
        const int* row = &cells[static_cast<std::size_t>(r) * n];
        long delta = 0;
        for (int c = 0; c < n; ++c) {
            if (c == a || c == b) continue;
            int ca0 = std::min(a, c), ca1 = std::max(a, c);
            int cb0 = std::min(b, c), cb1 = std::max(b, c);
            int a_old = bucket_of(ca0, ca1, row[a], row[c]);
            int a_new = bucket_of(ca0, ca1, row[b], row[c]);
            int b_old = bucket_of(cb0, cb1, row[b], row[c]);
            int b_new = bucket_of(cb0, cb1, row[a], row[c]);
            delta += weights[static_cast<std::size_t>(a_old)] *
                     (-2 * (counts[static_cast<std::size_t>(a_old)] - lambda) + 1);
            delta += weights[static_cast<std::size_t>(a_new)] *
                     (2 * (counts[static_cast<std::size_t>(a_new)] - lambda) + 1);
            delta += weights[static_cast<std::size_t>(b_old)] *
                     (-2 * (counts[static_cast<std::size_t>(b_old)] - lambda) + 1);
            delta += weights[static_cast<std::size_t>(b_new)] *
                     (2 * (counts[static_cast<std::size_t>(b_new)] - lambda) + 1);
        }
        return delta;
    }

    // swaps positions a and b in row r, updating all bookkeeping; involutive
    void apply_swap(int r, int a, int b) {
        int* row = &cells[static_cast<std::size_t>(r) * n];
        for (int c = 0; c < n; ++c) {
            if (c == a || c == b) continue;
            int ca0 = std::min(a, c), ca1 = std::max(a, c);
            int cb0 = std::min(b, c), cb1 = std::max(b, c);
            int bs[4] = {bucket_of(ca0, ca1, row[a], row[c]), bucket_of(ca0, ca1, row[b], row[c]),
                         bucket_of(cb0, cb1, row[b], row[c]), bucket_of(cb0, cb1, row[a], row[c])};
            for (int t = 0; t < 4; ++t) {
                const bool removing = (t & 1) == 0;
                int b2 = bs[t];
                int pre = counts[static_cast<std::size_t>(b2)];
                long term = removing ? (-2 * (pre - lambda) + 1) : (2 * (pre - lambda) + 1);
                raw_energy += term;
                energy += weights[static_cast<std::size_t>(b2)] * term;
                counts[static_cast<std::size_t>(b2)] += removing ? -1 : 1;
                if (!removing && counts[static_cast<std::size_t>(b2)] > lambda) flag_conflict(b2);
            }
            move_row_bucket(r, ca0, ca1, bs[0], bs[1]);
            move_row_bucket(r, cb0, cb1, bs[2], bs[3]);
        }
        std::swap(row[a], row[b]);
    }

    // rewrite row r with a fresh permutation, updating all bookkeeping
    void replace_row(int r, std::span<const int> fresh) {
        int* row = &cells[static_cast<std::size_t>(r) * n];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int b_old = bucket_of(i, j, row[i], row[j]);
                int b_new = bucket_of(i, j, fresh[static_cast<std::size_t>(i)], fresh[static_cast<std::size_t>(j)]);
                int pre = counts[static_cast<std::size_t>(b_old)];
                long term = -2 * (pre - lambda) + 1;
                raw_energy += term;
                energy += weights[static_cast<std::size_t>(b_old)] * term;
                --counts[static_cast<std::size_t>(b_old)];
                pre = counts[static_cast<std::size_t>(b_new)];
                term = 2 * (pre - lambda) + 1;
                raw_energy += term;
                energy += weights[static_cast<std::size_t>(b_new)] * term;
                ++counts[static_cast<std::size_t>(b_new)];
                if (counts[static_cast<std::size_t>(b_new)] > lambda) flag_conflict(b_new);
                move_row_bucket(r, i, j, b_old, b_new);
            }
        for (int i = 0; i < n; ++i) row[i] = fresh[static_cast<std::size_t>(i)];
    }

    // breakout step: raise the weight of every violated bucket
    void bump_weights() {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        int b = bucket_of(i, j, u, v);
                        long d = counts[static_cast<std::size_t>(b)] - lambda;
                        if (d != 0) {
                            ++weights[static_cast<std::size_t>(b)];
                            energy += d * d;
                        }
                    }
    }

    // keep weights bounded; recomputes the weighted energy
    void decay_weights() {
        energy = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        int b = bucket_of(i, j, u, v);
                        int& w = weights[static_cast<std::size_t>(b)];
                        w = (w + 1) / 2;
                        long d = counts[static_cast<std::size_t>(b)] - lambda;
                        energy += w * d * d;
                    }
    }
};

}  // namespace

PaSearchOutcome search_pa(int lambda, int k, int n, std::uint64_t seed, double budget_seconds) {
    PaSearchOutcome outcome;
    if (k != 2) throw std::invalid_argument("search_pa supports strength k = 2 only");
    if (lambda < 1 || n < 2) throw std::invalid_argument("search_pa: bad parameters");

    PaState st;
    st.n = n;
    st.lambda = lambda;
    st.rows = static_cast<int>(static_cast<std::uint64_t>(lambda) * binom(n, 2));
    std::mt19937_64 rng(seed);

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    long best = -1;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (elapsed() < budget_seconds) {
        // fresh random start
        st.cells.resize(static_cast<std::size_t>(st.rows) * n);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        for (int r = 0; r < st.rows; ++r) {
            std::shuffle(perm.begin(), perm.end(), rng);
            std::copy(perm.begin(), perm.end(), st.cells.begin() + static_cast<std::size_t>(r) * n);
        }
        st.rebuild();

        // min-conflicts on the weighted objective with breakout: when the raw
        // violation count stops improving, bump the weights of the violated
        // buckets to reshape the landscape instead of restarting.
        const double directed = 0.8;
        const double noise_accept = 0.02;
        const std::uint64_t bump_after = 8000;
        const int max_bumps = 200000;
        std::uint64_t since_raw_improve = 0;
        long raw_best = st.raw_energy;
        int bumps = 0;
        while (st.raw_energy > 0 && bumps < max_bumps) {
            if ((outcome.moves & 0xfff) == 0 && elapsed() >= budget_seconds) break;
            ++outcome.moves;
            int r, move_a, move_b;
            if (!st.conflicts.empty() && unit(rng) < directed) {
                // pop a random conflict bucket, skipping stale entries
                std::size_t pick = rng() % st.conflicts.size();
                int bucket = st.conflicts[pick];
                st.conflicts[pick] = st.conflicts.back();
                st.conflicts.pop_back();
                st.in_conflicts[static_cast<std::size_t>(bucket)] = false;
                if (st.counts[static_cast<std::size_t>(bucket)] <= st.lambda) continue;
                st.flag_conflict(bucket);
                int slot = bucket / (n * n);
                int ci = slot / n, cj = slot % n;
                const auto& members = st.bucket_rows[static_cast<std::size_t>(bucket)];
                r = members[rng() % members.size()];
                move_a = (rng() & 1) ? ci : cj;
                do {
                    move_b = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                } while (move_b == move_a);
            } else {
                r = static_cast<int>(rng() % static_cast<std::uint64_t>(st.rows));
                move_a = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                move_b = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
                if (move_a == move_b) continue;
            }
            long delta = st.swap_delta(r, move_a, move_b);
            if (delta <= 0 || unit(rng) < noise_accept) st.apply_swap(r, move_a, move_b);
            if (st.raw_energy < raw_best) {
                raw_best = st.raw_energy;
                since_raw_improve = 0;
            } else if (++since_raw_improve >= bump_after) {
                st.bump_weights();
                since_raw_improve = 0;
                ++bumps;
                if (bumps % 256 == 0) st.decay_weights();
                if (bumps % 64 == 0) {
                    // kick: replace one row with a fresh random permutation
                    std::shuffle(perm.begin(), perm.end(), rng);
                    st.replace_row(static_cast<int>(rng() % static_cast<std::uint64_t>(st.rows)), perm);
                }
            }
        }
        if (best < 0 || raw_best < best) best = raw_best;
        if (st.raw_energy == 0) break;
    }

outcome.best_energy = best;
    if (best == 0) {
        CodeArray a;
        a.kind = ArrayKind::PA;
        a.index = lambda;
        a.strength = 2;
        a.v = n;
        a.rows = st.rows;
        a.cols = n;
        a.cells.assign(st.cells.begin(), st.cells.end());
        if (auto v = verify_array(a))
            throw std::logic_error("search_pa: zero-energy array failed verification: " + v->message);
        outcome.array = std::move(a);
    }
    return outcome;
}

std::optional<CodeArray> acquire_pa_2_2_10_10(const std::string& data_path, double budget_seconds) {
    {
        std::ifstream is(data_path);
        if (is) {
            CodeArray a = read_array(is);
            if (a.kind == ArrayKind::PA && a.index == 2 && a.strength == 2 && a.v == 10 &&
                a.cols == 10 && !verify_array(a))
                return a;
            return std::nullopt;  // present but invalid: never silently substitute
        }
    }
    PaSearchOutcome outcome = search_pa(2, 2, 10, 1, budget_seconds);
    if (outcome.array) return outcome.array;
    return std::nullopt;
}

}  // namespace lsm
