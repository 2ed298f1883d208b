#include "lsm/recursion.hpp"

#include <algorithm>
#include <sstream>

#include "lsm/lsops.hpp"

namespace lsm {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// pa must be a verified PA_gamma(2,n,n); its rows are then permutations
void check_pair_pa(const CodeArray& pa, int n) {
    require(pa.kind == ArrayKind::PA, "expected a PA");
    require(pa.strength == 2 && pa.v == n && pa.cols == n, "expected a PA_gamma(2,n,n)");
    if (auto v = verify_array(pa))
        throw std::invalid_argument("permutation array invalid: " + v->message);
}

void check_doubling_relation(const LargeSet& ls, const CodeArray& pa) {
    require(ls.t == 3 && ls.k == 4, "expected an LS(3,4,n;mu)");
    require(pa.index % 2 == 0, "gamma must be even");
    require(static_cast<long long>(ls.mu) * 2 == static_cast<long long>(ls.n - 1) * pa.index,
            "relation mu = (n-1)*gamma/2 violated");
    require(ls.systems.size() ==
                static_cast<std::size_t>(ls.mu) * static_cast<std::size_t>(ls.n - 3),
            "large set must hold mu*(n-3) systems");
}

// The Group-4/Group-5 companion blocks of one doubled system, parametrized by
// the four level slots: pairs on the o-couple get their dependent fourth
// point on (h0,top) with the +jp offset, pairs on (h0,top) get it on the
// o-couple without the offset, and the slot-transversal family ties the two
// couples together. ip runs 1..n, jp runs 0..mu-1; arithmetic mod n.
void emit_companions(Design& out, int n, const OneFactorization& f, int ip, int jp,
                     int o0, int o1, int h0, int top) {
    const int base_shift = ip + n - 1;
    for (int r = 0; r < n - 1; ++r) {
        for (auto [a, b] : f.factors[static_cast<std::size_t>(r)]) {
            for (int c = 0; c < n; ++c) {
                int with_j = mod(c + ip + r + jp, n);
                int without_j = mod(c + ip + r, n);
                out.add_quad(o0 * n + a, o0 * n + b, h0 * n + c, top * n + with_j);
                out.add_quad(o1 * n + a, o1 * n + b, h0 * n + c, top * n + with_j);
                out.add_quad(h0 * n + a, h0 * n + b, o0 * n + c, o1 * n + without_j);
                out.add_quad(top * n + a, top * n + b, o0 * n + c, o1 * n + without_j);
            }
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out.add_quad(o0 * n + a, o1 * n + mod(a + base_shift, n), h0 * n + b,
                         top * n + mod(b + base_shift + jp, n));
}

// Shared engine for the quadrupling (levels = 2) and power-of-two
// (levels = 2^m) constructions; levels form Z_2^m under XOR.
LargeSet pow2_engine(const LargeSet& ls, const CodeArray& pa, const OneFactorization& f,
                     const CodeArray& latin, int m) {
    const int n = ls.n;
    const int mu = ls.mu;
    const int gamma = pa.index;
    const int levels = 1 << m;

    check_pair_pa(pa, n);
    check_doubling_relation(ls, pa);
    require(f.n == n, "one-factorization size mismatch");
    require(latin.kind == ArrayKind::Latin && latin.v == n - 1, "expected an (n-1) x (n-1) Latin square");
    require(static_cast<long long>(levels) * n < 640, "output point set beyond supported scale");
    if (auto v = verify_ls(ls)) throw std::invalid_argument("input large set invalid: " + v->message);
    if (auto v = verify_one_factorization(f))
        throw std::invalid_argument("one-factorization invalid: " + v->message);
    if (auto v = verify_array(latin)) throw std::invalid_argument("Latin square invalid: " + v->message);

    const std::vector<Design> doubled = double_by_permutations(ls.systems[0], pa);  // n*mu systems SQS(2n)
    const int nmu = n * mu;

    // level structure: pairs and sorted 4-sets by XOR sum
    std::vector<std::vector<std::pair<int, int>>> pairs_by_sum(static_cast<std::size_t>(levels));
    for (int x = 0; x < levels; ++x)
        for (int y = x + 1; y < levels; ++y) pairs_by_sum[static_cast<std::size_t>(x ^ y)].push_back({x, y});
    std::vector<std::vector<std::array<int, 4>>> quads_by_sum(static_cast<std::size_t>(levels));
    for (int x = 0; x < levels; ++x)
        for (int y = x + 1; y < levels; ++y)
            for (int z = y + 1; z < levels; ++z) {
                for (int s = 0; s < levels; ++s) {
                    int w = x ^ y ^ z ^ s;
                    if (w > z) quads_by_sum[static_cast<std::size_t>(s)].push_back({x, y, z, w});
                }
            }
    const auto& zero_quads = quads_by_sum[0];

    const std::vector<LeftoverLabel> leftovers = leftover_plan(n, mu);
    const int mu_minus_gamma = mu - gamma;
    require(mu_minus_gamma > 0, "mu must exceed gamma");

    LargeSet out;
    out.t = 3;
    out.k = 4;
    out.n = levels * n;
    out.mu = mu;
    const std::size_t family_count = static_cast<std::size_t>(levels - 1) * static_cast<std::size_t>(nmu);
    const std::size_t total = family_count + static_cast<std::size_t>(n - 3) * static_cast<std::size_t>(mu);
    out.systems.assign(total, Design{});

    const std::uint64_t blocks_per_system = binom(out.n, 3) / 4;

    parallel_for(total, [&](std::size_t s_idx) {
        Design sys(3, 4, out.n);
        sys.reserve_blocks(blocks_per_system);
        if (s_idx < family_count) {
            const int i = static_cast<int>(s_idx / static_cast<std::size_t>(nmu)) + 1;
            const int j = static_cast<int>(s_idx % static_cast<std::size_t>(nmu));
            const int ip = j / mu + 1;  // paired doubled-system parameters
            const int jp = j % mu;

            // doubled system embedded on every level pair summing to i
            for (auto [x, y] : pairs_by_sum[static_cast<std::size_t>(i)]) {
                const Design& src = doubled[static_cast<std::size_t>(j)];
                for (std::size_t b = 0; b < src.block_count(); ++b) {
                    auto blk = src.block(b);
                    int q[4];
                    for (int c = 0; c < 4; ++c) {
                        int lev = blk[static_cast<std::size_t>(c)] / n;
                        int base = blk[static_cast<std::size_t>(c)] % n;
                        q[c] = (lev == 0 ? x : y) * n + base;
                    }
                    sys.add_quad(q[0], q[1], q[2], q[3]);
                }
            }

            // companion blocks for every zero-sum 4-set whose matching sums to i
            for (const auto& quad : zero_quads) {
                const int x = quad[0], y = quad[1], z = quad[2], w = quad[3];
                if ((x ^ y) == i)
                    emit_companions(sys, n, f, ip, jp, x, y, z, w);
                else if ((x ^ z) == i)
                    emit_companions(sys, n, f, ip, jp, x, z, y, w);
                else if ((x ^ w) == i)
                    emit_companions(sys, n, f, ip, jp, y, z, x, w);
            }

            // slot-transversal blocks on the 4-sets whose XOR sum is i itself
            for (const auto& quad : quads_by_sum[static_cast<std::size_t>(i)]) {
                const int x = quad[0], y = quad[1], z = quad[2], w = quad[3];
                const int r = j % n;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            sys.add_quad(x * n + a, y * n + b, z * n + c,
                                         w * n + mod(a + b + c + r, n));
            }
        } else {
            const std::size_t idx = s_idx - family_count;
            const Design& src = ls.systems[idx];

            // one copy of the source system on every level
            for (int lev = 0; lev < levels; ++lev)
                for (std::size_t b = 0; b < src.block_count(); ++b) {
                    auto blk = src.block(b);
                    sys.add_quad(lev * n + blk[0], lev * n + blk[1], lev * n + blk[2],
                                 lev * n + blk[3]);
                }

            // factor-product blocks on every level pair, band by Latin row
            const int band = static_cast<int>(idx) / mu_minus_gamma;
            for (int lo = 0; lo < levels; ++lo)
                for (int hi = lo + 1; hi < levels; ++hi)
                    for (int r = 0; r < n - 1; ++r) {
                        int r2 = latin.at(band, r);
                        for (auto [a, b] : f.factors[static_cast<std::size_t>(r)])
                            for (auto [c, d] : f.factors[static_cast<std::size_t>(r2)])
                                sys.add_quad(lo * n + a, lo * n + b, hi * n + c, hi * n + d);
                    }

            // the assigned leftover family on every sorted zero-sum 4-set
            const LeftoverLabel label = leftovers[idx];
            const int v = label.index % n;
            const bool fam_d = label.family == LeftoverLabel::Family::D;
            for (const auto& quad : zero_quads) {
                const int x = quad[0], y = quad[1], z = quad[2], w = quad[3];
                for (int p0 = 0; p0 < n; ++p0)
                    for (int p1 = 0; p1 < n; ++p1)
                        for (int p2 = 0; p2 < n; ++p2) {
                            int p3 = fam_d ? mod(p0 + p2 - p1 + v, n) : mod(p2 + p1 - p0 + v, n);
                            sys.add_quad(x * n + p0, y * n + p1, z * n + p2, w * n + p3);
                        }
            }
        }
        out.systems[s_idx] = std::move(sys);
    });
    return out;
}

}  // namespace

std::vector<Design> double_by_permutations(const Design& s, const CodeArray& pa) {
    require(s.t == 3 && s.k == 4, "dls expects an SQS");
    const int n = s.n;
    check_pair_pa(pa, n);
    if (auto v = verify_steiner(s)) throw std::invalid_argument("dls: input design invalid: " + v->message);

    std::vector<Design> out(static_cast<std::size_t>(pa.rows));
    parallel_for(out.size(), [&](std::size_t r) {
        auto alpha = pa.row(static_cast<int>(r));
        // alpha consistently maps level-0 labels to level-1 labels, so the
        // lifted point of a level-1-heavy block crosses down through the
        // inverse; with alpha in both directions a non-involution row fails
        // to cover every mixed triple.
        std::vector<int> alpha_inv(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) alpha_inv[static_cast<std::size_t>(alpha[static_cast<std::size_t>(x)])] = x;
        Design sys(3, 4, 2 * n);
        sys.reserve_blocks(binom(2 * n, 3) / 4);
        for (std::size_t b = 0; b < s.block_count(); ++b) {
            auto blk = s.block(b);
            for (int lift = 0; lift < 4; ++lift) {
                int q0[4], q1[4];
                for (int c = 0; c < 4; ++c) {
                    int p = blk[static_cast<std::size_t>(c)];
                    if (c == lift) {
                        q0[c] = n + alpha[static_cast<std::size_t>(p)];  // up to level 1
                        q1[c] = alpha_inv[static_cast<std::size_t>(p)];  // down to level 0
                    } else {
                        q0[c] = p;
                        q1[c] = n + p;
                    }
                }
                sys.add_quad(q0[0], q0[1], q0[2], q0[3]);
                sys.add_quad(q1[0], q1[1], q1[2], q1[3]);
            }
        }
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                sys.add_quad(x, y, n + alpha[static_cast<std::size_t>(x)],
                             n + alpha[static_cast<std::size_t>(y)]);
        out[r] = std::move(sys);
    });
    return out;
}

std::vector<Design> double_by_factorizations(const LargeSet& ls, const OneFactorization& f,
                       const OneFactorization& f2, const CodeArray& latin) {
    require(ls.t == 3 && ls.k == 4, "db expects an LS(3,4,n;mu)");
    const int n = ls.n;
    require(n >= 4 && n % 2 == 0, "db needs even n >= 4");
    require(ls.mu % (n - 1) == 0, "multiplicity must be of the form g*(n-1)");
    const int g = ls.mu / (n - 1);
    require(g >= 1, "multiplicity must be of the form g*(n-1)");
    require(ls.systems.size() == static_cast<std::size_t>(ls.mu) * static_cast<std::size_t>(n - 3),
            "large set must hold mu*(n-3) systems");
    require(f.n == n && f2.n == n, "one-factorization size mismatch");
    require(latin.kind == ArrayKind::Latin && latin.v == n - 1, "expected an (n-1) x (n-1) Latin square");
    if (auto v = verify_one_factorization(f))
        throw std::invalid_argument("db: first one-factorization invalid: " + v->message);
    if (auto v = verify_one_factorization(f2))
        throw std::invalid_argument("db: second one-factorization invalid: " + v->message);
    if (auto v = verify_array(latin)) throw std::invalid_argument("db: Latin square invalid: " + v->message);

    const int band_size = g * (n - 3);
    std::vector<Design> out(ls.systems.size());
    parallel_for(out.size(), [&](std::size_t i) {
        const Design& src = ls.systems[i];
        const int band = static_cast<int>(i) / band_size;
        Design sys(3, 4, 2 * n);
        sys.reserve_blocks(binom(2 * n, 3) / 4);
        for (std::size_t b = 0; b < src.block_count(); ++b) {
            auto blk = src.block(b);
            sys.add_quad(blk[0], blk[1], blk[2], blk[3]);
            sys.add_quad(n + blk[0], n + blk[1], n + blk[2], n + blk[3]);
        }
        for (int r = 0; r < n - 1; ++r) {
            int r2 = latin.at(band, r);
            for (auto [x1, x2] : f.factors[static_cast<std::size_t>(r)])
                for (auto [y1, y2] : f2.factors[static_cast<std::size_t>(r2)])
                    sys.add_quad(x1, x2, n + y1, n + y2);
        }
        out[i] = std::move(sys);
    });
    return out;
}

LargeSet double_ls(const LargeSet& ls, const CodeArray& pa) {
    check_pair_pa(pa, ls.n);
    check_doubling_relation(ls, pa);
    if (auto v = verify_ls(ls)) throw std::invalid_argument("double_ls: input invalid: " + v->message);

    OneFactorization f = circle_one_factorization(ls.n);
    CodeArray latin = cyclic_latin(ls.n - 1);
    LargeSet out;
    out.t = 3;
    out.k = 4;
    out.n = 2 * ls.n;
    out.mu = ls.mu;
    out.systems = double_by_permutations(ls.systems[0], pa);
    std::vector<Design> tail = double_by_factorizations(ls, f, f, latin);
    out.systems.insert(out.systems.end(), std::make_move_iterator(tail.begin()),
                       std::make_move_iterator(tail.end()));
    return out;
}

std::vector<LeftoverLabel> leftover_plan(int n, int mu) {
    require(n >= 1 && mu >= 1, "leftover_plan needs positive n, mu");
    const int t = (mu + n - 1) / n;
    const int d_count = t * n;
    const int e_count = (mu - t) * n;
    if (mu - t < 0) throw std::runtime_error("leftover_plan: no E-families available");

    std::vector<bool> d_used(static_cast<std::size_t>(d_count), false);
    std::vector<bool> e_used(static_cast<std::size_t>(e_count), false);
    for (int j = 0; j < mu; ++j) {
        const int v = j % n;
        int dpick = -1;
        for (int s = v; s < d_count; s += n)
            if (!d_used[static_cast<std::size_t>(s)]) {
                dpick = s;
                break;
            }
        if (dpick < 0) {
            std::ostringstream os;
            os << "leftover_plan: D-labels with set value " << v << " exhausted at j=" << j;
            throw std::runtime_error(os.str());
        }
        d_used[static_cast<std::size_t>(dpick)] = true;
        for (int rep = 0; rep < 2; ++rep) {
            int epick = -1;
            for (int s = v; s < e_count; s += n)
                if (!e_used[static_cast<std::size_t>(s)]) {
                    epick = s;
                    break;
                }
            if (epick < 0) {
                std::ostringstream os;
                os << "leftover_plan: E-labels with set value " << v << " exhausted at j=" << j;
                throw std::runtime_error(os.str());
            }
            e_used[static_cast<std::size_t>(epick)] = true;
        }
    }

    std::vector<LeftoverLabel> out;
    out.reserve(static_cast<std::size_t>(n - 3) * static_cast<std::size_t>(mu));
    for (int s = 0; s < d_count; ++s)
        if (!d_used[static_cast<std::size_t>(s)]) out.push_back({LeftoverLabel::Family::D, s});
    for (int s = 0; s < e_count; ++s)
        if (!e_used[static_cast<std::size_t>(s)]) out.push_back({LeftoverLabel::Family::E, s});
    if (out.size() != static_cast<std::size_t>(n - 3) * static_cast<std::size_t>(mu))
        throw std::logic_error("leftover_plan: label bookkeeping is inconsistent");
    return out;
}

LargeSet quad_ls(const LargeSet& ls, const CodeArray& pa, const OneFactorization& f,
                 const CodeArray& latin) {
    return pow2_engine(ls, pa, f, latin, 2);
}

Design boolean_sqs(int i, int m) {
    require(m >= 3, "boolean_sqs requires m >= 3");
    const int size = 1 << m;
    require(i > 0 && i < size, "i must be a nonzero element of Z_2^m");
    Design d(3, 4, size);
    d.reserve_blocks(binom(size, 3) / 4);
    // quadruples with XOR sum i: unique completion of each triple upward
    for (int x = 0; x < size; ++x)
        for (int y = x + 1; y < size; ++y)
            for (int z = y + 1; z < size; ++z) {
                int w = x ^ y ^ z ^ i;
                if (w > z) d.add_quad(x, y, z, w);
            }
    // two disjoint pairs with XOR sum i each
    std::vector<std::pair<int, int>> pairs;
    for (int x = 0; x < size; ++x)
        if (x < (x ^ i)) pairs.push_back({x, x ^ i});
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (std::size_t q = p + 1; q < pairs.size(); ++q)
            d.add_quad(pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second);
    return d;
}

LargeSet pow2_ls(const LargeSet& ls, const CodeArray& pa, const OneFactorization& f,
                 const CodeArray& latin, int m) {
    require(m >= 3, "pow2_ls requires m >= 3 (use double_ls / quad_ls below that)");
    return pow2_engine(ls, pa, f, latin, m);
}

LargeSet rec4n_driver(const LargeSet& ls, const CodeArray& pa, int m) {
    require(m >= 0, "rec4n_driver requires m >= 0");
    if (m == 0) return ls;
    if (m == 1) return double_ls(ls, pa);
    OneFactorization f = circle_one_factorization(ls.n);
    CodeArray latin = cyclic_latin(ls.n - 1);
    return pow2_engine(ls, pa, f, latin, m);
}

}  // namespace lsm
