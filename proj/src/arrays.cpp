#include "lsm/arrays.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace lsm {

namespace {

// ---- GF(q) via polynomial arithmetic over Z_p ------------------------------

struct GaloisField {
    int q = 0, p = 0, e = 0;
    std::vector<int> mul_table;  // q*q

    int mul(int a, int b) const { return mul_table[static_cast<std::size_t>(a) * q + b]; }
    int add(int a, int b) const {  // digitwise mod p
        if (e == 1) return (a + b) % p;
        int r = 0, base = 1;
        while (a > 0 || b > 0) {
            r += ((a % p + b % p) % p) * base;
            a /= p;
            b /= p;
            base *= p;
        }
        return r;
    }
};

bool is_prime(int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

// digits base p, least significant first
std::vector<int> digits(int x, int p, int len) {
    std::vector<int> d(static_cast<std::size_t>(len), 0);
    for (int i = 0; i < len && x > 0; ++i, x /= p) d[static_cast<std::size_t>(i)] = x % p;
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
}

// true iff the monic polynomial div (coefficients low-first, leading 1)
// divides cand exactly over Z_p
bool divides(const std::vector<int>& div, std::vector<int> rem, int p) {
    const std::size_t dd = div.size() - 1;  // degree of divisor
    for (std::size_t i = rem.size(); i-- > dd;) {
        int c = rem[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < div.size(); ++j)
            rem[i - dd + j] = ((rem[i - dd + j] - c * div[j]) % p + p * p) % p;
    }
    return std::all_of(rem.begin(), rem.end(), [](int v) { return v == 0; });
}

// monic irreducible of degree e over Z_p, found by trial division
std::vector<int> find_irreducible(int p, int e) {
    int total = 1;
    for (int i = 0; i < e; ++i) total *= p;
    for (int low = 0; low < total; ++low) {
        std::vector<int> cand = digits(low, p, e);
        cand.push_back(1);  // monic
        bool reducible = false;
        for (int deg = 1; deg <= e / 2 && !reducible; ++deg) {
            int dcount = 1;
            for (int i = 0; i < deg; ++i) dcount *= p;
            for (int dl = 0; dl < dcount && !reducible; ++dl) {
                std::vector<int> div = digits(dl, p, deg);
                div.push_back(1);
                reducible = divides(div, cand, p);
            }
        }
        if (!reducible) return cand;
    }
    throw std::logic_error("no irreducible polynomial found");
}

std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& irr, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const std::size_t e = irr.size() - 1;
    for (std::size_t i = prod.size(); i-- > e;) {
        int c = prod[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < irr.size(); ++j)
            prod[i - e + j] = ((prod[i - e + j] - c * irr[j]) % p + p * p) % p;
    }
    prod.resize(e);
    return prod;
}

GaloisField make_field(int q) {
    int p = 0, e = 0;
    for (int cand = 2; cand <= q; ++cand) {
        if (!is_prime(cand)) continue;
        int power = cand, exp = 1;
        while (power < q) {
            power *= cand;
            ++exp;
        }
        if (power == q) {
            p = cand;
            e = exp;
            break;
        }
    }
    if (p == 0) throw std::invalid_argument("q is not a prime power");

    GaloisField f;
    f.q = q;
    f.p = p;
    f.e = e;
    f.mul_table.assign(static_cast<std::size_t>(q) * q, 0);
    if (e == 1) {
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) f.mul_table[static_cast<std::size_t>(a) * q + b] = a * b % q;
        return f;
    }
    std::vector<int> irr = find_irreducible(p, e);
    for (int a = 0; a < q; ++a) {
        std::vector<int> da = digits(a, p, e);
        for (int b = 0; b < q; ++b) {
            std::vector<int> db = digits(b, p, e);
            f.mul_table[static_cast<std::size_t>(a) * q + b] = undigits(poly_mul_mod(da, db, irr, p), p);
        }
    }
    return f;
}

// ---- verification helpers ---------------------------------------------------

std::string join_cells(std::span<const Cell> row) {
    std::ostringstream os;
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    return os.str();
}

std::string column_set_str(const std::vector<int>& cols) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "}";
    return os.str();
}

// next k-subset of [0,cols) in lexicographic order; false when exhausted
bool next_combination(std::vector<int>& idx, int cols) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < cols - (k - i)) {
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

VerifyResult check_rows_distinct(const CodeArray& a) {
    for (int r = 0; r < a.rows; ++r) {
        std::vector<bool> seen(static_cast<std::size_t>(a.v), false);
        for (int c = 0; c < a.cols; ++c) {
            Cell val = a.at(r, c);
            if (seen[static_cast<std::size_t>(val)]) {
                std::ostringstream os;
                os << "row " << r << " has a repeated entry: " << join_cells(a.row(r));
                return verify_fail(os.str());
            }
            seen[static_cast<std::size_t>(val)] = true;
        }
    }
    return verify_ok();
}

// Every k columns must carry each ordered k-tuple `want` times; tuples with
// repeated entries are expected `want_repeat` times (OA: want, OD: 0).
VerifyResult check_ordered_tuples(const CodeArray& a, int k, std::uint64_t want,
                                  std::uint64_t want_repeat) {
    std::vector<int> cols(static_cast<std::size_t>(k));
    std::iota(cols.begin(), cols.end(), 0);
    std::uint64_t space = 1;
    for (int i = 0; i < k; ++i) space *= static_cast<std::uint64_t>(a.v);
    std::vector<std::uint32_t> counts;
    std::vector<int> tup(static_cast<std::size_t>(k));
    do {
        counts.assign(space, 0);
        for (int r = 0; r < a.rows; ++r) {
            std::uint64_t key = 0;
            for (int i = 0; i < k; ++i)
                key = key * static_cast<std::uint64_t>(a.v) +
                      static_cast<std::uint64_t>(a.at(r, cols[static_cast<std::size_t>(i)]));
            ++counts[key];
        }
        for (std::uint64_t key = 0; key < space; ++key) {
            std::uint64_t rem = key;
            bool distinct = true;
            for (int i = k - 1; i >= 0; --i) {
                tup[static_cast<std::size_t>(i)] = static_cast<int>(rem % a.v);
                rem /= static_cast<std::uint64_t>(a.v);
            }
            for (int i = 0; i < k && distinct; ++i)
                for (int j = i + 1; j < k; ++j)
                    if (tup[static_cast<std::size_t>(i)] == tup[static_cast<std::size_t>(j)]) distinct = false;
            std::uint64_t expect = distinct ? want : want_repeat;
            if (counts[key] != expect) {
                std::ostringstream os;
                os << "columns " << column_set_str(cols) << ": tuple (";
                for (int i = 0; i < k; ++i) os << (i ? "," : "") << tup[static_cast<std::size_t>(i)];
                os << ") appears " << counts[key] << " times, expected " << expect;
                return verify_fail(os.str());
            }
        }
    } while (next_combination(cols, a.cols));
    return verify_ok();
}

// Every k columns must carry each k-subset of distinct values `want` times.
VerifyResult check_unordered_subsets(const CodeArray& a, int k, std::uint64_t want) {
    std::vector<int> cols(static_cast<std::size_t>(k));
    std::iota(cols.begin(), cols.end(), 0);
    std::vector<std::uint32_t> counts;
    do {
        counts.assign(binom(a.v, k), 0);
        for (int r = 0; r < a.rows; ++r) {
            Pt tup[8];
            for (int i = 0; i < k; ++i) tup[i] = a.at(r, cols[static_cast<std::size_t>(i)]);
            std::sort(tup, tup + k);
            for (int i = 1; i < k; ++i)
                if (tup[i] == tup[i - 1]) {
                    std::ostringstream os;
                    os << "row " << r << " repeats a value within columns " << column_set_str(cols);
                    return verify_fail(os.str());
                }
            std::uint64_t rk = 0;
            for (int i = 0; i < k; ++i) rk += binom(tup[i], i + 1);
            ++counts[rk];
        }
        for (std::size_t rk = 0; rk < counts.size(); ++rk) {
            if (counts[rk] != want) {
                std::vector<Pt> sub = unrank_subset(rk, k, a.v);
                std::ostringstream os;
                os << "columns " << column_set_str(cols) << ": subset {";
                for (int i = 0; i < k; ++i) os << (i ? "," : "") << sub[static_cast<std::size_t>(i)];
                os << "} appears " << counts[rk] << " times, expected " << want;
                return verify_fail(os.str());
            }
        }
    } while (next_combination(cols, a.cols));
    return verify_ok();
}

}  // namespace

CodeArray zero_sum_oa(int t, int g) {
    if (t < 2 || g < 2) throw std::invalid_argument("zero_sum_oa requires t >= 2 and g >= 2");
    CodeArray a;
    a.kind = ArrayKind::OA;
    a.strength = t - 1;
    a.index = 1;
    a.v = g;
    a.cols = t;
    std::uint64_t prefixes = 1;
    for (int i = 0; i < t - 1; ++i) prefixes *= static_cast<std::uint64_t>(g);
    a.rows = static_cast<int>(prefixes);
    a.cells.reserve(prefixes * static_cast<std::uint64_t>(t));
    std::vector<int> word(static_cast<std::size_t>(t - 1), 0);
    for (std::uint64_t it = 0; it < prefixes; ++it) {
        int sum = 0;
        for (int v : word) {
            a.cells.push_back(static_cast<Cell>(v));
            sum += v;
        }
        a.cells.push_back(static_cast<Cell>(mod(-sum, g)));
        for (int i = t - 2; i >= 0; --i) {
            if (++word[static_cast<std::size_t>(i)] < g) break;
            word[static_cast<std::size_t>(i)] = 0;
        }
    }
    return a;
}

std::vector<CodeArray> loa_from_oa(const CodeArray& oa) {
    if (oa.kind != ArrayKind::OA) throw std::invalid_argument("loa_from_oa expects an OA");
    if (auto v = verify_array(oa))
        throw std::invalid_argument("loa_from_oa: input is not a valid OA: " + v->message);
    const int free_cols = oa.cols - oa.strength;
    std::uint64_t parts = 1;
    for (int i = 0; i < free_cols; ++i) parts *= static_cast<std::uint64_t>(oa.v);
    std::vector<CodeArray> out;
    out.reserve(parts);
    std::vector<int> x(static_cast<std::size_t>(free_cols), 0);
    for (std::uint64_t it = 0; it < parts; ++it) {
        CodeArray c = oa;
        for (int r = 0; r < c.rows; ++r)
            for (int i = 0; i < free_cols; ++i) {
                Cell& cell = c.cells[static_cast<std::size_t>(r) * c.cols + i];
                cell = static_cast<Cell>((cell + x[static_cast<std::size_t>(i)]) % oa.v);
            }
        out.push_back(std::move(c));
        for (int i = free_cols - 1; i >= 0; --i) {
            if (++x[static_cast<std::size_t>(i)] < oa.v) break;
            x[static_cast<std::size_t>(i)] = 0;
        }
    }
    return out;
}

CodeArray agl_pa(int q) {
    GaloisField f = make_field(q);
    CodeArray a;
    a.kind = ArrayKind::PA;
    a.index = 2;
    a.strength = 2;
    a.v = q;
    a.cols = q;
    a.rows = q * (q - 1);
    a.cells.reserve(static_cast<std::size_t>(a.rows) * q);
    for (int s = 1; s < q; ++s)
        for (int b = 0; b < q; ++b)
            for (int x = 0; x < q; ++x) a.cells.push_back(static_cast<Cell>(f.add(f.mul(s, x), b)));
    return a;
}

CodeArray half_agl_pa(int q) {
    if (q % 4 != 3) throw std::invalid_argument("half_agl_pa requires q = 3 (mod 4)");
    GaloisField f = make_field(q);
    std::vector<bool> square(static_cast<std::size_t>(q), false);
    for (int x = 1; x < q; ++x) square[static_cast<std::size_t>(f.mul(x, x))] = true;
    CodeArray a;
    a.kind = ArrayKind::PA;
    a.index = 1;
    a.strength = 2;
    a.v = q;
    a.cols = q;
    a.rows = q * (q - 1) / 2;
    a.cells.reserve(static_cast<std::size_t>(a.rows) * q);
    for (int s = 1; s < q; ++s) {
        if (!square[static_cast<std::size_t>(s)]) continue;
        for (int b = 0; b < q; ++b)
            for (int x = 0; x < q; ++x) a.cells.push_back(static_cast<Cell>(f.add(f.mul(s, x), b)));
    }
    return a;
}

CodeArray pa_repeat(const CodeArray& p, int m) {
    if (m < 1) throw std::invalid_argument("pa_repeat requires m >= 1");
    if (p.kind != ArrayKind::PA) throw std::invalid_argument("pa_repeat expects a PA");
    CodeArray out = p;
    out.index = p.index * m;
    out.rows = p.rows * m;
    out.cells.reserve(p.cells.size() * static_cast<std::size_t>(m));
    for (int rep = 1; rep < m; ++rep)
        out.cells.insert(out.cells.end(), p.cells.begin(), p.cells.end());
    return out;
}

OneFactorization circle_one_factorization(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("one-factorization needs even n >= 2");
    OneFactorization f;
    f.n = n;
    f.factors.resize(static_cast<std::size_t>(n - 1));
    for (int r = 0; r < n - 1; ++r) {
        auto& factor = f.factors[static_cast<std::size_t>(r)];
        factor.emplace_back(n - 1, r);
        for (int i = 1; i <= n / 2 - 1; ++i)
            factor.emplace_back(mod(r + i, n - 1), mod(r - i, n - 1));
    }
    return f;
}

CodeArray cyclic_latin(int v) {
    if (v < 1) throw std::invalid_argument("cyclic_latin requires v >= 1");
    CodeArray a;
    a.kind = ArrayKind::Latin;
    a.index = 0;
    a.strength = 0;
    a.v = v;
    a.rows = v;
    a.cols = v;
    a.cells.reserve(static_cast<std::size_t>(v) * v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) a.cells.push_back(static_cast<Cell>((i + j) % v));
    return a;
}

VerifyResult verify_array(const CodeArray& a) {
    if (a.rows < 0 || a.cols <= 0 || a.v <= 0) return verify_fail("degenerate dimensions");
    if (a.cells.size() != static_cast<std::size_t>(a.rows) * a.cols)
        return verify_fail("cell count does not match dimensions");
    for (Cell c : a.cells)
        if (c < 0 || c >= a.v) return verify_fail("cell value outside Z_v");

    switch (a.kind) {
        case ArrayKind::OA: {
            if (a.strength < 1 || a.strength > a.cols) return verify_fail("OA strength out of range");
            std::uint64_t want_rows = 1;
            for (int i = 0; i < a.strength; ++i) want_rows *= static_cast<std::uint64_t>(a.v);
            if (static_cast<std::uint64_t>(a.rows) != want_rows) {
                std::ostringstream os;
                os << "OA row count " << a.rows << " != v^t = " << want_rows;
                return verify_fail(os.str());
            }
            return check_ordered_tuples(a, a.strength, 1, 1);
        }
        case ArrayKind::PA: {
            if (a.strength < 1 || a.strength > a.cols) return verify_fail("PA strength out of range");
            if (a.index < 1) return verify_fail("PA index must be positive");
            std::uint64_t want_rows = static_cast<std::uint64_t>(a.index) * binom(a.v, a.strength);
            if (static_cast<std::uint64_t>(a.rows) != want_rows) {
                std::ostringstream os;
                os << "PA row count " << a.rows << " != lambda*binom(v,k) = " << want_rows;
                return verify_fail(os.str());
            }
            if (auto v = check_rows_distinct(a)) return v;
            return check_unordered_subsets(a, a.strength, static_cast<std::uint64_t>(a.index));
        }
        case ArrayKind::OD: {
            if (a.strength < 1 || a.strength > a.cols) return verify_fail("OD strength out of range");
            if (a.index < 1) return verify_fail("OD index must be positive");
            std::uint64_t fact = 1;
            for (int i = 2; i <= a.strength; ++i) fact *= static_cast<std::uint64_t>(i);
            std::uint64_t want_rows = static_cast<std::uint64_t>(a.index) * binom(a.v, a.strength) * fact;
            if (static_cast<std::uint64_t>(a.rows) != want_rows) {
                std::ostringstream os;
                os << "OD row count " << a.rows << " != lambda*binom(v,k)*k! = " << want_rows;
                return verify_fail(os.str());
            }
            if (auto v = check_rows_distinct(a)) return v;
            return check_ordered_tuples(a, a.strength, static_cast<std::uint64_t>(a.index), 0);
        }
        case ArrayKind::Latin: {
            if (a.rows != a.v || a.cols != a.v) return verify_fail("Latin square must be v x v");
            for (int i = 0; i < a.v; ++i) {
                std::vector<bool> row_seen(static_cast<std::size_t>(a.v), false);
                std::vector<bool> col_seen(static_cast<std::size_t>(a.v), false);
                for (int j = 0; j < a.v; ++j) {
                    if (row_seen[static_cast<std::size_t>(a.at(i, j))]) {
                        std::ostringstream os;
                        os << "row " << i << " is not a permutation";
                        return verify_fail(os.str());
                    }
                    row_seen[static_cast<std::size_t>(a.at(i, j))] = true;
                    if (col_seen[static_cast<std::size_t>(a.at(j, i))]) {
                        std::ostringstream os;
                        os << "column " << i << " is not a permutation";
                        return verify_fail(os.str());
                    }
                    col_seen[static_cast<std::size_t>(a.at(j, i))] = true;
                }
            }
            return verify_ok();
        }
    }
    return verify_fail("unknown array kind");
}

VerifyResult verify_one_factorization(const OneFactorization& f) {
    if (f.n < 2 || f.n % 2 != 0) return verify_fail("point count must be even and >= 2");
    if (f.factors.size() != static_cast<std::size_t>(f.n - 1)) {
        std::ostringstream os;
        os << "expected " << f.n - 1 << " factors, got " << f.factors.size();
        return verify_fail(os.str());
    }
    std::vector<int> edge_count(static_cast<std::size_t>(f.n) * f.n, 0);
    for (std::size_t r = 0; r < f.factors.size(); ++r) {
        std::vector<bool> used(static_cast<std::size_t>(f.n), false);
        if (f.factors[r].size() != static_cast<std::size_t>(f.n / 2)) {
            std::ostringstream os;
            os << "factor " << r << " has " << f.factors[r].size() << " pairs, expected " << f.n / 2;
            return verify_fail(os.str());
        }
        for (auto [x, y] : f.factors[r]) {
            if (x < 0 || x >= f.n || y < 0 || y >= f.n || x == y) {
                std::ostringstream os;
                os << "factor " << r << " holds an invalid pair {" << x << "," << y << "}";
                return verify_fail(os.str());
            }
            if (used[static_cast<std::size_t>(x)] || used[static_cast<std::size_t>(y)]) {
                std::ostringstream os;
                os << "factor " << r << " is not a matching at pair {" << x << "," << y << "}";
                return verify_fail(os.str());
            }
            used[static_cast<std::size_t>(x)] = used[static_cast<std::size_t>(y)] = true;
            int lo = std::min(x, y), hi = std::max(x, y);
            ++edge_count[static_cast<std::size_t>(lo) * f.n + hi];
        }
    }
    for (int lo = 0; lo < f.n; ++lo)
        for (int hi = lo + 1; hi < f.n; ++hi)
            if (edge_count[static_cast<std::size_t>(lo) * f.n + hi] != 1) {
                std::ostringstream os;
                os << "edge {" << lo << "," << hi << "} covered "
                   << edge_count[static_cast<std::size_t>(lo) * f.n + hi] << " times";
                return verify_fail(os.str());
            }
    return verify_ok();
}

CodeArray od_as_pa(const CodeArray& od) {
    if (od.kind != ArrayKind::OD) throw std::invalid_argument("od_as_pa expects an OD");
    CodeArray out = od;
    out.kind = ArrayKind::PA;
    std::uint64_t fact = 1;
    for (int i = 2; i <= od.strength; ++i) fact *= static_cast<std::uint64_t>(i);
    out.index = static_cast<int>(od.index * fact);
    return out;
}

}  // namespace lsm
