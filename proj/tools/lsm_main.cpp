// lsm - construction and verification of Steiner quadruple systems, large
// sets with multiplicity, H-designs and their companion arrays.
//
// Exit codes: 0 success / artifact valid, 1 verification failure,
// 2 usage or input error, 3 search failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lsm/arrays.hpp"
#include "lsm/hdesign.hpp"
#include "lsm/io.hpp"
#include "lsm/lsops.hpp"
#include "lsm/seeds.hpp"
#include "lsm/recursion.hpp"
#include "lsm/search.hpp"

namespace {

using namespace lsm;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSearchFailure = 3;

void emit(const std::string& path, const ParsedFile& payload) {
    if (path.empty() || path == "-") {
        std::visit(
            [&](const auto& value) {
                using T = std::decay_t<decltype(value)>;
                if constexpr (std::is_same_v<T, Design>) write_design(std::cout, value);
                else if constexpr (std::is_same_v<T, LargeSet>) write_large_set(std::cout, value);
                else if constexpr (std::is_same_v<T, GroupedDesign>) write_hdesign(std::cout, value);
                else if constexpr (std::is_same_v<T, LargeSetH>) write_large_set_h(std::cout, value);
                else write_array(std::cout, value);
            },
            payload);
    } else {
        write_any_file(path, payload);
    }
}

ParsedFile generate_seed(const std::string& name) {
    if (name == "sqs4") return seed_sqs4();
    if (name == "s_4_5_11") return seed_s_4_5_11();
    if (name == "h_5_4") return seed_h_5_4();
    if (name == "h_6_3") return seed_h_6_3();
    if (name == "h_7_2") return seed_h_7_2();
    if (name == "ls_4_5_11") return ls_4_5_11();
    if (name == "ls_3_4_10_mu2") return ls_3_4_10_mu2();
    if (name == "ls_3_4_10_mu3") return ls_3_4_10_mu3();
    if (name == "ls_5_6_12") return ls_5_6_12();
    if (name == "lh_5_4") return lh_5_4();
    if (name == "lh_6_3") return lh_6_3();
    if (name == "lh_7_2") return lh_7_2();
    throw std::runtime_error(
        "unknown seed '" + name +
        "' (try: sqs4 s_4_5_11 h_5_4 h_6_3 h_7_2 ls_4_5_11 ls_3_4_10_mu2 ls_3_4_10_mu3 "
        "ls_5_6_12 lh_5_4 lh_6_3 lh_7_2)");
}

Design need_design(const ParsedFile& f, const std::string& what) {
    if (const Design* d = std::get_if<Design>(&f)) return *d;
    throw std::runtime_error(what + ": expected a DESIGN file");
}

LargeSet need_large_set(const ParsedFile& f, const std::string& what) {
    if (const LargeSet* ls = std::get_if<LargeSet>(&f)) return *ls;
    throw std::runtime_error(what + ": expected a LARGESET file");
}

LargeSetH need_large_set_h(const ParsedFile& f, const std::string& what) {
    if (const LargeSetH* ls = std::get_if<LargeSetH>(&f)) return *ls;
    throw std::runtime_error(what + ": expected a LARGESETH file");
}

CodeArray need_array(const ParsedFile& f, const std::string& what) {
    if (const CodeArray* a = std::get_if<CodeArray>(&f)) return *a;
    throw std::runtime_error(what + ": expected an ARRAY file");
}

int run_verify(const std::string& path, const std::string& expect, int expect_mu) {
    ParsedFile payload = read_any_file(path);
    std::string kind = kind_name(payload);
    if (!expect.empty() && expect != kind) {
        std::cerr << "error: file is a '" << kind << "', expected '" << expect << "'\n";
        return kExitUsage;
    }
    VerifyResult result;
    std::ostringstream summary;
    std::visit(
        [&](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, Design>) {
                result = verify_steiner(value);
                summary << "S(" << value.t << "," << value.k << "," << value.n << ") with "
                        << value.block_count() << " blocks";
            } else if constexpr (std::is_same_v<T, LargeSet>) {
                if (expect_mu >= 0 && value.mu != expect_mu) {
                    result = verify_fail("header multiplicity " + std::to_string(value.mu) +
                                         " differs from --mu " + std::to_string(expect_mu));
                    return;
                }
                result = verify_ls(value);
                summary << "LS(" << value.t << "," << value.k << "," << value.n << ";" << value.mu
                        << ") with " << value.systems.size() << " systems";
            } else if constexpr (std::is_same_v<T, GroupedDesign>) {
                result = verify_h(value);
                summary << "H(" << value.n << "," << value.g << "," << value.k << "," << value.t
                        << ") with " << value.block_count() << " blocks";
            } else if constexpr (std::is_same_v<T, LargeSetH>) {
                result = verify_lh(value);
                summary << "LH(" << value.n << "," << value.g << "," << value.k << "," << value.t
                        << ") with " << value.systems.size() << " systems";
            } else {
                result = verify_array(value);
                const char* names[] = {"OA", "PA", "OD", "LATIN"};
                summary << names[static_cast<int>(value.kind)] << " " << value.rows << "x"
                        << value.cols << " over Z_" << value.v;
            }
        },
        payload);
    if (result) {
        std::cout << "VIOLATION: " << result->message << "\n";
        return kExitViolation;
    }
    std::cout << "OK: " << summary.str() << "\n";
    return kExitOk;
}

int run_info(const std::string& path, int parts, int a_size) {
    ParsedFile payload = read_any_file(path);
    std::visit(
        [&](const auto& value) {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, Design>) {
                std::cout << "design t=" << value.t << " k=" << value.k << " n=" << value.n
                          << " blocks=" << value.block_count() << "\n";
                std::vector<int> sizes;
                if (parts > 0 && value.n % parts == 0)
                    sizes.assign(static_cast<std::size_t>(parts), value.n / parts);
                else if (a_size > 0 && a_size < value.n)
                    sizes = {a_size, value.n - a_size};
                if (!sizes.empty()) {
                    auto census = config_census(value, sizes);
                    for (const auto& [cfg, count] : census) {
                        std::cout << "config (";
                        for (std::size_t i = 0; i < cfg.size(); ++i)
                            std::cout << (i ? "," : "") << cfg[i];
                        std::cout << "): " << count << "\n";
                    }
                }
            } else if constexpr (std::is_same_v<T, LargeSet>) {
                std::cout << "largeset t=" << value.t << " k=" << value.k << " n=" << value.n
                          << " mu=" << value.mu << " systems=" << value.systems.size() << "\n";
                std::uint64_t blocks = 0;
                for (const Design& d : value.systems) blocks += d.block_count();
                std::cout << "total blocks=" << blocks << "\n";
            } else if constexpr (std::is_same_v<T, GroupedDesign>) {
                std::cout << "hdesign n=" << value.n << " g=" << value.g << " k=" << value.k
                          << " t=" << value.t << " blocks=" << value.block_count() << "\n";
            } else if constexpr (std::is_same_v<T, LargeSetH>) {
                std::cout << "largeseth n=" << value.n << " g=" << value.g << " k=" << value.k
                          << " t=" << value.t << " systems=" << value.systems.size() << "\n";
            } else {
                const char* names[] = {"OA", "PA", "OD", "LATIN"};
                std::cout << "array kind=" << names[static_cast<int>(value.kind)]
                          << " index=" << value.index << " strength=" << value.strength
                          << " v=" << value.v << " rows=" << value.rows << " cols=" << value.cols
                          << "\n";
            }
        },
        payload);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner quadruple systems, large sets with multiplicity, and H-designs"};
    app.require_subcommand(1);

    std::string out_path, in_path, in_path2, pa_path, oa_path, seed_name, expect_kind;
    int t = 4, g = 2, q = 4, n = 10, v = 3, mu = 2, point = 10, m = 1, a_size = 3;
    int expect_mu = -1, parts = 0;
    int search_lambda = 2, search_k = 2, search_n = 10;
    std::uint64_t search_seed = 1;
    double budget = 60.0;

    auto* gen = app.add_subcommand("gen", "generate a built-in object");
    gen->require_subcommand(1);
    auto* gen_oa = gen->add_subcommand("zero-sum-oa", "OA(t-1,t,g) of zero-sum words");
    gen_oa->add_option("--t", t)->required();
    gen_oa->add_option("--g", g)->required();
    gen_oa->add_option("-o,--out", out_path);
    auto* gen_agl = gen->add_subcommand("agl-pa", "PA_2(2,q,q) from affine maps");
    gen_agl->add_option("--q", q)->required();
    gen_agl->add_option("-o,--out", out_path);
    auto* gen_half = gen->add_subcommand("half-agl-pa", "PA_1(2,q,q), q = 3 (mod 4)");
    gen_half->add_option("--q", q)->required();
    gen_half->add_option("-o,--out", out_path);
    auto* gen_of = gen->add_subcommand("one-factorization", "rotation one-factorization of K_n");
    gen_of->add_option("--n", n)->required();
    gen_of->add_option("-o,--out", out_path);
    auto* gen_latin = gen->add_subcommand("latin", "cyclic Latin square");
    gen_latin->add_option("--v", v)->required();
    gen_latin->add_option("-o,--out", out_path);
    auto* gen_seed = gen->add_subcommand("seed", "built-in design or large set");
    gen_seed->add_option("--name", seed_name)->required();
    gen_seed->add_option("-o,--out", out_path);
    auto* gen_ls10 = gen->add_subcommand("ls-3-4-10", "LS(3,4,10;mu) for mu >= 2");
    gen_ls10->add_option("--mu", mu)->required();
    gen_ls10->add_option("-o,--out", out_path);

    auto* derive = app.add_subcommand("derive", "derived design(s) at a point");
    derive->add_option("--point", point)->required();
    derive->add_option("-i,--in", in_path)->required();
    derive->add_option("-o,--out", out_path);

    auto* extend = app.add_subcommand("extend", "S(4,5,11) -> S(5,6,12) extension");
    extend->add_option("-i,--in", in_path)->required();
    extend->add_option("-o,--out", out_path);

    auto* combine = app.add_subcommand("combine", "union of two large sets");
    combine->add_option("-i,--in", in_path)->required();
    combine->add_option("-j,--in2", in_path2)->required();
    combine->add_option("-o,--out", out_path);

    auto* permls = app.add_subcommand("perm-ls", "large set from a design and a PA/OD");
    permls->add_option("-i,--in", in_path)->required();
    permls->add_option("-p,--pa", pa_path)->required();
    permls->add_option("-o,--out", out_path);

    auto* partexp = app.add_subcommand("part-expand", "large set by permuting the B-part only");
    partexp->add_option("-i,--in", in_path)->required();
    partexp->add_option("--a-size", a_size)->required();
    partexp->add_option("-p,--pa", pa_path)->required();
    partexp->add_option("-o,--out", out_path);

    auto* dbl = app.add_subcommand("double", "LS(3,4,n;mu) -> LS(3,4,2n;mu)");
    dbl->add_option("-i,--in", in_path)->required();
    dbl->add_option("-p,--pa", pa_path)->required();
    dbl->add_option("-o,--out", out_path);

    auto* quad = app.add_subcommand("quad", "LS(3,4,n;mu) -> LS(3,4,4n;mu)");
    quad->add_option("-i,--in", in_path)->required();
    quad->add_option("-p,--pa", pa_path)->required();
    quad->add_option("-o,--out", out_path);

    auto* pow2 = app.add_subcommand("pow2", "LS(3,4,n;mu) -> LS(3,4,2^m n;mu)");
    pow2->add_option("--m", m)->required();
    pow2->add_option("-i,--in", in_path)->required();
    pow2->add_option("-p,--pa", pa_path)->required();
    pow2->add_option("-o,--out", out_path);

    auto* lhfrom = app.add_subcommand("lh-from-ls", "LH(n,g,k,t) from LS(t,k,n;g^(k-t)) and OA");
    lhfrom->add_option("-i,--in", in_path)->required();
    lhfrom->add_option("--oa", oa_path)->required();
    lhfrom->add_option("-o,--out", out_path);

    auto* lhexp = app.add_subcommand("lh-expand", "LH(n,g,k,t) + OA(t,k,u) -> LH(n,gu,k,t)");
    lhexp->add_option("-i,--in", in_path)->required();
    lhexp->add_option("--oa", oa_path)->required();
    lhexp->add_option("-o,--out", out_path);

    auto* verify = app.add_subcommand("verify", "verify any artifact file");
    verify->add_option("-i,--in", in_path)->required();
    verify->add_option("--expect", expect_kind)
        ->check(CLI::IsMember({"ls", "lh", "design", "h", "array"}));
    verify->add_option("--mu", expect_mu);

    auto* searchpa = app.add_subcommand("search-pa", "stochastic search for a PA_lambda(2,n,n)");
    searchpa->add_option("--lambda", search_lambda)->required();
    searchpa->add_option("--k", search_k)->required();
    searchpa->add_option("--n", search_n)->required();
    searchpa->add_option("--seed", search_seed);
    searchpa->add_option("--budget", budget);
    searchpa->add_option("-o,--out", out_path);

    auto* info = app.add_subcommand("info", "print parameters and optional configuration census");
    info->add_option("-i,--in", in_path)->required();
    info->add_option("--parts", parts);
    info->add_option("--a-size", a_size);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_oa->parsed()) emit(out_path, zero_sum_oa(t, g));
        else if (gen_agl->parsed()) emit(out_path, agl_pa(q));
        else if (gen_half->parsed()) emit(out_path, half_agl_pa(q));
        else if (gen_of->parsed()) {
            OneFactorization f = circle_one_factorization(n);
            if (out_path.empty() || out_path == "-") write_one_factorization(std::cout, f);
            else {
                std::ofstream os(out_path, std::ios::binary);
                if (!os) throw std::runtime_error("cannot open '" + out_path + "'");
                write_one_factorization(os, f);
            }
        } else if (gen_latin->parsed()) emit(out_path, cyclic_latin(v));
        else if (gen_seed->parsed()) emit(out_path, generate_seed(seed_name));
        else if (gen_ls10->parsed()) emit(out_path, ls_3_4_10(mu));
        else if (derive->parsed()) {
            ParsedFile in = read_any_file(in_path);
            if (const Design* d = std::get_if<Design>(&in)) {
                emit(out_path, derived_design(*d, point));
            } else {
                LargeSet ls = need_large_set(in, "derive");
                LargeSet out;
                out.t = ls.t - 1;
                out.k = ls.k - 1;
                out.n = ls.n - 1;
                out.mu = ls.mu;
                for (const Design& d : ls.systems) out.systems.push_back(derived_design(d, point));
                emit(out_path, out);
            }
        } else if (extend->parsed()) {
            ParsedFile in = read_any_file(in_path);
            if (const Design* d = std::get_if<Design>(&in)) {
                emit(out_path, extend_complement(*d));
            } else {
                LargeSet ls = need_large_set(in, "extend");
                LargeSet out;
                out.t = 5;
                out.k = 6;
                out.n = 12;
                out.mu = ls.mu;
                for (const Design& d : ls.systems) out.systems.push_back(extend_complement(d));
                emit(out_path, out);
            }
        } else if (combine->parsed()) {
            LargeSet a = need_large_set(read_any_file(in_path), "combine");
            LargeSet b = need_large_set(read_any_file(in_path2), "combine");
            emit(out_path, union_ls(a, b));
        } else if (permls->parsed()) {
            Design s = need_design(read_any_file(in_path), "perm-ls");
            CodeArray p = need_array(read_any_file(pa_path), "perm-ls");
            emit(out_path, perm_ls(s, p));
        } else if (partexp->parsed()) {
            Design s = need_design(read_any_file(in_path), "part-expand");
            CodeArray p = need_array(read_any_file(pa_path), "part-expand");
            emit(out_path, part_expand(s, a_size, p));
        } else if (dbl->parsed() || quad->parsed() || pow2->parsed()) {
            LargeSet ls = need_large_set(read_any_file(in_path), "recursion");
            CodeArray p = need_array(read_any_file(pa_path), "recursion");
            int stage = dbl->parsed() ? 1 : quad->parsed() ? 2 : m;
            emit(out_path, rec4n_driver(ls, p, stage));
        } else if (lhfrom->parsed()) {
            LargeSet ls = need_large_set(read_any_file(in_path), "lh-from-ls");
            CodeArray oa = need_array(read_any_file(oa_path), "lh-from-ls");
            emit(out_path, lh_from_ls(ls, oa));
        } else if (lhexp->parsed()) {
            LargeSetH lh = need_large_set_h(read_any_file(in_path), "lh-expand");
            CodeArray oa = need_array(read_any_file(oa_path), "lh-expand");
            emit(out_path, lh_expand(lh, oa));
        } else if (verify->parsed()) {
            return run_verify(in_path, expect_kind, expect_mu);
        } else if (searchpa->parsed()) {
            PaSearchOutcome outcome = search_pa(search_lambda, search_k, search_n, search_seed, budget);
            if (!outcome.array) {
                std::cerr << "search failed: best energy " << outcome.best_energy << " after "
                          << outcome.moves << " moves\n";
                return kExitSearchFailure;
            }
            emit(out_path, *outcome.array);
        } else if (info->parsed()) {
            return run_info(in_path, parts, a_size);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
