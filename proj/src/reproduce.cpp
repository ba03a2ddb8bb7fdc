#include "cubedensity/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cubedensity/analytics.hpp"
#include "cubedensity/canonical.hpp"
#include "cubedensity/constructions.hpp"
#include "cubedensity/density.hpp"
#include "cubedensity/extremal.hpp"
#include "cubedensity/graphlets.hpp"

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

struct Check {
    std::ostringstream expected;
    std::ostringstream actual;
    bool pass = true;

    void require(bool ok, const std::string& what, const std::string& exp, const std::string& act) {
        if (!expected.str().empty()) {
            expected << "; ";
            actual << "; ";
        }
        expected << what << "=" << exp;
        actual << what << "=" << act;
        if (!ok) pass = false;
    }
    void require_eq(const Rat& got, const Rat& want, const std::string& what) {
        require(got == want, what, rat_string(want), rat_string(got));
    }
    void require_eq(std::uint64_t got, std::uint64_t want, const std::string& what) {
        require(got == want, what, std::to_string(want), std::to_string(got));
    }
    void require_true(bool got, const std::string& what) {
        require(got, what, "true", got ? "true" : "false");
    }
};

std::string fmt_ld(long double v) {
    std::ostringstream os;
    os.precision(15);
    os << static_cast<double>(v);
    return os.str();
}

// --- criterion 1: count_good(W10, T) = 120/160 ---------------------------

void c1(Check& c, int threads) {
    auto r = count_good(named("W10").config, named("T").config, threads);
    c.require_eq(r.good, 120, "good");
    c.require_eq(r.total, 160, "total");
}

// --- criterion 2: local counts at a vertex in T and out of T -------------

void c2(Check& c, int) {
    auto in = local_count(named("W10").config, named("T").config, 0);
    auto out = local_count(named("W10").config, named("T").config, 2);
    c.require_true(in.in_s, "vertex 0 in T");
    c.require_eq(in.good, 15, "gamma_in");
    c.require_eq(in.total, 20, "total_in");
    c.require_true(!out.in_s, "vertex 2 out of T");
    c.require_eq(out.good, 15, "gamma_out");
    c.require_eq(out.total, 20, "total_out");
}

// --- criterion 3: setwise stabilizer of T --------------------------------

void c3(Check& c, int) {
    const CubeConfig t = named("T").config;
    const std::uint64_t t_mask = t.mask64();
    const auto t_verts = t.vertices();
    std::map<VertexId, int> t_index;
    for (std::size_t i = 0; i < t_verts.size(); ++i) t_index[t_verts[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> pair_count(t_verts.size(), std::vector<int>(t_verts.size(), 0));
    std::uint64_t outside_orbit = 0;
    std::uint64_t stab_order = 0;
    const VertexId outside_probe = 2;  // not in T

    for_each_automorphism(6, [&](const Automorphism& a) {
        std::uint64_t image = 0;
        for (VertexId v : t_verts) image |= std::uint64_t{1} << a(v);
        if (image != t_mask) return;
        ++stab_order;
        for (std::size_t i = 0; i < t_verts.size(); ++i)
            ++pair_count[i][static_cast<std::size_t>(t_index.at(a(t_verts[i])))];
        outside_orbit |= std::uint64_t{1} << a(outside_probe);
    });

    bool all_ten = true;
    for (const auto& row : pair_count)
        for (int v : row) all_ten = all_ten && v == 10;
    c.require_eq(stab_order, 240, "stabilizer order");
    c.require_true(all_ten, "10 maps per ordered pair in T");
    // 2^6 = 64 vertices exactly fill the word, so ~t_mask is the complement.
    c.require_true(outside_orbit == ~t_mask, "transitive outside T");
}

// --- criterion 4: Hamming code construction ------------------------------

void c4(Check& c, int threads) {
    const CubeConfig code = hamming_code_q7();
    auto r = count_good(named("U3").config, code, threads);
    c.require_eq(r.good, 448, "good");
    c.require_eq(r.total, 560, "total");

    const auto verts = code.vertices();
    int pairs3 = 0;
    int min_dist = 7;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            int dist = weight(verts[i] ^ verts[j]);
            min_dist = std::min(min_dist, dist);
            pairs3 += dist == 3;
        }
    c.require_eq(static_cast<std::uint64_t>(pairs3), 56, "distance-3 pairs");
    c.require_eq(static_cast<std::uint64_t>(min_dist), 3, "minimum distance");
}

// --- criterion 5: H(d,i) construction counts and the limit identity ------

ConstructionSpec h_family_spec(int d, int i) {
    PartitionModularSpec s;
    s.parts = {{Rat(i, d), 2}, {Rat(d - i, d), 1}};
    s.allowed = {{0, -1}};
    s.rounding = PartRounding::floor_first;
    return s;
}

void c5(Check& c, int threads) {
    const std::pair<int, int> pairs[] = {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
    for (auto [d, i] : pairs) {
        CubeConfig h = family_h(d, i);
        auto spec = h_family_spec(d, i);
        for (int n : {2 * d, 3 * d}) {
            auto closed = construction_density_exact(spec, h, n);
            auto counted = count_good(h, *generate(spec, n, true).materialized, threads);
            std::string tag = "H(" + std::to_string(d) + "," + std::to_string(i) + ")@n=" +
                              std::to_string(n);
            c.require(closed.fraction == counted.fraction && closed.good == counted.good,
                      tag + " closed==counted", rat_string(counted.fraction),
                      rat_string(closed.fraction));
        }
        Rat formula = h_family_flip_bit_fraction(d, i, 3 * d, 3 * i);
        c.require_eq(formula, lambda_h_family(d, i),
                     "flip-bit form at n=3d for H(" + std::to_string(d) + "," + std::to_string(i) + ")");
    }
}

// --- criterion 6: classification of Q2 and Q3 ----------------------------

void c6(Check& c, int) {
    auto atlas2 = classify(2);
    c.require_eq(static_cast<std::uint64_t>(atlas2.complement_class_count()), 4,
                 "Q2 complement classes");
    auto atlas3 = classify(3);
    c.require_eq(static_cast<std::uint64_t>(atlas3.complement_class_count()), 14,
                 "Q3 complement classes");

    std::set<int> layered_pairs;
    for (std::size_t i = 0; i < atlas3.classes.size(); ++i)
        if (atlas3.classes[i].layered) layered_pairs.insert(atlas3.pair_id(static_cast<int>(i)));
    std::set<int> expected_pairs;
    for (const char* name : {"W1", "W3", "W7", "W8", "W12", "W14"})
        expected_pairs.insert(atlas3.pair_id(atlas3.class_of(named(name).config)));
    c.require_true(layered_pairs == expected_pairs, "layered classes are exactly W1,W3,W7,W8,W12,W14");
}

// --- criterion 7: exhaustive extremal fences ------------------------------

void c7(Check& c, int threads, bool include_n4) {
    const int n_hi = include_n4 ? 4 : 3;
    Rat prev = 2;
    for (int n = 2; n <= n_hi; ++n) {
        auto r = ex_exhaustive(named("Z3").config, n, threads);
        c.require_true(r.ex_value <= prev, "ex(Z3,2," + std::to_string(n) + ") nonincreasing");
        c.require_true(r.ex_value >= Rat(1, 2), "ex(Z3,2," + std::to_string(n) + ") >= 1/2");
        prev = r.ex_value;
    }
    for (int n = 2; n <= n_hi; ++n) {
        auto r = ex_exhaustive(named("Z2").config, n, threads);
        c.require_true(r.ex_value >= Rat(2, 3), "ex(Z2,2," + std::to_string(n) + ") >= 2/3");
    }
}

// --- criterion 8: graphlet lemma sweep ------------------------------------

void c8(Check& c, int, int max_order) {
    std::uint64_t k12_violations = 0, k22_violations = 0, graphs = 0;
    for (int n = 1; n <= max_order; ++n) {
        const std::uint32_t masks = std::uint32_t{1} << (n * (n - 1) / 2);
        for (std::uint32_t m = 0; m < masks; ++m) {
            SmallGraph g = SmallGraph::from_upper_mask(n, m);
            if (!check_k12_bound(g).ok) ++k12_violations;
            if (!check_k22_bound(g).ok) ++k22_violations;
            ++graphs;
        }
    }
    c.require_eq(k12_violations, 0, "K_{1,2} bound violations over " + std::to_string(graphs) + " graphs");
    c.require_eq(k22_violations, 0, "K_{2,2} bound violations");
    auto k33_12 = check_k12_bound(SmallGraph::complete_bipartite(3, 3));
    auto k33_22 = check_k22_bound(SmallGraph::complete_bipartite(3, 3));
    c.require_eq(k33_12.count, 18, "K_{3,3} induced K_{1,2}");
    c.require_true(Rat(k33_12.count) == k33_12.bound, "K_{3,3} meets the K_{1,2} bound");
    c.require_eq(k33_22.count, 9, "K_{3,3} induced K_{2,2}");
    c.require_true(Rat(k33_22.count) == k33_22.bound, "K_{3,3} meets the K_{2,2} bound");
}

// --- criterion 9: f optimization -------------------------------------------

void c9(Check& c, int) {
    auto r51 = maximize_f(5, 1);
    const long double argmax51 = (3.0L - std::sqrt(3.0L)) / 6.0L;
    c.require_true(std::fabs(static_cast<double>(r51.argmax - argmax51)) < 1e-9,
                   "argmax f_{5,1} ~ (3-sqrt 3)/6 (got " + fmt_ld(r51.argmax) + ")");
    c.require_true(std::fabs(static_cast<double>(r51.max_value - 5.0L / 12.0L)) < 1e-9,
                   "max f_{5,1} ~ 5/12 (got " + fmt_ld(r51.max_value) + ")");
    auto r42 = maximize_f(4, 2);
    c.require_true(std::fabs(static_cast<double>(r42.argmax - 0.5L)) < 1e-12,
                   "argmax f_{4,2} = 1/2");
    c.require_true(std::fabs(static_cast<double>(r42.max_value - 0.375L)) < 1e-12,
                   "max f_{4,2} = 3/8");

    bool criterion_ok = true;
    for (int d = 2; d <= 12; ++d)
        for (int i = 1; i < d; ++i) {
            bool at_half = std::fabs(static_cast<double>(maximize_f(d, i).argmax - 0.5L)) < 1e-9;
            if (at_half != equibipartite_criterion(d, i)) criterion_ok = false;
        }
    c.require_true(criterion_ok, "equibipartite criterion matches argmax=1/2 for all d <= 12");
}

// --- criterion 10: construction convergence --------------------------------

void c10(Check& c, int) {
    auto w2spec = *standard_construction("W2");
    Rat prev = 1;
    Rat value16;
    for (int n : {8, 12, 16}) {
        Rat v = construction_density_exact(w2spec, named("W2").config, n).fraction;
        if (n == 8) c.require_eq(v, Rat(6, 7), "W2 construction at n=8");
        c.require_true(v >= Rat(3, 4), "W2@" + std::to_string(n) + " >= 3/4");
        c.require_true(v < prev, "W2@" + std::to_string(n) + " decreasing");
        prev = v;
        if (n == 16) value16 = v;
    }
    c.require_true(value16 - Rat(3, 4) <= Rat(11, 100), "|W2@16 - 3/4| <= 0.11");

    Rat y16 = construction_density_exact(*standard_construction("Y"), named("Y").config, 16).fraction;
    Rat z16 = construction_density_exact(*standard_construction("Z"), named("Z").config, 16).fraction;
    c.require_true(abs(y16 - Rat(3, 8)) <= Rat(11, 100), "|Y@16 - 3/8| <= 0.11 (" + rat_string(y16) + ")");
    c.require_true(abs(z16 - Rat(1, 2)) <= Rat(11, 100), "|Z@16 - 1/2| <= 0.11 (" + rat_string(z16) + ")");
}

// --- criterion 11: counting identities on random pairs ----------------------

void c11(Check& c, int threads) {
    SplitMix64 rng{20260809};
    int failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng.below(3));
        const int n = d + static_cast<int>(rng.below(static_cast<std::uint64_t>(8 - d + 1)));
        CubeConfig h(d);
        for (std::uint64_t v = 0; v < h.vertex_count(); ++v)
            if (rng.next() & 1) h.set(v);
        CubeConfig s(n);
        for (std::uint64_t v = 0; v < s.vertex_count(); ++v)
            if (rng.next() & 1) s.set(v);
        if (h.empty()) h.set(rng.below(h.vertex_count()));

        auto base = count_good(h, s, threads);

        // Automorphism invariance under a random element of Aut(Q_n).
        std::array<std::uint8_t, 8> perm{};
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
        Automorphism sigma(n, std::span<const std::uint8_t>(perm.data(), static_cast<std::size_t>(n)),
                           static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n)));
        if (count_good(h, apply_automorphism(sigma, s), threads).good != base.good) ++failures;

        // Complement symmetry.
        if (count_good(h.complemented(), s.complemented(), threads).good != base.good) ++failures;

        // Subcube partition over one representative per orbit class of Q_d.
        std::uint64_t partition_sum = 0;
        for (const auto& cls : classify(d).classes)
            partition_sum += count_good(CubeConfig::from_mask64(d, cls.key), s, threads).good;
        if (partition_sum != base.total) ++failures;

        // Profile identity.
        auto profile = density_profile(h, s, threads);
        std::uint64_t sum_in = 0, sum_out = 0;
        for (const auto& row : profile)
            (row.in_s ? sum_in : sum_out) += row.good;
        if (sum_in != base.good * h.count()) ++failures;
        if (sum_out != base.good * (h.vertex_count() - h.count())) ++failures;
    }
    c.require_eq(static_cast<std::uint64_t>(failures), 0, "identity failures over 100 random pairs");
}

// --- criterion 12: search reproducibility and fences -------------------------

void c12(Check& c, int threads) {
    SearchParams params;
    params.seed = 7;
    params.restarts = 8;
    params.threads = threads;
    auto run1 = local_search(named("Z3").config, 8, params);
    c.require_true(run1.best_fraction >= Rat(16, 28),
                   "search(Z3,n=8,seed=7) >= 16/28 (got " + rat_string(run1.best_fraction) + ")");
    auto run2 = local_search(named("Z3").config, 8, params);
    c.require_true(search_json(run1, params, 8).dump() == search_json(run2, params, 8).dump(),
                   "identical rerun is byte-identical");

    SearchParams w8params;
    w8params.seed = 11;
    w8params.restarts = 2;
    w8params.init = LayeredSpec{3, {0}};
    w8params.threads = threads;
    auto init_value = count_good(named("W8").config,
                                 *generate(*w8params.init, 6, true).materialized, threads);
    auto w8run = local_search(named("W8").config, 6, w8params);
    c.require_true(w8run.best_fraction >= init_value.fraction,
                   "search(W8,n=6,layered init) >= init value " + rat_string(init_value.fraction));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(Suite suite, int threads) {
    const bool full = suite == Suite::paper;
    struct Item {
        int id;
        const char* name;
        std::function<void(Check&)> fn;
    };
    const Item items[] = {
        {1, "T-configuration count", [&](Check& c) { c1(c, threads); }},
        {2, "T local counts", [&](Check& c) { c2(c, threads); }},
        {3, "T stabilizer", [&](Check& c) { c3(c, threads); }},
        {4, "Hamming construction", [&](Check& c) { c4(c, threads); }},
        {5, "H(d,i) finite-n theorem", [&](Check& c) { c5(c, threads); }},
        {6, "classification", [&](Check& c) { c6(c, threads); }},
        {7, "exhaustive extremal fence", [&](Check& c) { c7(c, threads, full); }},
        {8, "graphlet lemma sweep", [&](Check& c) { c8(c, threads, full ? 7 : 6); }},
        {9, "f optimization", [&](Check& c) { c9(c, threads); }},
        {10, "construction convergence", [&](Check& c) { c10(c, threads); }},
        {11, "counting identities", [&](Check& c) { c11(c, threads); }},
        {12, "search reproducibility and fences", [&](Check& c) { c12(c, threads); }},
    };

    std::vector<CriterionResult> out;
    for (const auto& item : items) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            item.fn(check);
        } catch (const std::exception& e) {
            check.pass = false;
            check.actual << " exception: " << e.what();
        }
        auto stop = std::chrono::steady_clock::now();
        CriterionResult r;
        r.id = item.id;
        r.name = item.name;
        r.pass = check.pass;
        r.expected = check.expected.str();
        r.actual = check.actual.str();
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"expected", r.expected},
                       {"actual", r.actual},
                       {"millis", r.millis}});
    nlohmann::json out;
    out["criteria"] = std::move(arr);
    out["all_passed"] = all_passed(results);
    return out;
}

std::string acceptance_table(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const auto& r : results) {
        os << "[" << (r.id < 10 ? " " : "") << r.id << "/12] " << (r.pass ? "PASS" : "FAIL") << "  "
           << r.name << " (" << r.millis << " ms)\n";
        os << "        " << r.actual << "\n";
        if (!r.pass) os << "        expected: " << r.expected << "\n";
    }
    os << (all_passed(results) ? "all criteria passed\n" : "FAILURES present\n");
    return os.str();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

}  // namespace cubedensity
