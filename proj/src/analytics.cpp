#include "cubedensity/analytics.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "cubedensity/canonical.hpp"
#include "cubedensity/density.hpp"

#include <nlohmann/json.hpp>

namespace cubedensity {

const char* const kBoundsTableVersion = "paper-tables-v1";

Rat lambda_h_family(int d, int i) {
    if (!(1 <= i && i < d)) throw std::invalid_argument("lambda_h_family requires 1 <= i < d");
    BigInt num = big_binomial(d, i) * big_pow(i, static_cast<unsigned>(i)) *
                 big_pow(d - i, static_cast<unsigned>(d - i));
    return Rat(num, big_pow(d, static_cast<unsigned>(d)));
}

Rat generic_lower_bound(int d) {
    if (d < 1) throw std::invalid_argument("generic_lower_bound requires d >= 1");
    BigInt fact = 1;
    for (int k = 2; k <= d; ++k) fact *= k;
    return Rat(fact, big_pow(d, static_cast<unsigned>(d)));
}

long double f_di(int d, int i, long double x) {
    if (!(1 <= i && i < d)) throw std::invalid_argument("f_di requires 1 <= i < d");
    long double c = static_cast<long double>(binomial_u64(d, i));
    long double t1 = std::pow(x, static_cast<long double>(i)) *
                     std::pow(1 - x, static_cast<long double>(d - i));
    if (2 * i == d) return c * t1;
    long double t2 = std::pow(x, static_cast<long double>(d - i)) *
                     std::pow(1 - x, static_cast<long double>(i));
    return c * (t1 + t2);
}

namespace {

// d/dx of x^a (1-x)^b, a,b >= 1.
long double beta_term_deriv(long double x, int a, int b) {
    return std::pow(x, static_cast<long double>(a - 1)) *
           std::pow(1 - x, static_cast<long double>(b - 1)) * (a * (1 - x) - b * x);
}

long double f_di_deriv(int d, int i, long double x) {
    long double c = static_cast<long double>(binomial_u64(d, i));
    if (2 * i == d) return c * beta_term_deriv(x, i, i);
    return c * (beta_term_deriv(x, i, d - i) + beta_term_deriv(x, d - i, i));
}

}  // namespace

RealFunctionResult maximize_f(int d, int i) {
    if (!(1 <= i && i < d)) throw std::invalid_argument("maximize_f requires 1 <= i < d");
    constexpr long double kLo = 1e-9L;
    constexpr long double kHi = 0.5L;
    constexpr int kGrid = 1 << 13;

    // Interior critical points: bisect every +/- sign change of f'.
    std::vector<long double> candidates{kHi};
    long double prev_x = kLo;
    long double prev_fp = f_di_deriv(d, i, prev_x);
    for (int g = 1; g <= kGrid; ++g) {
        long double x = kLo + (kHi - kLo) * g / kGrid;
        long double fp = f_di_deriv(d, i, x);
        if (prev_fp > 0 && fp < 0) {
            long double lo = prev_x, hi = x;
            for (int it = 0; it < 200; ++it) {
                long double mid = 0.5L * (lo + hi);
                if (f_di_deriv(d, i, mid) > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            candidates.push_back(0.5L * (lo + hi));
        }
        prev_x = x;
        prev_fp = fp;
    }

    RealFunctionResult r;
    r.tolerance = 1e-15L;
    long double best = -1;
    for (long double x : candidates) {
        long double v = f_di(d, i, x);
        if (v > best) {
            best = v;
            r.argmax = x;
        }
    }
    r.max_value = best;
    return r;
}

bool equibipartite_criterion(int d, int i) {
    int ii = std::min(i, d - i);
    // ii >= (d - sqrt(d))/2  <=>  (d - 2 ii)^2 <= d when d - 2 ii >= 0.
    int t = d - 2 * ii;
    return t <= 0 || t * t <= d;
}

long double limit_h_family(int i) {
    if (i < 1) throw std::invalid_argument("limit_h_family requires i >= 1");
    return std::pow(static_cast<long double>(i), static_cast<long double>(i)) /
           (std::tgamma(static_cast<long double>(i) + 1) * std::exp(static_cast<long double>(i)));
}

RandomConstructionValue random_construction_value(int d) {
    if (d < 1 || d > 30) throw std::invalid_argument("random_construction_value requires 1 <= d <= 30");
    RandomConstructionValue r;
    long double q = static_cast<long double>((std::uint64_t{1} << d) - 1) /
                    static_cast<long double>(std::uint64_t{1} << d);
    r.value = std::pow(q, static_cast<long double>((std::uint64_t{1} << d) - 1));
    r.layered_bound = Rat(2, d + 1);
    r.random_larger = r.value > rat_to_double(r.layered_bound);
    return r;
}

Rat h_family_flip_bit_fraction(int d, int i, std::int64_t n, std::int64_t m) {
    if (!(1 <= i && i < d) || m < 0 || m > n) throw std::invalid_argument("bad flip-bit fraction arguments");
    BigInt num = big_binomial(d, i) * big_pow(m, static_cast<unsigned>(i)) *
                 big_pow(n - m, static_cast<unsigned>(d - i));
    return Rat(num, big_pow(n, static_cast<unsigned>(d)));
}

namespace {

struct NormalizedBlocks {
    std::vector<int> sizes;
    std::vector<int> moduli;
    std::vector<std::vector<int>> allowed;  // -1 wildcard
};

NormalizedBlocks normalize_blocks(const ConstructionSpec& spec, int n) {
    NormalizedBlocks nb;
    if (const auto* lay = std::get_if<LayeredSpec>(&spec)) {
        nb.sizes = {n};
        nb.moduli = {lay->modulus};
        for (int r : lay->residues)
            nb.allowed.push_back({((r % lay->modulus) + lay->modulus) % lay->modulus});
        return nb;
    }
    if (const auto* pm = std::get_if<PartitionModularSpec>(&spec)) {
        std::vector<Rat> fr;
        for (const auto& p : pm->parts) fr.push_back(p.fraction);
        nb.sizes = concrete_part_sizes(fr, n, pm->rounding);
        for (const auto& p : pm->parts) nb.moduli.push_back(p.modulus);
        nb.allowed = pm->allowed;
        return nb;
    }
    if (const auto* bu = std::get_if<BlowupSpec>(&spec)) {
        const int dbase = bu->base.dim();
        std::vector<Rat> fr = bu->fractions;
        if (fr.empty()) fr.assign(static_cast<std::size_t>(dbase), Rat(1, dbase));
        nb.sizes = concrete_part_sizes(fr, n, PartRounding::largest_remainder);
        nb.moduli.assign(static_cast<std::size_t>(dbase), 2);
        for (VertexId u : bu->base.vertices()) {
            std::vector<int> tup(static_cast<std::size_t>(dbase));
            for (int j = 0; j < dbase; ++j) tup[static_cast<std::size_t>(j)] = (u >> j) & 1;
            nb.allowed.push_back(std::move(tup));
        }
        return nb;
    }
    throw NoClosedFormError(
        "no closed form registered for this construction kind; use count_good");
}

// Binomial mass of weights congruent to r mod m among c free coordinates.
BigInt residue_weight(int c, int m, int r) {
    BigInt s = 0;
    for (int w = r % m; w <= c; w += m) s += big_binomial(c, w);
    return s;
}

bool tuple_ok(std::span<const int> tuple, std::span<const int> ws) {
    for (std::size_t j = 0; j < ws.size(); ++j)
        if (tuple[j] >= 0 && tuple[j] != ws[j]) return false;
    return true;
}

}  // namespace

ConstructionDensity construction_density_exact(const ConstructionSpec& spec, const CubeConfig& h,
                                               int n) {
    const int d = h.dim();
    if (d < 1 || d > n) throw DimensionError("construction density requires 1 <= dim(H) <= n");
    if (d > kMaxPatternDim) throw DimensionError("pattern dimension capped at 8");
    NormalizedBlocks nb = normalize_blocks(spec, n);
    const std::size_t parts = nb.sizes.size();
    const CanonicalKey target = canonical_form(h);

    // Enumerate flip counts per part (composition of d) and residues of the
    // fixed coordinates per part; each cell contributes
    // prod C(a_j, k_j) * prod massw(a_j - k_j, r_j) subcubes whose
    // restriction pattern depends only on (k, r).
    std::vector<int> ks(parts, 0);
    std::map<std::uint64_t, bool> pattern_cache;
    BigInt good = 0;

    auto pattern_good = [&](std::span<const int> kcounts, std::span<const int> rs) {
        CubeConfig patt(d);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << d); ++w) {
            std::vector<int> ws(parts);
            int off = 0;
            for (std::size_t j = 0; j < parts; ++j) {
                int kj = kcounts[j];
                std::uint64_t blk = (w >> off) & ((std::uint64_t{1} << kj) - 1);
                ws[j] = (rs[j] + popcount64(blk)) % nb.moduli[j];
                off += kj;
            }
            for (const auto& t : nb.allowed)
                if (tuple_ok(t, ws)) {
                    patt.set(w);
                    break;
                }
        }
        if (d <= 6) {
            std::uint64_t cache_key = patt.mask64();
            auto it = pattern_cache.find(cache_key);
            if (it != pattern_cache.end()) return it->second;
            bool ok = patt.count() == h.count() && canonical_form(patt) == target;
            pattern_cache.emplace(cache_key, ok);
            return ok;
        }
        return patt.count() == h.count() && canonical_form(patt) == target;
    };

    auto recurse_residues = [&](auto&& self, std::span<const int> kcounts, std::size_t j,
                                std::vector<int>& rs, BigInt mass) -> void {
        if (mass == 0) return;
        if (j == parts) {
            if (pattern_good(kcounts, rs)) {
                BigInt choose = 1;
                for (std::size_t p = 0; p < parts; ++p)
                    choose *= big_binomial(nb.sizes[p], kcounts[p]);
                good += choose * mass;
            }
            return;
        }
        for (int r = 0; r < nb.moduli[j]; ++r) {
            rs[j] = r;
            self(self, kcounts, j + 1, rs, mass * residue_weight(nb.sizes[j] - kcounts[j], nb.moduli[j], r));
        }
    };

    auto recurse_flips = [&](auto&& self, std::size_t j, int remaining) -> void {
        if (j == parts) {
            if (remaining != 0) return;
            std::vector<int> rs(parts, 0);
            recurse_residues(recurse_residues, ks, 0, rs, 1);
            return;
        }
        int cap = std::min(remaining, nb.sizes[j]);
        for (int k = 0; k <= cap; ++k) {
            ks[j] = k;
            self(self, j + 1, remaining - k);
        }
    };
    recurse_flips(recurse_flips, 0, d);

    ConstructionDensity out;
    out.good = good;
    out.total = big_binomial(n, d) * big_pow(2, static_cast<unsigned>(n - d));
    out.fraction = Rat(out.good, out.total);
    return out;
}

namespace {

std::vector<BoundsRow> build_bounds_table() {
    std::vector<BoundsRow> rows;
    auto add = [&](std::string name, std::string cons, Rat lower, Rat upper, std::string source,
                   std::string kind) {
        rows.push_back(
            {std::move(name), std::move(cons), lower, upper, std::move(source), lower == upper,
             std::move(kind)});
    };
    const Rat r13(1, 3), r23(2, 3), r12(1, 2), r34(3, 4), r49(4, 9), r38(3, 8);

    add("Z1", "empty set", 1, 1, "Q2 summary table", "q2");
    add("Z2", "layered: 0 mod 3", r23, parse_rat(".685714286"), "Q2 summary table", "q2");
    add("Z3", "A|B, 0 mod 2 in A", r12, r12, "Q2 summary table; proved", "q2");
    add("Z4", "layered: 0 mod 2", 1, 1, "Q2 summary table", "q2");

    add("W1", "empty set", 1, 1, "Q3 summary table", "q3");
    add("W2", "A|B, both parts even", r34, r34, "Q3 summary table; proved", "q3");
    add("W3", "layered: 0 mod 4", r12, parse_rat(".610043"), "Q3 summary table", "q3");
    add("W4", "A|B, 0* mod 3", Rat(8, 27), parse_rat(".3047619"), "Q3 summary table", "q3");
    add("W5", "A|B, both parts 0 or 1 mod 3", r13, parse_rat(".333398"), "Q3 summary table", "q3");
    add("W6", "A|B, 0* mod 2", r49, r49, "Q3 summary table; proved (H family)", "q3");
    add("W7", "layered: 0 mod 3", r13, parse_rat(".33333333366"), "Q3 summary table", "q3");
    add("W8", "layered: 0 mod 3", r23, parse_rat(".66666666673"), "Q3 summary table", "q3");
    add("W9", "A|B, 00,10,21,31 mod (4,2)", r49, parse_rat(".44444444453"), "Q3 summary table", "q3");
    add("W10", "blow-up of T in Q6", Rat(5, 12), parse_rat(".4166666671"), "Q3 summary table", "q3");
    add("W11", "perfect 8-cycle blow-up", r38, r38, "Q3 summary table; proved", "q3");
    add("W12", "layered: 0 and 1 mod 4", r12, parse_rat(".50000000004"), "Q3 summary table", "q3");
    add("W13", "A|B, 0* mod 2", r49, r49, "Q3 summary table; proved (H family)", "q3");
    add("W14", "layered: 0 mod 2", 1, 1, "Q3 summary table", "q3");

    add("Y", "A|B, both parts even", r38, r38, "Q4 theorems; proved", "q4");
    add("Z", "A|B, both parts even", r12, r12, "Q4 theorems; proved", "q4");
    add("C8", "blow-up of the perfect 8-cycle", Rat(3, 32), Rat(3, 32), "perfect 8-cycle result; proved",
        "q4");

    add("i(K_{1,2})", "K_{n/2,n/2}", r34, r34, "inducibility survey", "inducibility");
    add("i(K_{2,2})", "K_{n/2,n/2}", r38, r38, "inducibility survey", "inducibility");
    add("i(2K_2)", "two disjoint K_{n/4,n/4}", r38, r38, "inducibility survey", "inducibility");
    add("i(K_{1,3})", "complete bipartite, near-equal parts", r12, r12, "inducibility survey",
        "inducibility");
    add("i(K_{1,1,2})", "flag algebra", Rat(72, 125), Rat(72, 125), "inducibility survey",
        "inducibility");
    add("i(K_PAW)", "flag algebra", r38, r38, "inducibility survey", "inducibility");
    return rows;
}

}  // namespace

const std::vector<BoundsRow>& bounds_table() {
    static const std::vector<BoundsRow> rows = build_bounds_table();
    return rows;
}

nlohmann::json bounds_table_json() {
    nlohmann::json out;
    out["version"] = kBoundsTableVersion;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : bounds_table()) {
        rows.push_back({{"name", r.name},
                        {"construction", r.construction},
                        {"lower", rat_string(r.lower)},
                        {"upper", rat_string(r.upper)},
                        {"lower_value", rat_to_double(r.lower)},
                        {"upper_value", rat_to_double(r.upper)},
                        {"source", r.source},
                        {"proved", r.proved},
                        {"kind", r.kind}});
    }
    out["rows"] = std::move(rows);
    return out;
}

nlohmann::json report_json(int n) {
    nlohmann::json out;
    out["version"] = kBoundsTableVersion;
    out["n"] = n;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : bounds_table()) {
        nlohmann::json row;
        row["name"] = r.name;
        row["construction"] = r.construction;
        row["lower"] = rat_string(r.lower);
        row["upper"] = rat_string(r.upper);
        row["gap"] = rat_string(r.upper - r.lower);
        if (r.kind != "inducibility" && has_named(r.name)) {
            auto spec = standard_construction(r.name);
            if (spec) {
                auto cd = construction_density_exact(*spec, named(r.name).config, n);
                row["finite_n"] = rat_string(cd.fraction);
                row["finite_n_value"] = rat_to_double(cd.fraction);
            }
        }
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

std::string report_csv(int n) {
    std::ostringstream os;
    os << "name,construction,finite_n,lower,upper,gap\n";
    for (const auto& r : bounds_table()) {
        std::string finite;
        if (r.kind != "inducibility" && has_named(r.name)) {
            auto spec = standard_construction(r.name);
            if (spec)
                finite = rat_string(construction_density_exact(*spec, named(r.name).config, n).fraction);
        }
        os << r.name << ",\"" << r.construction << "\"," << finite << "," << rat_string(r.lower)
           << "," << rat_string(r.upper) << "," << rat_string(r.upper - r.lower) << "\n";
    }
    return os.str();
}

}  // namespace cubedensity
