#include "cubedensity/density.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_set>

#include "cubedensity/canonical.hpp"

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

std::atomic<int> g_thread_limit{0};

int effective_threads(int requested) {
    int t = requested > 0 ? requested : g_thread_limit.load();
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, t);
}

// Classifies restrictions against one pattern: table lookup for d <= 4,
// orbit hash set for d = 5,6, canonical form with a popcount prefilter
// above that.
class GoodTester {
  public:
    explicit GoodTester(const CubeConfig& h) : d_(h.dim()), hcount_(h.count()) {
        if (d_ <= 4) {
            table_ = &class_table(d_);
            target_mask_ = (*table_)[h.mask64()];
        } else if (d_ <= 6) {
            orbit_.reserve(automorphism_count(d_));
            const auto verts = h.vertices();
            for_each_automorphism(d_, [&](const Automorphism& a) {
                std::uint64_t im = 0;
                for (VertexId v : verts) im |= std::uint64_t{1} << a(v);
                orbit_.insert(im);
            });
        } else {
            key_ = canonical_form(h);
        }
    }

    int dim() const { return d_; }
    bool mask_path() const { return d_ <= 6; }

    bool good_mask(std::uint64_t restriction) const {
        if (d_ <= 4) return (*table_)[restriction] == target_mask_;
        return orbit_.contains(restriction);
    }

    bool good_config(const CubeConfig& restriction) const {
        if (restriction.count() != hcount_) return false;
        return canonical_form(restriction) == key_;
    }

  private:
    int d_;
    std::uint64_t hcount_;
    const std::vector<std::uint16_t>* table_ = nullptr;
    std::uint16_t target_mask_ = 0;
    std::unordered_set<std::uint64_t> orbit_;
    CanonicalKey key_{};
};

// Spread table: local vertex -> global offset within the subcube, for one
// flip mask. spread[u] built incrementally from the flip-bit positions.
void build_spread(std::uint64_t fm, int d, std::vector<std::uint64_t>& spread) {
    std::array<int, 30> pos{};
    int j = 0;
    std::uint64_t m = fm;
    while (m) {
        pos[j++] = std::countr_zero(m);
        m &= m - 1;
    }
    spread[0] = 0;
    for (std::uint64_t u = 1; u < (std::uint64_t{1} << d); ++u) {
        std::uint64_t low = u & (0 - u);
        spread[u] = spread[u ^ low] | (std::uint64_t{1} << pos[std::countr_zero(low)]);
    }
}

std::uint64_t restriction_mask(const CubeConfig& s, std::uint64_t base,
                               std::span<const std::uint64_t> spread) {
    std::uint64_t rm = 0;
    for (std::uint64_t u = 0; u < spread.size(); ++u)
        if (s.test(base | spread[u])) rm |= std::uint64_t{1} << u;
    return rm;
}

// Runs fn(chunk_begin, chunk_end) over [0, n_items) split across workers;
// partial results land in chunk order.
template <class T, class Fn>
std::vector<T> run_chunked(std::uint64_t n_items, int threads, Fn&& fn) {
    threads = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n_items, 1));
    std::vector<T> partials(static_cast<std::size_t>(threads));
    if (threads == 1) {
        partials[0] = fn(0, n_items);
        return partials;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = (n_items + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
        std::uint64_t hi = std::min(n_items, lo + chunk);
        pool.emplace_back([&, t, lo, hi] { partials[static_cast<std::size_t>(t)] = fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
    return partials;
}

void check_exact_feasible(int n, int d) {
    CostEstimate est = exact_cost(n, d);
    if (n > kMaxExactAmbient || est.subcubes > kMaxExactSubcubes)
        throw FeasibilityError(
            "exact mode infeasible: n=" + std::to_string(n) + " would stream " +
                std::to_string(est.subcubes) + " subcubes (" +
                std::to_string(est.membership_tests) + " membership tests); use sampled mode",
            est);
}

}  // namespace

CostEstimate exact_cost(int n, int d) {
    CostEstimate est;
    est.subcubes = n <= 64 ? subcube_count(n, d) : ~std::uint64_t{0};
    est.membership_tests = est.subcubes << d;
    return est;
}

void set_thread_limit(int threads) { g_thread_limit.store(threads); }
int thread_limit() { return g_thread_limit.load(); }

DensityResult count_good(const CubeConfig& h, const CubeConfig& s, int threads) {
    const int d = h.dim();
    const int n = s.dim();
    if (d < 1 || d > n) throw DimensionError("count_good requires 1 <= dim(H) <= dim(S)");
    check_exact_feasible(n, d);

    GoodTester tester(h);
    const auto masks = flip_masks(n, d);
    const std::uint64_t n_bases = std::uint64_t{1} << (n - d);

    auto partials = run_chunked<std::uint64_t>(
        masks.size(), effective_threads(threads), [&](std::uint64_t lo, std::uint64_t hi) {
            std::uint64_t good = 0;
            std::vector<std::uint64_t> spread(std::uint64_t{1} << d);
            for (std::uint64_t mi = lo; mi < hi; ++mi) {
                const std::uint64_t fm = masks[mi];
                build_spread(fm, d, spread);
                std::uint64_t b = 0;
                for (std::uint64_t bi = 0; bi < n_bases; ++bi) {
                    if (tester.mask_path()) {
                        good += tester.good_mask(restriction_mask(s, b, spread));
                    } else {
                        good += tester.good_config(restrict_to(s, Subcube{n, fm, b}));
                    }
                    b = next_base(b, fm);
                }
            }
            return good;
        });

    DensityResult r;
    r.pattern_dim = d;
    r.ambient_dim = n;
    r.total = subcube_count(n, d);
    for (std::uint64_t p : partials) r.good += p;
    r.fraction = Rat(r.good, r.total);
    return r;
}

DensityResult count_good_sampled(const CubeConfig& h, const std::function<bool(VertexId)>& s_member,
                                 int n, std::uint64_t sample_size, std::uint64_t seed) {
    const int d = h.dim();
    if (d < 1 || d > n || n > 64) throw DimensionError("sampled mode requires 1 <= dim(H) <= n <= 64");
    if (sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");

    GoodTester tester(h);
    SplitMix64 rng{seed};
    const std::uint64_t ambient_all =
        n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    std::uint64_t good = 0;
    std::vector<std::uint64_t> spread(std::uint64_t{1} << d);
    for (std::uint64_t i = 0; i < sample_size; ++i) {
        // Floyd's sampler: d distinct flip coordinates, uniform over C(n,d).
        std::uint64_t fm = 0;
        for (int j = n - d; j < n; ++j) {
            std::uint64_t t = rng.below(static_cast<std::uint64_t>(j) + 1);
            if ((fm >> t) & 1)
                fm |= std::uint64_t{1} << j;
            else
                fm |= std::uint64_t{1} << t;
        }
        std::uint64_t base = rng.next() & ambient_all & ~fm;
        build_spread(fm, d, spread);
        if (tester.mask_path()) {
            std::uint64_t rm = 0;
            for (std::uint64_t u = 0; u < spread.size(); ++u)
                if (s_member(base | spread[u])) rm |= std::uint64_t{1} << u;
            good += tester.good_mask(rm);
        } else {
            CubeConfig restriction(d);
            for (std::uint64_t u = 0; u < spread.size(); ++u)
                if (s_member(base | spread[u])) restriction.set(u);
            good += tester.good_config(restriction);
        }
    }

    DensityResult r;
    r.pattern_dim = d;
    r.ambient_dim = n;
    r.good = good;
    r.total = sample_size;
    r.fraction = Rat(good, sample_size);
    r.sampled = true;
    double p = static_cast<double>(good) / static_cast<double>(sample_size);
    r.sample = {sample_size, seed,
                std::sqrt(p * (1.0 - p) / static_cast<double>(sample_size))};
    return r;
}

LocalDensityResult local_count(const CubeConfig& h, const CubeConfig& s, VertexId v) {
    const int d = h.dim();
    const int n = s.dim();
    if (d < 1 || d > n) throw DimensionError("local_count requires 1 <= dim(H) <= dim(S)");
    check_exact_feasible(n, d);

    GoodTester tester(h);
    std::uint64_t good = 0;
    std::vector<std::uint64_t> spread(std::uint64_t{1} << d);
    for (std::uint64_t fm : flip_masks(n, d)) {
        const std::uint64_t base = v & ~fm;
        build_spread(fm, d, spread);
        if (tester.mask_path()) {
            good += tester.good_mask(restriction_mask(s, base, spread));
        } else {
            good += tester.good_config(restrict_to(s, Subcube{n, fm, base}));
        }
    }

    LocalDensityResult r;
    r.vertex = v;
    r.in_s = s.test(v);
    r.good = good;
    r.total = binomial_u64(n, d);
    r.fraction = Rat(r.good, r.total);
    return r;
}

std::vector<LocalDensityResult> density_profile(const CubeConfig& h, const CubeConfig& s,
                                                int threads) {
    const int d = h.dim();
    const int n = s.dim();
    if (d < 1 || d > n) throw DimensionError("density_profile requires 1 <= dim(H) <= dim(S)");
    if (n > kMaxProfileAmbient)
        throw FeasibilityError("density profile capped at n <= 20", exact_cost(n, d));

    GoodTester tester(h);
    const auto masks = flip_masks(n, d);
    const std::uint64_t n_bases = std::uint64_t{1} << (n - d);
    const std::uint64_t n_verts = std::uint64_t{1} << n;

    auto partials = run_chunked<std::vector<std::uint32_t>>(
        masks.size(), effective_threads(threads), [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::uint32_t> gamma(n_verts, 0);
            std::vector<std::uint64_t> spread(std::uint64_t{1} << d);
            for (std::uint64_t mi = lo; mi < hi; ++mi) {
                const std::uint64_t fm = masks[mi];
                build_spread(fm, d, spread);
                std::uint64_t b = 0;
                for (std::uint64_t bi = 0; bi < n_bases; ++bi) {
                    bool good = tester.mask_path()
                                    ? tester.good_mask(restriction_mask(s, b, spread))
                                    : tester.good_config(restrict_to(s, Subcube{n, fm, b}));
                    if (good)
                        for (std::uint64_t u = 0; u < spread.size(); ++u) ++gamma[b | spread[u]];
                    b = next_base(b, fm);
                }
            }
            return gamma;
        });

    std::vector<std::uint64_t> gamma(n_verts, 0);
    for (const auto& part : partials)
        for (std::uint64_t v = 0; v < n_verts; ++v) gamma[v] += part[v];

    const std::uint64_t per_vertex_total = binomial_u64(n, d);
    std::vector<LocalDensityResult> out(n_verts);
    for (std::uint64_t v = 0; v < n_verts; ++v) {
        out[v].vertex = v;
        out[v].in_s = s.test(v);
        out[v].good = gamma[v];
        out[v].total = per_vertex_total;
        out[v].fraction = Rat(gamma[v], per_vertex_total);
    }
    return out;
}

nlohmann::json fraction_json(const Rat& r) {
    nlohmann::json j;
    j["num"] = numerator(r).str();
    j["den"] = denominator(r).str();
    j["value"] = rat_to_double(r);
    return j;
}

nlohmann::json density_json(const DensityResult& r) {
    nlohmann::json j;
    j["pattern_dim"] = r.pattern_dim;
    j["ambient_dim"] = r.ambient_dim;
    j["good"] = r.good;
    j["total"] = r.total;
    j["fraction"] = fraction_json(r.fraction);
    if (r.sampled) {
        j["mode"] = {{"kind", "sampled"},
                     {"sample_size", r.sample.sample_size},
                     {"seed", r.sample.seed},
                     {"standard_error", r.sample.standard_error}};
    } else {
        j["mode"] = {{"kind", "exact"}};
    }
    return j;
}

nlohmann::json local_density_json(const LocalDensityResult& r, int ambient_dim) {
    nlohmann::json j;
    j["vertex"] = r.vertex;
    j["vertex_bits"] = vertex_to_bitstring(r.vertex, ambient_dim);
    j["in_s"] = r.in_s;
    j["good"] = r.good;
    j["total"] = r.total;
    j["fraction"] = fraction_json(r.fraction);
    return j;
}

}  // namespace cubedensity
