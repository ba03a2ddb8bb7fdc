#include "cubedensity/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cubedensity/density.hpp"

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

// Subcube vertex tables for a tiny ambient cube: one entry per subcube,
// global vertex per local index.
struct SubcubeTables {
    int n = 0, d = 0;
    std::vector<std::array<std::uint16_t, 16>> verts;
    std::vector<std::uint64_t> flip;
    std::vector<std::uint64_t> base;
};

SubcubeTables subcube_tables(int n, int d) {
    SubcubeTables t;
    t.n = n;
    t.d = d;
    for_each_subcube(n, d, [&](const Subcube& r) {
        std::array<std::uint16_t, 16> row{};
        for (std::uint64_t u = 0; u < (std::uint64_t{1} << d); ++u)
            row[u] = static_cast<std::uint16_t>(r.vertex(u));
        t.verts.push_back(row);
        t.flip.push_back(r.flip_mask);
        t.base.push_back(r.base);
    });
    return t;
}

std::uint64_t good_count_for_mask(std::uint32_t s_mask, const SubcubeTables& t,
                                  const std::vector<std::uint16_t>& table, std::uint16_t target,
                                  int d) {
    std::uint64_t good = 0;
    const std::uint64_t locals = std::uint64_t{1} << d;
    for (const auto& row : t.verts) {
        std::uint32_t rm = 0;
        for (std::uint64_t u = 0; u < locals; ++u) rm |= ((s_mask >> row[u]) & 1u) << u;
        good += table[rm] == target;
    }
    return good;
}

}  // namespace

ExactExtremalResult ex_exhaustive(const CubeConfig& h, int n, int threads) {
    const int d = h.dim();
    if (n > 4) throw DimensionError("exhaustive extremal search supports n <= 4");
    if (d < 1 || d > n) throw DimensionError("ex_exhaustive requires 1 <= dim(H) <= n");

    const auto& table = class_table(d);
    const std::uint16_t target = table[h.mask64()];
    const auto tables = subcube_tables(n, d);
    const std::uint64_t total = subcube_count(n, d);
    const std::uint32_t n_masks = std::uint32_t{1} << (std::uint32_t{1} << n);

    // n <= 3: one representative per orbit; g is automorphism invariant.
    const std::vector<std::uint16_t>* s_canon = n <= 3 ? &class_table(n) : nullptr;

    std::uint64_t best = 0;
    std::vector<std::uint32_t> arg;
    for (std::uint32_t m = 0; m < n_masks; ++m) {
        if (s_canon && (*s_canon)[m] != m) continue;
        std::uint64_t g = good_count_for_mask(m, tables, table, target, d);
        if (g > best) {
            best = g;
            arg.clear();
        }
        if (g == best) arg.push_back(m);
    }
    (void)threads;

    ExactExtremalResult r;
    r.h_key = canonical_form(h);
    r.d = d;
    r.n = n;
    r.best_good = best;
    r.total = total;
    r.ex_value = Rat(best, total);

    // Witnesses up to Aut(Q_n), lexicographically smallest keys first.
    std::vector<std::uint32_t> keys;
    const auto& canon_n = class_table(n);
    keys.reserve(arg.size());
    for (std::uint32_t m : arg) keys.push_back(canon_n[m]);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.size() > 16) keys.resize(16);
    for (std::uint32_t k : keys) r.witnesses.push_back(CubeConfig::from_mask64(n, k));
    return r;
}

std::vector<MonotonicityRow> monotonicity_report(const CubeConfig& h, int n_max) {
    const int d = h.dim();
    if (n_max > 4) throw DimensionError("monotonicity report capped at n <= 4");
    std::vector<MonotonicityRow> rows;
    Rat prev;
    for (int n = d; n <= n_max; ++n) {
        auto res = ex_exhaustive(h, n);
        MonotonicityRow row;
        row.n = n;
        row.ex_value = res.ex_value;
        if (n > d) {
            // Each facet restriction of a witness is a Q_{n-1} configuration
            // whose density is at most ex(H,d,n-1).
            for (const auto& witness : res.witnesses) {
                for (int c = 0; c < n; ++c) {
                    for (int bit = 0; bit < 2; ++bit) {
                        std::uint64_t all = (std::uint64_t{1} << n) - 1;
                        Subcube facet{n, all ^ (std::uint64_t{1} << c),
                                      static_cast<std::uint64_t>(bit) << c};
                        auto facet_density = count_good(h, restrict_to(witness, facet), 1);
                        if (facet_density.fraction > prev) row.averaging_ok = false;
                    }
                }
            }
        }
        prev = row.ex_value;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

struct RestartOutcome {
    CubeConfig best;
    std::uint64_t best_good = 0;
    std::vector<TrajectoryPoint> trajectory;  // local step indices
};

struct FlipTables {
    std::vector<std::uint64_t> masks;
    std::vector<std::array<std::uint64_t, 8>> spread;  // d <= 3 covers all uses; sized by 1<<d
    int d = 0;
};

}  // namespace

SearchResult local_search(const CubeConfig& h, int n, const SearchParams& params) {
    const int d = h.dim();
    if (d < 1 || d > n || n > kMaxProfileAmbient)
        throw DimensionError("local search requires 1 <= dim(H) <= n <= 20");
    if (d > 4) throw DimensionError("local search uses the d <= 4 classification table");
    CostEstimate est = exact_cost(n, d);
    if (est.subcubes > kMaxExactSubcubes)
        throw FeasibilityError("local search infeasible at this (d,n)", est);

    const auto& table = class_table(d);
    const std::uint16_t target = table[h.mask64()];
    const std::uint64_t n_verts = std::uint64_t{1} << n;
    const std::uint64_t total = subcube_count(n, d);
    const auto masks = flip_masks(n, d);
    const std::uint64_t locals = std::uint64_t{1} << d;

    std::vector<std::vector<std::uint64_t>> spreads(masks.size(),
                                                    std::vector<std::uint64_t>(locals));
    for (std::size_t mi = 0; mi < masks.size(); ++mi) {
        std::array<int, 30> pos{};
        int j = 0;
        std::uint64_t m = masks[mi];
        while (m) {
            pos[j++] = std::countr_zero(m);
            m &= m - 1;
        }
        spreads[mi][0] = 0;
        for (std::uint64_t u = 1; u < locals; ++u) {
            std::uint64_t low = u & (0 - u);
            spreads[mi][u] = spreads[mi][u ^ low] | (std::uint64_t{1} << pos[std::countr_zero(low)]);
        }
    }

    // Default length: 2000 sweeps, enough for the 0.995 cooling to freeze
    // from t0 = 5% of the subcube count.
    const std::uint64_t steps =
        params.max_steps > 0 ? params.max_steps : std::uint64_t{2000} << n;
    const std::uint64_t sweep = n_verts;

    std::optional<CubeConfig> init_config;
    if (params.init) {
        auto cons = generate(*params.init, n, true);
        init_config = *cons.materialized;
    }

    auto count_all = [&](const CubeConfig& s) {
        std::uint64_t good = 0;
        for (std::size_t mi = 0; mi < masks.size(); ++mi) {
            std::uint64_t b = 0;
            const std::uint64_t n_bases = std::uint64_t{1} << (n - d);
            for (std::uint64_t bi = 0; bi < n_bases; ++bi) {
                std::uint32_t rm = 0;
                for (std::uint64_t u = 0; u < locals; ++u)
                    rm |= static_cast<std::uint32_t>(s.test(b | spreads[mi][u])) << u;
                good += table[rm] == target;
                b = next_base(b, masks[mi]);
            }
        }
        return good;
    };

    // Seeds derived from the master seed by counter; restarts merge in
    // restart order so threading cannot change the outcome.
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(params.restarts));
    {
        SplitMix64 seeder{params.seed};
        for (auto& s : seeds) s = seeder.next();
    }

    auto run_restart = [&](std::uint64_t seed) {
        SplitMix64 rng{seed};
        CubeConfig s = init_config ? *init_config : CubeConfig(n);
        if (!init_config)
            for (std::uint64_t v = 0; v < n_verts; ++v)
                if (rng.next() & 1) s.set(v);

        std::uint64_t good = count_all(s);
        RestartOutcome out;
        out.best = s;
        out.best_good = good;
        out.trajectory.push_back({0, Rat(good, total)});

        double temperature = params.schedule.t0_fraction * static_cast<double>(total);
        for (std::uint64_t step = 0; step < steps; ++step) {
            const std::uint64_t v = rng.below(n_verts);
            std::int64_t delta = 0;
            for (std::size_t mi = 0; mi < masks.size(); ++mi) {
                const std::uint64_t fm = masks[mi];
                const std::uint64_t b = v & ~fm;
                std::uint32_t rm = 0;
                for (std::uint64_t u = 0; u < locals; ++u)
                    rm |= static_cast<std::uint32_t>(s.test(b | spreads[mi][u])) << u;
                const std::uint32_t lv = static_cast<std::uint32_t>(extract_bits(v, fm));
                delta += static_cast<std::int64_t>(table[rm ^ (1u << lv)] == target) -
                         static_cast<std::int64_t>(table[rm] == target);
            }
            bool accept = delta >= 0;
            if (!accept && temperature > 1e-12) {
                accept = rng.next_unit() <
                         std::exp(static_cast<double>(delta) / temperature);
            } else if (!accept) {
                rng.next_unit();  // keep the stream aligned regardless of T
            }
            if (accept) {
                s.flip(v);
                good = static_cast<std::uint64_t>(static_cast<std::int64_t>(good) + delta);
                if (good > out.best_good) {
                    out.best_good = good;
                    out.best = s;
                    out.trajectory.push_back({step + 1, Rat(good, total)});
                }
            }
            if ((step + 1) % sweep == 0) temperature *= params.schedule.cooling;
        }
        return out;
    };

    std::vector<RestartOutcome> outcomes(seeds.size());
    int workers = params.threads > 0 ? params.threads : thread_limit();
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(seeds.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) outcomes[i] = run_restart(seeds[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= seeds.size()) break;
                    outcomes[i] = run_restart(seeds[i]);
                }
            });
        for (auto& th : pool) th.join();
    }

    SearchResult result;
    result.seed = params.seed;
    result.restarts = params.restarts;
    result.steps_per_restart = steps;
    result.total = total;
    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (outcomes[i].best_good > outcomes[best_idx].best_good) best_idx = i;
    result.best_config = outcomes[best_idx].best;
    result.best_good = outcomes[best_idx].best_good;
    result.best_fraction = Rat(result.best_good, total);
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        for (const auto& p : outcomes[i].trajectory)
            result.trajectory.push_back({i * steps + p.step, p.fraction});

    // Recomputation check: the reported fraction must reproduce from scratch.
    auto verify = count_good(h, result.best_config, 1);
    if (verify.good != result.best_good)
        throw std::logic_error("local_search incremental count diverged from full recount");
    return result;
}

nlohmann::json extremal_json(const ExactExtremalResult& r) {
    nlohmann::json j;
    j["pattern_key"] = r.h_key.hex();
    j["d"] = r.d;
    j["n"] = r.n;
    j["good"] = r.best_good;
    j["total"] = r.total;
    j["ex"] = fraction_json(r.ex_value);
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : r.witnesses) ws.push_back(config_to_json(w));
    j["witnesses"] = std::move(ws);
    return j;
}

nlohmann::json search_json(const SearchResult& r, const SearchParams& params, int n) {
    nlohmann::json j;
    j["n"] = n;
    j["best"] = config_to_json(r.best_config);
    j["good"] = r.best_good;
    j["total"] = r.total;
    j["best_fraction"] = fraction_json(r.best_fraction);
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& p : r.trajectory)
        traj.push_back({{"step", p.step}, {"fraction", rat_string(p.fraction)}});
    j["trajectory"] = std::move(traj);
    j["params"] = {{"seed", r.seed},
                   {"restarts", r.restarts},
                   {"steps_per_restart", r.steps_per_restart},
                   {"t0_fraction", params.schedule.t0_fraction},
                   {"cooling", params.schedule.cooling},
                   {"init", params.init ? spec_to_json(*params.init) : nlohmann::json("random")}};
    return j;
}

}  // namespace cubedensity
