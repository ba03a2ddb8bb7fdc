#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubedensity/canonical.hpp"
#include "cubedensity/constructions.hpp"
#include "cubedensity/cube.hpp"
#include "cubedensity/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

struct ExactExtremalResult {
    CanonicalKey h_key;
    int d = 0;
    int n = 0;
    std::uint64_t best_good = 0;
    std::uint64_t total = 0;
    Rat ex_value;
    std::vector<CubeConfig> witnesses;  // canonical representatives, at most 16
};

// ex(H,d,n) = max over all S in Q_n of g(H,d,n,S), exhaustively; n <= 4.
// n <= 3 scans one representative per Aut(Q_n)-orbit of S; n = 4 scans all
// 2^16 subsets through the d <= 4 classification table.
ExactExtremalResult ex_exhaustive(const CubeConfig& h, int n, int threads = 0);

struct MonotonicityRow {
    int n = 0;
    Rat ex_value;
    bool averaging_ok = true;  // every facet restriction of a witness is <= ex(n-1)
};

// ex(H,d,n) for n = d .. n_max with the facet averaging cross-check.
std::vector<MonotonicityRow> monotonicity_report(const CubeConfig& h, int n_max);

struct AnnealSchedule {
    double t0_fraction = 0.05;  // of the total subcube count
    double cooling = 0.995;     // per sweep of 2^n proposals
};

struct SearchParams {
    std::uint64_t seed = 0;
    int restarts = 1;
    std::uint64_t max_steps = 0;  // proposals per restart; 0 = 2000 * 2^n
    AnnealSchedule schedule;
    std::optional<ConstructionSpec> init;  // nullopt = random half-density start
    int threads = 0;
};

struct TrajectoryPoint {
    std::uint64_t step = 0;  // global proposal index across restarts
    Rat fraction;
};

struct SearchResult {
    CubeConfig best_config;
    std::uint64_t best_good = 0;
    std::uint64_t total = 0;
    Rat best_fraction;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t seed = 0;
    int restarts = 0;
    std::uint64_t steps_per_restart = 0;
};

// Simulated-annealing single-vertex-flip search; never worse than its
// initialization, reproducible for fixed (seed, params) at any thread count.
SearchResult local_search(const CubeConfig& h, int n, const SearchParams& params);

nlohmann::json extremal_json(const ExactExtremalResult& r);
nlohmann::json search_json(const SearchResult& r, const SearchParams& params, int n);

}  // namespace cubedensity
