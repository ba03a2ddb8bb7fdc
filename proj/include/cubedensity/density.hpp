#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubedensity/cube.hpp"
#include "cubedensity/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

inline constexpr int kMaxExactAmbient = 24;
inline constexpr std::uint64_t kMaxExactSubcubes = std::uint64_t{1} << 36;
inline constexpr int kMaxProfileAmbient = 20;

struct CostEstimate {
    std::uint64_t subcubes = 0;
    std::uint64_t membership_tests = 0;
};

CostEstimate exact_cost(int n, int d);

struct FeasibilityError : std::runtime_error {
    FeasibilityError(const std::string& msg, CostEstimate est)
        : std::runtime_error(msg), estimate(est) {}
    CostEstimate estimate;
};

struct SampledInfo {
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;
    double standard_error = 0.0;
};

struct DensityResult {
    int pattern_dim = 0;
    int ambient_dim = 0;
    std::uint64_t good = 0;
    std::uint64_t total = 0;  // C(n,d) 2^(n-d) in exact mode, sample size otherwise
    Rat fraction;
    bool sampled = false;
    SampledInfo sample;
};

struct LocalDensityResult {
    VertexId vertex = 0;
    bool in_s = false;
    std::uint64_t good = 0;
    std::uint64_t total = 0;  // C(n,d)
    Rat fraction;
};

// Worker cap used by the parallel counting loops; 0 restores the hardware
// default. Results are identical for any setting.
void set_thread_limit(int threads);
int thread_limit();

// G(H,d,n,S) over all sub-d-cubes of Q_n, exact.
DensityResult count_good(const CubeConfig& h, const CubeConfig& s, int threads = 0);

// Monte Carlo estimate of g over uniformly drawn subcubes, for ambient
// dimensions where exact mode is infeasible; n <= 64.
DensityResult count_good_sampled(const CubeConfig& h, const std::function<bool(VertexId)>& s_member,
                                 int n, std::uint64_t sample_size, std::uint64_t seed);

// Gamma(v): good subcubes among the C(n,d) containing v.
LocalDensityResult local_count(const CubeConfig& h, const CubeConfig& s, VertexId v);

// One entry per vertex of Q_n, n <= 20. Satisfies
// sum_{v in S} Gamma(v) = G |H| and sum_{v not in S} Gamma(v) = G (2^d - |H|).
std::vector<LocalDensityResult> density_profile(const CubeConfig& h, const CubeConfig& s,
                                                int threads = 0);

nlohmann::json density_json(const DensityResult& r);
nlohmann::json local_density_json(const LocalDensityResult& r, int ambient_dim);
nlohmann::json fraction_json(const Rat& r);

}  // namespace cubedensity
