#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubedensity/constructions.hpp"
#include "cubedensity/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

// lambda(H(d,i), d) = C(d,i) i^i (d-i)^(d-i) / d^d.
Rat lambda_h_family(int d, int i);

// d! / d^d, the blow-up bound valid for every configuration in Q_d.
Rat generic_lower_bound(int d);

// f_{d,i}(x): fraction of d-subsets of a bipartition (xn, (1-x)n) inducing
// K_{i,d-i}. One flip-split term when i = d-i, two otherwise.
long double f_di(int d, int i, long double x);

struct RealFunctionResult {
    long double argmax = 0;
    long double max_value = 0;
    long double tolerance = 0;
};

// Maximum of f_{d,i} over (0, 1/2]: derivative bisection at interior sign
// changes plus the boundary critical point 1/2. Equals i(K_{i,d-i}) except
// for i = d-i = 1.
RealFunctionResult maximize_f(int d, int i);

// Whether the maximum sits exactly at x = 1/2: min(i, d-i) >= (d - sqrt(d))/2.
bool equibipartite_criterion(int d, int i);

// lim_d lambda(H(d,i), d) = i^i / (i! e^i).
long double limit_h_family(int i);

struct RandomConstructionValue {
    long double value = 0;       // ((2^d-1)/2^d)^(2^d-1)
    Rat layered_bound;           // 2/(d+1)
    bool random_larger = false;
};
RandomConstructionValue random_construction_value(int d);

// The §-style flip-bit fraction C(d,i) m^i (n-m)^{d-i} / n^d for the
// H-family construction; exactly lambda_h_family(d,i) whenever d | n and
// m = i n / d. This is the i.i.d.-coordinate form, not the subcube count.
Rat h_family_flip_bit_fraction(int d, int i, std::int64_t n, std::int64_t m);

struct NoClosedFormError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConstructionDensity {
    BigInt good;
    BigInt total;
    Rat fraction;
};

// Exact good-subcube count for layered / partition-modular / blow-up
// constructions by block decomposition: flips per part times weighted
// residue classes of the fixed coordinates. Agrees with count_good wherever
// both are feasible. Other spec kinds raise NoClosedFormError.
ConstructionDensity construction_density_exact(const ConstructionSpec& spec, const CubeConfig& h,
                                               int n);

struct BoundsRow {
    std::string name;
    std::string construction;
    Rat lower;
    Rat upper;
    std::string source;
    bool proved = false;  // lower == upper
    std::string kind;     // "q2", "q3", "q4", "inducibility"
};

extern const char* const kBoundsTableVersion;
const std::vector<BoundsRow>& bounds_table();
nlohmann::json bounds_table_json();

// Per-row report at finite n: name, construction, value at n, lower, upper,
// gap. Rows without a standard construction carry only the bounds.
nlohmann::json report_json(int n);
std::string report_csv(int n);

}  // namespace cubedensity
