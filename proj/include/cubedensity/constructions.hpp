#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cubedensity/cube.hpp"
#include "cubedensity/rational.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

// S = { v : wt(v) mod modulus in residues }; empty residues denotes the
// empty configuration.
struct LayeredSpec {
    int modulus = 1;
    std::vector<int> residues;
};

enum class PartRounding {
    largest_remainder,
    floor_first,  // first part gets floor(fraction * n), e.g. |A| = floor(2n/3)
};

struct PmPart {
    Rat fraction;
    int modulus = 1;
};

// S = { v : the tuple of per-part weights mod m_j matches an allowed tuple };
// -1 in a tuple entry is a wildcard. Parts occupy contiguous coordinate
// ranges in order.
struct PartitionModularSpec {
    std::vector<PmPart> parts;
    std::vector<std::vector<int>> allowed;
    PartRounding rounding = PartRounding::largest_remainder;
};

// Per-part parity collapse onto a base configuration in Q_d; empty
// fractions means equipartition.
struct BlowupSpec {
    CubeConfig base;
    std::vector<Rat> fractions;
};

// Independent Bernoulli(p) membership, pure in (seed, vertex).
struct RandomSpec {
    Rat p;
    std::uint64_t seed = 0;
};

struct ExplicitSpec {
    CubeConfig config;
};

struct NamedSpec {
    std::string name;
};

using ConstructionSpec =
    std::variant<LayeredSpec, PartitionModularSpec, BlowupSpec, RandomSpec, ExplicitSpec, NamedSpec>;

struct Construction {
    int n = 0;
    std::function<bool(VertexId)> member;
    std::optional<CubeConfig> materialized;
    std::vector<int> part_sizes;  // layered/partition-modular/blowup only
    std::string describe;
};

std::vector<int> concrete_part_sizes(std::span<const Rat> fractions, int n, PartRounding rounding);

// Membership predicate for S in Q_n; materializes the bitvector when
// requested (n <= 24).
Construction generate(const ConstructionSpec& spec, int n, bool materialize = false);

struct NamedConfig {
    std::string name;
    CubeConfig config;
    std::string provenance;
};

// Registry: Z1..Z4, W1..W14, Y, Z, C8, T, U1..U8, hamming7.
const NamedConfig& named(const std::string& name);
bool has_named(const std::string& name);
std::vector<std::string> named_names();

// The standard lower-bound construction attached to a registry entry, when
// one exists (the summary-table column).
std::optional<ConstructionSpec> standard_construction(const std::string& name);

// H(d,i) = { v : v_1 + ... + v_i even }, 1 <= i < d.
CubeConfig family_h(int d, int i);
// E(d,i) = { v : v_1+...+v_i and v_{i+1}+...+v_d both even }, 1 <= i < d.
CubeConfig family_e(int d, int i);
// The 16 codewords of the [7,4] Hamming code: 0, seven cyclic shifts of
// {1,2,4}, and their complements.
CubeConfig hamming_code_q7();
// Induced 2d-cycle with d antipodal pairs: prefix-ones vectors and their
// complements.
CubeConfig perfect_cycle(int d);

ConstructionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ConstructionSpec& spec);
nlohmann::json config_to_json(const CubeConfig& c);
CubeConfig config_from_json(const nlohmann::json& j);

}  // namespace cubedensity
