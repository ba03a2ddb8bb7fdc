#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubedensity/cube.hpp"

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

// Lexicographically minimal membership bitvector over the orbit of a
// configuration under Aut(Q_d); equal keys <=> exact copies.
struct CanonicalKey {
    int dim = 0;
    std::array<std::uint64_t, 4> words{};  // word i covers vertices [64i, 64i+64)

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend std::strong_ordering operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
        if (auto c = a.dim <=> b.dim; c != 0) return c;
        for (int i = 3; i >= 0; --i)
            if (auto c = a.words[i] <=> b.words[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    std::uint64_t low() const { return words[0]; }
    std::string hex() const;
    CubeConfig config() const;
};

// d <= 4 minimizes over the full group; 5 <= d <= 8 minimizes over
// member-normalized translates times all coordinate permutations (a proper
// canonical form on orbits, cheaper by a factor 2^d / |H|).
CanonicalKey canonical_form(const CubeConfig& h);

bool is_exact_copy(const CubeConfig& h, const CubeConfig& k);

// For d <= 4: table mapping every membership mask of Q_d to the minimal
// mask in its orbit. Built once per dimension, shared, thread-safe.
const std::vector<std::uint16_t>& class_table(int d);

// Weight set of a canonically layered exact copy, or nullopt. Scans XOR
// translates ascending; a permutation factor never changes whether an image
// is weight-determined, so translates suffice.
std::optional<std::vector<int>> layered_weights(const CubeConfig& h);

// Exact copy of emptyset, V_d, the even-weight set, or the odd-weight set.
// These four sets are each fixed setwise or mapped among themselves by every
// automorphism, so the test is direct set equality.
bool is_trivial_layered(const CubeConfig& h);

struct OrbitClass {
    std::uint64_t key = 0;  // canonical mask, fits 16 bits for d <= 4
    std::uint64_t orbit_size = 0;
    int complement_class = -1;
    std::optional<std::vector<int>> layered;
    bool trivial = false;
    std::vector<int> distances;  // sorted pairwise Hamming distances of the representative
};

struct OrbitAtlas {
    int dim = 0;
    std::vector<OrbitClass> classes;

    int class_of_mask(std::uint64_t mask) const;
    int class_of(const CubeConfig& h) const;
    // Unordered {orbit, complement-orbit} pairs.
    int complement_class_count() const;
    // min(class, complement_class): one id per complement pair.
    int pair_id(int class_index) const;
};

// Exhaustive orbit classification of all 2^(2^d) configurations, d <= 4.
OrbitAtlas classify(int d);

nlohmann::json atlas_json(const OrbitAtlas& atlas);

}  // namespace cubedensity
