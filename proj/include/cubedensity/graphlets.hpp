#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubedensity/rational.hpp"

namespace cubedensity {

// Simple graph on at most 64 labeled vertices, adjacency rows as bitmasks.
struct SmallGraph {
    int order = 0;
    std::vector<std::uint64_t> adj;

    explicit SmallGraph(int n = 0) : order(n), adj(static_cast<std::size_t>(n), 0) {}

    void add_edge(int u, int v) {
        adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
        adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
    bool has_edge(int u, int v) const {
        return (adj[static_cast<std::size_t>(u)] >> v) & 1;
    }
    int degree(int v) const;
    std::uint64_t edge_count() const;
    SmallGraph complemented() const;

    static SmallGraph empty(int n) { return SmallGraph(n); }
    static SmallGraph complete(int n);
    static SmallGraph complete_bipartite(int r, int s);
    static SmallGraph complete_tripartite(int x, int y, int z);
    static SmallGraph path(int n);
    static SmallGraph disjoint_union(const SmallGraph& a, const SmallGraph& b);
    static SmallGraph from_upper_mask(int n, std::uint32_t mask);  // C(n,2) <= 32 bits
    static SmallGraph random_gnp_half(int n, std::uint64_t seed);  // G(n, 1/2)
};

namespace patterns {
SmallGraph k12();                // star with two leaves
SmallGraph k22();                // 4-cycle
SmallGraph two_k2();             // two disjoint edges
SmallGraph k13();                // claw
SmallGraph edge_plus_isolated(); // single edge on three vertices
}  // namespace patterns

// Canonical labeled-edge-mask table for graphs on k vertices, k <= 5:
// entry m holds the minimum mask over all S_k relabelings.
const std::vector<std::uint16_t>& graph_canon_table(int k);

// Number of vertex subsets of the host inducing a graph isomorphic to the
// pattern; pattern order <= 5, host order <= 64.
std::uint64_t count_induced(const SmallGraph& pattern, const SmallGraph& host);

struct BoundCheck {
    std::uint64_t count = 0;
    Rat bound;
    bool ok = false;
    bool odd_variant = false;  // host order odd: floor(n^2/4)-style part sizes
};

// count(K_{1,2}) <= min{ floor(n^2/4)(n-2)/2, e(n-2)/2 }.
BoundCheck check_k12_bound(const SmallGraph& host);
// count(K_{2,2}) <= min{ C(floor(n/2),2) C(ceil(n/2),2), e floor((n-2)^2/4) / 4 }.
BoundCheck check_k22_bound(const SmallGraph& host);

// Induced K_{1,2} count in the complete tripartite graph on parts x,y,z.
std::uint64_t tripartite_k12_count(std::uint64_t x, std::uint64_t y, std::uint64_t z);
// Induced K_{2,2} count in the same graph.
std::uint64_t tripartite_k22_count(std::uint64_t x, std::uint64_t y, std::uint64_t z);

SmallGraph graph_from_edge_list_json(const std::string& text);

}  // namespace cubedensity
