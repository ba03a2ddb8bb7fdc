// Naive reference implementations used as independent oracles. These take
// the slow route on purpose: exact-copy by scanning the whole group with
// set images, counting by materializing every subcube, induced-subgraph
// counting by trying all k! bijections.
#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cubedensity/cube.hpp"
#include "cubedensity/graphlets.hpp"

namespace oracle {

using cubedensity::Automorphism;
using cubedensity::CubeConfig;
using cubedensity::SmallGraph;
using cubedensity::Subcube;
using cubedensity::VertexId;

inline std::set<VertexId> vertex_set(const CubeConfig& c) {
    auto v = c.vertices();
    return {v.begin(), v.end()};
}

inline std::set<std::set<VertexId>> orbit_of(const CubeConfig& h) {
    std::set<std::set<VertexId>> out;
    cubedensity::for_each_automorphism(h.dim(), [&](const Automorphism& a) {
        std::set<VertexId> image;
        for (VertexId v : h.vertices()) image.insert(a(v));
        out.insert(std::move(image));
    });
    return out;
}

inline bool naive_is_exact_copy(const CubeConfig& h, const CubeConfig& k) {
    return orbit_of(h).count(vertex_set(k)) != 0;
}

inline std::pair<std::uint64_t, std::uint64_t> naive_count_good(const CubeConfig& h,
                                                                const CubeConfig& s) {
    auto horbit = orbit_of(h);
    std::uint64_t good = 0, total = 0;
    cubedensity::for_each_subcube(s.dim(), h.dim(), [&](const Subcube& r) {
        ++total;
        good += horbit.count(vertex_set(cubedensity::restrict_to(s, r)));
    });
    return {good, total};
}

inline bool naive_graph_isomorphic(const SmallGraph& a, const SmallGraph& b) {
    if (a.order != b.order) return false;
    std::vector<int> perm(static_cast<std::size_t>(a.order));
    for (int i = 0; i < a.order; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        bool ok = true;
        for (int u = 0; u < a.order && ok; ++u)
            for (int v = u + 1; v < a.order && ok; ++v)
                ok = a.has_edge(u, v) ==
                     b.has_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::uint64_t naive_count_induced(const SmallGraph& pattern, const SmallGraph& host) {
    const int k = pattern.order;
    const int n = host.order;
    if (n < k) return 0;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::uint64_t count = 0;
    for (;;) {
        SmallGraph sub(k);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (host.has_edge(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]))
                    sub.add_edge(i, j);
        count += naive_graph_isomorphic(pattern, sub);

        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return count;
}

}  // namespace oracle
