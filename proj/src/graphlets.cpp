#include "cubedensity/graphlets.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <stdexcept>

#include "cubedensity/bits.hpp"

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

// Bit index of pair (i,j), i < j < k, in row-major upper-triangle order.
constexpr int pair_bit(int i, int j, int k) {
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

void check_host(const SmallGraph& g) {
    if (g.order < 0 || g.order > 64) throw std::invalid_argument("host order must be <= 64");
}

}  // namespace

int SmallGraph::degree(int v) const { return popcount64(adj[static_cast<std::size_t>(v)]); }

std::uint64_t SmallGraph::edge_count() const {
    std::uint64_t s = 0;
    for (int v = 0; v < order; ++v) s += static_cast<std::uint64_t>(degree(v));
    return s / 2;
}

SmallGraph SmallGraph::complemented() const {
    SmallGraph g(order);
    const std::uint64_t all = order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1;
    for (int v = 0; v < order; ++v)
        g.adj[static_cast<std::size_t>(v)] =
            (~adj[static_cast<std::size_t>(v)] & all) & ~(std::uint64_t{1} << v);
    return g;
}

SmallGraph SmallGraph::complete(int n) {
    SmallGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

SmallGraph SmallGraph::complete_bipartite(int r, int s) {
    SmallGraph g(r + s);
    for (int u = 0; u < r; ++u)
        for (int v = r; v < r + s; ++v) g.add_edge(u, v);
    return g;
}

SmallGraph SmallGraph::complete_tripartite(int x, int y, int z) {
    SmallGraph g(x + y + z);
    auto part = [&](int v) { return v < x ? 0 : v < x + y ? 1 : 2; };
    for (int u = 0; u < g.order; ++u)
        for (int v = u + 1; v < g.order; ++v)
            if (part(u) != part(v)) g.add_edge(u, v);
    return g;
}

SmallGraph SmallGraph::path(int n) {
    SmallGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

SmallGraph SmallGraph::disjoint_union(const SmallGraph& a, const SmallGraph& b) {
    SmallGraph g(a.order + b.order);
    for (int u = 0; u < a.order; ++u)
        for (int v = u + 1; v < a.order; ++v)
            if (a.has_edge(u, v)) g.add_edge(u, v);
    for (int u = 0; u < b.order; ++u)
        for (int v = u + 1; v < b.order; ++v)
            if (b.has_edge(u, v)) g.add_edge(a.order + u, a.order + v);
    return g;
}

SmallGraph SmallGraph::from_upper_mask(int n, std::uint32_t mask) {
    SmallGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((mask >> pair_bit(i, j, n)) & 1) g.add_edge(i, j);
    return g;
}

SmallGraph SmallGraph::random_gnp_half(int n, std::uint64_t seed) {
    SmallGraph g(n);
    SplitMix64 rng{seed};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next() & 1) g.add_edge(i, j);
    return g;
}

namespace patterns {

SmallGraph k12() {
    SmallGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    return g;
}

SmallGraph k22() { return SmallGraph::complete_bipartite(2, 2); }

SmallGraph two_k2() {
    SmallGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    return g;
}

SmallGraph k13() { return SmallGraph::complete_bipartite(1, 3); }

SmallGraph edge_plus_isolated() {
    SmallGraph g(3);
    g.add_edge(0, 1);
    return g;
}

}  // namespace patterns

const std::vector<std::uint16_t>& graph_canon_table(int k) {
    if (k < 1 || k > 5) throw std::invalid_argument("graph canon table supports 1 <= k <= 5");
    static std::array<std::vector<std::uint16_t>, 6> cache;
    static std::array<std::once_flag, 6> flags;
    std::call_once(flags[static_cast<std::size_t>(k)], [k] {
        const int nbits = k * (k - 1) / 2;
        const std::uint32_t nmasks = std::uint32_t{1} << nbits;
        std::array<int, 5> perm{};
        std::vector<std::uint16_t> table(nmasks);
        for (std::uint32_t m = 0; m < nmasks; ++m) table[m] = static_cast<std::uint16_t>(m);
        for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
        // For each permutation, image[m] under relabeling; keep the minimum.
        do {
            std::array<int, 10> bitmap{};
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>(j)];
                    if (a > b) std::swap(a, b);
                    bitmap[static_cast<std::size_t>(pair_bit(i, j, k))] = pair_bit(a, b, k);
                }
            for (std::uint32_t m = 0; m < nmasks; ++m) {
                std::uint32_t im = 0;
                for (int b = 0; b < nbits; ++b)
                    if ((m >> b) & 1) im |= std::uint32_t{1} << bitmap[static_cast<std::size_t>(b)];
                if (im < table[m]) table[m] = static_cast<std::uint16_t>(im);
            }
        } while (std::next_permutation(perm.begin(), perm.begin() + k));
        cache[static_cast<std::size_t>(k)] = std::move(table);
    });
    return cache[static_cast<std::size_t>(k)];
}

std::uint64_t count_induced(const SmallGraph& pattern, const SmallGraph& host) {
    const int k = pattern.order;
    if (k < 1 || k > 5) throw std::invalid_argument("pattern order must be in [1,5]");
    check_host(host);
    const int n = host.order;
    if (n < k) return 0;

    const auto& canon = graph_canon_table(k);
    std::uint32_t pmask = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (pattern.has_edge(i, j)) pmask |= std::uint32_t{1} << pair_bit(i, j, k);
    const std::uint16_t target = canon[pmask];

    std::uint64_t count = 0;
    std::array<int, 5> c{};
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    for (;;) {
        std::uint32_t m = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (host.has_edge(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]))
                    m |= std::uint32_t{1} << pair_bit(i, j, k);
        count += canon[m] == target;

        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return count;
}

BoundCheck check_k12_bound(const SmallGraph& host) {
    check_host(host);
    const std::int64_t n = host.order;
    const std::int64_t e = static_cast<std::int64_t>(host.edge_count());
    BoundCheck r;
    r.count = count_induced(patterns::k12(), host);
    r.odd_variant = n % 2 != 0;
    Rat term1 = Rat(n * n / 4) * Rat(n - 2, 2);  // floor(n^2/4) (n-2)/2
    Rat term2 = Rat(e) * Rat(n - 2, 2);
    r.bound = std::min(term1, term2);
    r.ok = Rat(r.count) <= r.bound;
    return r;
}

BoundCheck check_k22_bound(const SmallGraph& host) {
    check_host(host);
    const std::int64_t n = host.order;
    const std::int64_t e = static_cast<std::int64_t>(host.edge_count());
    BoundCheck r;
    r.count = count_induced(patterns::k22(), host);
    r.odd_variant = n % 2 != 0;
    Rat term1 = Rat(big_binomial(n / 2, 2) * big_binomial((n + 1) / 2, 2));
    Rat term2 = Rat(BigInt(e) * ((n - 2) * (n - 2) / 4), 4);
    r.bound = std::min(term1, term2);
    r.ok = Rat(r.count) <= r.bound;
    return r;
}

std::uint64_t tripartite_k12_count(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    auto c2 = [](std::uint64_t a) { return a * (a - 1) / 2; };
    return x * c2(y) + x * c2(z) + y * c2(x) + y * c2(z) + z * c2(x) + z * c2(y);
}

std::uint64_t tripartite_k22_count(std::uint64_t x, std::uint64_t y, std::uint64_t z) {
    auto c2 = [](std::uint64_t a) { return a * (a - 1) / 2; };
    return c2(x) * c2(y) + c2(x) * c2(z) + c2(y) * c2(z);
}

SmallGraph graph_from_edge_list_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SmallGraph g(j.at("order").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

}  // namespace cubedensity
