#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>
#include <vector>

#include "cubedensity/cube.hpp"

using namespace cubedensity;

TEST_CASE("weight is popcount") {
    CHECK(weight(0b0000) == 0);
    CHECK(weight(vertex_from_bitstring("1010")) == 2);  // the vertex "13"
    CHECK(weight(0b1111) == 4);
}

TEST_CASE("bitstring round trip uses x_1 = leftmost char = bit 0") {
    CHECK(vertex_from_bitstring("1010") == 0b0101);
    CHECK(vertex_to_bitstring(0b0101, 4) == "1010");
    CHECK(vertex_from_bitstring("0001") == 8);
}

TEST_CASE("apply_automorphism identity and translate") {
    CubeConfig h = CubeConfig::from_vertices(3, {0, 3});  // {emptyset, 12}
    CHECK(apply_automorphism(Automorphism::identity(3), h) == h);

    // XOR by 010 maps {000,110} to {010,100}.
    Automorphism t(3, Automorphism::identity(3).perm(), 0b010);
    auto image = apply_automorphism(t, h);
    CHECK(image == CubeConfig::from_vertices(3, {2, 1}));
    // distance multiset preserved
    auto verts = image.vertices();
    CHECK(weight(verts[0] ^ verts[1]) == 2);
}

TEST_CASE("coordinate flips two and three, the layered example in Q4") {
    CubeConfig h = CubeConfig::from_vertices(
        4, {vertex_from_bitstring("1001"), vertex_from_bitstring("1110"),
            vertex_from_bitstring("0010"), vertex_from_bitstring("0100"),
            vertex_from_bitstring("0111")});
    Automorphism flip23(4, Automorphism::identity(4).perm(), 0b0110);
    CubeConfig expect = CubeConfig::from_vertices(
        4, {vertex_from_bitstring("1111"), vertex_from_bitstring("1000"),
            vertex_from_bitstring("0100"), vertex_from_bitstring("0010"),
            vertex_from_bitstring("0001")});
    CHECK(apply_automorphism(flip23, h) == expect);
}

TEST_CASE("automorphism counts") {
    std::uint64_t c1 = 0, c2 = 0;
    for_each_automorphism(1, [&](const Automorphism&) { ++c1; });
    for_each_automorphism(2, [&](const Automorphism&) { ++c2; });
    CHECK(c1 == 2);
    CHECK(c2 == 8);
    CHECK(automorphism_count(6) == 46080);
    std::uint64_t c6 = 0;
    for_each_automorphism(6, [&](const Automorphism&) { ++c6; });
    CHECK(c6 == 46080);
}

TEST_CASE("enumeration yields distinct automorphisms that preserve adjacency") {
    std::set<std::vector<std::uint8_t>> seen;
    bool adjacency_ok = true;
    for_each_automorphism(3, [&](const Automorphism& a) {
        seen.insert(a.vertex_map());
        for (VertexId u = 0; u < 8; ++u)
            for (int b = 0; b < 3; ++b) {
                VertexId v = u ^ (VertexId{1} << b);
                if (weight(a(u) ^ a(v)) != 1) adjacency_ok = false;
            }
    });
    CHECK(seen.size() == 48);
    CHECK(adjacency_ok);
}

TEST_CASE("group laws") {
    SplitMix64 rng{42};
    auto random_auto = [&](int d) {
        std::array<std::uint8_t, 8> p{};
        for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        for (int i = d - 1; i > 0; --i)
            std::swap(p[static_cast<std::size_t>(i)],
                      p[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
        return Automorphism(d, std::span<const std::uint8_t>(p.data(), static_cast<std::size_t>(d)),
                            static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << d)));
    };
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2 + static_cast<int>(rng.below(3));
        Automorphism a = random_auto(d), b = random_auto(d);
        CubeConfig h(d);
        for (VertexId v = 0; v < h.vertex_count(); ++v)
            if (rng.next() & 1) h.set(v);

        CHECK(apply_automorphism(a, apply_automorphism(b, h)) ==
              apply_automorphism(compose(a, b), h));
        CHECK(apply_automorphism(a.inverse(), apply_automorphism(a, h)) == h);
    }
}

TEST_CASE("subcube counts") {
    CHECK(subcube_count(3, 2) == 6);
    CHECK(subcube_count(6, 3) == 160);
    CHECK(subcube_count(7, 3) == 560);
    std::uint64_t seen = 0;
    std::set<std::pair<std::uint64_t, std::uint64_t>> distinct;
    for_each_subcube(5, 2, [&](const Subcube& r) {
        ++seen;
        CHECK(r.valid());
        CHECK(r.dim() == 2);
        distinct.insert({r.flip_mask, r.base});
    });
    CHECK(seen == subcube_count(5, 2));
    CHECK(distinct.size() == seen);
}

TEST_CASE("restrict: full set restricts to full set") {
    CubeConfig full = CubeConfig::full(3);
    for_each_subcube(3, 2, [&](const Subcube& r) {
        CHECK(restrict_to(full, r) == CubeConfig::full(2));
    });
}

TEST_CASE("restrict cardinality equals members inside the subcube") {
    SplitMix64 rng{7};
    CubeConfig s(5);
    for (VertexId v = 0; v < 32; ++v)
        if (rng.next() & 1) s.set(v);
    for_each_subcube(5, 3, [&](const Subcube& r) {
        std::uint64_t inside = 0;
        for (std::uint64_t u = 0; u < 8; ++u) inside += s.test(r.vertex(u));
        CHECK(restrict_to(s, r).count() == inside);
    });
}

TEST_CASE("complement involution") {
    SplitMix64 rng{9};
    for (int trial = 0; trial < 20; ++trial) {
        CubeConfig h(4);
        for (VertexId v = 0; v < 16; ++v)
            if (rng.next() & 1) h.set(v);
        CHECK(h.complemented().complemented() == h);
    }
}
