#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubedensity/canonical.hpp"
#include "cubedensity/constructions.hpp"
#include "oracle.hpp"

#include <nlohmann/json.hpp>

using namespace cubedensity;

TEST_CASE("exact copy examples from Q3") {
    // {emptyset,12} vs {2,123}: copy; vs {2,13}: vertices distance 3 apart.
    CubeConfig h = CubeConfig::from_vertices(3, {0, 3});
    CHECK(is_exact_copy(h, CubeConfig::from_vertices(3, {2, 7})));
    CHECK_FALSE(is_exact_copy(h, CubeConfig::from_vertices(3, {2, 5})));
    CHECK(is_exact_copy(h, h));
}

TEST_CASE("canonical form is constant on orbits and distinct across them") {
    SplitMix64 rng{3};
    for (int trial = 0; trial < 40; ++trial) {
        int d = 2 + static_cast<int>(rng.below(3));
        CubeConfig h(d);
        for (VertexId v = 0; v < h.vertex_count(); ++v)
            if (rng.next() & 1) h.set(v);
        CubeConfig k(d);
        for (VertexId v = 0; v < k.vertex_count(); ++v)
            if (rng.next() & 1) k.set(v);
        CHECK(is_exact_copy(h, k) == oracle::naive_is_exact_copy(h, k));

        std::array<std::uint8_t, 8> p{};
        for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
        for (int i = d - 1; i > 0; --i)
            std::swap(p[static_cast<std::size_t>(i)],
                      p[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
        Automorphism a(d, std::span<const std::uint8_t>(p.data(), static_cast<std::size_t>(d)),
                       static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << d)));
        CHECK(canonical_form(h) == canonical_form(apply_automorphism(a, h)));
    }
}

TEST_CASE("canonical form in dimension five matches the oracle relation") {
    SplitMix64 rng{5};
    for (int trial = 0; trial < 8; ++trial) {
        CubeConfig h(5), k(5);
        for (VertexId v = 0; v < 32; ++v) {
            if (rng.next() & 1) h.set(v);
            if (rng.next() & 1) k.set(v);
        }
        CHECK(is_exact_copy(h, k) == oracle::naive_is_exact_copy(h, k));
        for_each_automorphism(5, [&](const Automorphism& a) {
            if (a.translate() == 7)  // spot check a slice of the group
                CHECK(canonical_form(apply_automorphism(a, h)) == canonical_form(h));
        });
    }
}

TEST_CASE("direct minimization agrees with the table sweep for every Q3 mask") {
    const auto& table = class_table(3);
    for (std::uint32_t m = 0; m < 256; ++m)
        CHECK(canonical_form(CubeConfig::from_mask64(3, m)).low() == table[m]);
}

TEST_CASE("the two copies from the introduction share a key") {
    CHECK(canonical_form(CubeConfig::from_vertices(3, {0, 3})) ==
          canonical_form(CubeConfig::from_vertices(3, {2, 7})));
}

TEST_CASE("empty configuration canonical key is zero") {
    auto key = canonical_form(CubeConfig(3));
    CHECK(key.low() == 0);
    CHECK(key.hex() == "0x0");
}

TEST_CASE("dimension seven: even and odd weight sets are copies") {
    CubeConfig even(7);
    for (VertexId v = 0; v < 128; ++v)
        if (weight(v) % 2 == 0) even.set(v);
    CHECK(canonical_form(even) == canonical_form(even.complemented()));
    CHECK(is_exact_copy(even, even.complemented()));
}

TEST_CASE("every weight-2 triple shares the W8 key") {
    auto w8key = canonical_form(named("W8").config);
    for (VertexId a = 0; a < 8; ++a)
        for (VertexId b = a + 1; b < 8; ++b)
            for (VertexId c = b + 1; c < 8; ++c) {
                if (weight(a) == 2 && weight(b) == 2 && weight(c) == 2)
                    CHECK(canonical_form(CubeConfig::from_vertices(3, {a, b, c})) == w8key);
            }
}

TEST_CASE("classification counts") {
    auto atlas1 = classify(1);
    CHECK(atlas1.classes.size() == 3);
    CHECK(atlas1.complement_class_count() == 2);

    auto atlas2 = classify(2);
    CHECK(atlas2.classes.size() == 6);
    CHECK(atlas2.complement_class_count() == 4);

    auto atlas3 = classify(3);
    CHECK(atlas3.classes.size() == 22);
    CHECK(atlas3.complement_class_count() == 14);

    std::uint64_t mass = 0;
    for (const auto& cls : atlas3.classes) mass += cls.orbit_size;
    CHECK(mass == 256);

    // complement pairing is an involution
    for (std::size_t i = 0; i < atlas3.classes.size(); ++i) {
        int j = atlas3.classes[i].complement_class;
        CHECK(atlas3.classes[static_cast<std::size_t>(j)].complement_class == static_cast<int>(i));
    }
}

TEST_CASE("layered flags for Q3 match the named list") {
    auto atlas = classify(3);
    std::set<int> layered_pairs;
    for (std::size_t i = 0; i < atlas.classes.size(); ++i)
        if (atlas.classes[i].layered) layered_pairs.insert(atlas.pair_id(static_cast<int>(i)));
    std::set<int> expected;
    for (const char* nm : {"W1", "W3", "W7", "W8", "W12", "W14"})
        expected.insert(atlas.pair_id(atlas.class_of(named(nm).config)));
    CHECK(layered_pairs == expected);
}

TEST_CASE("distance multisets of the small side of each Q3 complement pair") {
    auto atlas = classify(3);
    std::set<std::vector<int>> small_side;
    int pairs_with_small_side = 0;
    for (std::size_t i = 0; i < atlas.classes.size(); ++i) {
        int j = atlas.classes[i].complement_class;
        if (static_cast<int>(i) > j) continue;
        const auto& a = atlas.classes[i];
        const auto& b = atlas.classes[static_cast<std::size_t>(j)];
        const auto& small = popcount64(a.key) <= popcount64(b.key) ? a : b;
        if (popcount64(small.key) <= 3) {
            ++pairs_with_small_side;
            small_side.insert(small.distances);
        }
    }
    CHECK(pairs_with_small_side == 8);
    std::set<std::vector<int>> expected = {{},        {1},        {2},      {3},
                                           {1, 1, 2}, {2, 2, 2},  {1, 2, 3}};
    CHECK(small_side == expected);  // the empty multiset covers both W1 and W3
}

TEST_CASE("layered weight sets") {
    CubeConfig h = CubeConfig::from_vertices(
        4, {vertex_from_bitstring("1001"), vertex_from_bitstring("1110"),
            vertex_from_bitstring("0010"), vertex_from_bitstring("0100"),
            vertex_from_bitstring("0111")});
    auto w = layered_weights(h);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<int>{1, 4});

    CHECK_FALSE(layered_weights(named("W11").config).has_value());
    auto full = layered_weights(CubeConfig::full(3));
    REQUIRE(full.has_value());
    CHECK(*full == std::vector<int>{0, 1, 2, 3});

    auto w7 = layered_weights(named("W7").config);
    REQUIRE(w7.has_value());
    CHECK(*w7 == std::vector<int>{0, 3});
    auto w12 = layered_weights(named("W12").config);
    REQUIRE(w12.has_value());
    CHECK(*w12 == std::vector<int>{0, 1});
}

TEST_CASE("trivial layered configurations") {
    CHECK(is_trivial_layered(named("W14").config));
    CHECK(is_trivial_layered(CubeConfig(3)));
    CHECK(is_trivial_layered(CubeConfig::full(4)));
    CHECK_FALSE(is_trivial_layered(named("W8").config));
    CHECK_FALSE(is_trivial_layered(named("W7").config));
}

TEST_CASE("exact copy is an equivalence relation on random triples") {
    SplitMix64 rng{11};
    for (int trial = 0; trial < 30; ++trial) {
        int d = 2 + static_cast<int>(rng.below(2));
        auto rand_cfg = [&] {
            CubeConfig c(d);
            for (VertexId v = 0; v < c.vertex_count(); ++v)
                if (rng.next() & 1) c.set(v);
            return c;
        };
        CubeConfig a = rand_cfg(), b = rand_cfg(), c = rand_cfg();
        CHECK(is_exact_copy(a, a));
        CHECK(is_exact_copy(a, b) == is_exact_copy(b, a));
        if (is_exact_copy(a, b) && is_exact_copy(b, c)) CHECK(is_exact_copy(a, c));
    }
}

TEST_CASE("classification is capped at d <= 4") {
    CHECK_THROWS_AS((void)classify(5), DimensionError);
}

TEST_CASE("atlas json shape") {
    auto j = atlas_json(classify(2));
    CHECK(j["dim"] == 2);
    CHECK(j["orbit_count"] == 6);
    CHECK(j["complement_class_count"] == 4);
    CHECK(j["classes"].size() == 6);
    CHECK(j["classes"][0].contains("key_hex"));
    CHECK(j["classes"][0].contains("distances"));
}

// Exploration path, excluded from the default suite; run with --no-skip.
TEST_CASE("classify(4) smoke" * doctest::skip()) {
    auto atlas = classify(4);
    std::uint64_t mass = 0;
    for (const auto& cls : atlas.classes) mass += cls.orbit_size;
    CHECK(mass == std::uint64_t{1} << 16);
    for (std::size_t i = 0; i < atlas.classes.size(); ++i) {
        int j = atlas.classes[i].complement_class;
        CHECK(atlas.classes[static_cast<std::size_t>(j)].complement_class == static_cast<int>(i));
    }
}
