#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cubedensity/canonical.hpp"
#include "cubedensity/constructions.hpp"
#include "cubedensity/density.hpp"

#include <nlohmann/json.hpp>

using namespace cubedensity;

TEST_CASE("layered even-weight set at n=5 has 16 members") {
    auto cons = generate(LayeredSpec{2, {0}}, 5, true);
    CHECK(cons.materialized->count() == 16);
    for (VertexId v = 0; v < 32; ++v) CHECK(cons.member(v) == (weight(v) % 2 == 0));
}

TEST_CASE("even-in-A partition construction at n=6 has 32 members") {
    PartitionModularSpec spec;
    spec.parts = {{Rat(1, 2), 2}, {Rat(1, 2), 2}};
    spec.allowed = {{0, -1}};
    auto cons = generate(spec, 6, true);
    CHECK(cons.part_sizes == std::vector<int>{3, 3});
    CHECK(cons.materialized->count() == 32);
}

TEST_CASE("blow-up of the diagonal pair at n=4") {
    auto cons = generate(BlowupSpec{named("Z4").config, {}}, 4, true);
    CHECK(*cons.materialized ==
          CubeConfig::from_vertices(4, {0, 3, 5, 6, 9, 10, 12, 15}));
}

TEST_CASE("blow-up of T with singleton parts reproduces T") {
    auto cons = generate(BlowupSpec{named("T").config, {}}, 6, true);
    CHECK(*cons.materialized == named("T").config);
}

TEST_CASE("part size rounding") {
    std::vector<Rat> halves{Rat(1, 2), Rat(1, 2)};
    CHECK(concrete_part_sizes(halves, 7, PartRounding::largest_remainder) ==
          std::vector<int>{4, 3});
    std::vector<Rat> thirds{Rat(2, 3), Rat(1, 3)};
    CHECK(concrete_part_sizes(thirds, 7, PartRounding::floor_first) == std::vector<int>{4, 3});
    CHECK(concrete_part_sizes(thirds, 8, PartRounding::floor_first) == std::vector<int>{5, 3});
}

TEST_CASE("predicate and materialized form agree") {
    auto spec = *standard_construction("W9");
    auto cons = generate(spec, 7, true);
    for (VertexId v = 0; v < 128; ++v) CHECK(cons.member(v) == cons.materialized->test(v));
}

TEST_CASE("named registry resolves the figure representatives") {
    CHECK(named("W8").config == CubeConfig::from_vertices(3, {3, 5, 6}));
    CHECK(named("Y").config == CubeConfig::from_vertices(4, {0, 3, 12, 15}));
    CHECK(named("Z").config == CubeConfig::from_vertices(4, {0, 3, 5, 6}));
    CHECK(named("T").config.count() == 24);
    CHECK_THROWS_AS((void)named("W99"), std::invalid_argument);
}

TEST_CASE("H family identifications") {
    CHECK(is_exact_copy(family_h(2, 1), named("Z3").config));
    CHECK(family_h(3, 1) == named("W6").config);
    CHECK(family_h(3, 2) == named("W13").config);
}

TEST_CASE("H family structure: self-complementary, inside degree d-i") {
    for (auto [d, i] : {std::pair{3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 2}, {6, 3}}) {
        CubeConfig h = family_h(d, i);
        CHECK(h.count() == (std::uint64_t{1} << (d - 1)));
        CHECK(is_exact_copy(h, h.complemented()));
        for (VertexId v : h.vertices()) {
            int inside = 0;
            for (int b = 0; b < d; ++b) inside += h.test(v ^ (VertexId{1} << b));
            CHECK(inside == d - i);
        }
    }
}

TEST_CASE("E family identifications and symmetry") {
    CHECK(is_exact_copy(family_e(3, 1), named("W2").config));
    CHECK(family_e(4, 2) == named("Y").config);
    CHECK(is_exact_copy(family_e(4, 1), named("Z").config));
    for (auto [d, i] : {std::pair{3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 2}}) {
        CHECK(family_e(d, i).count() == (std::uint64_t{1} << (d - 2)));
        CHECK(is_exact_copy(family_e(d, i), family_e(d, d - i)));
    }
}

TEST_CASE("Hamming code properties") {
    auto code = hamming_code_q7();
    CHECK(code.count() == 16);
    auto verts = code.vertices();
    int pairs3 = 0, min_dist = 7;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            int dist = weight(verts[i] ^ verts[j]);
            min_dist = std::min(min_dist, dist);
            pairs3 += dist == 3;
        }
    CHECK(min_dist == 3);
    CHECK(pairs3 == 56);
}

TEST_CASE("perfect cycles") {
    auto c4 = perfect_cycle(4);
    CHECK(c4 == CubeConfig::from_vertices(4, {0, 1, 3, 7, 15, 14, 12, 8}));
    // induced cycle with antipodal pairs, in cyclic order
    std::vector<VertexId> order{0, 1, 3, 7, 15, 14, 12, 8};
    for (int k = 0; k < 8; ++k) {
        CHECK(weight(order[k] ^ order[(k + 1) % 8]) == 1);
        CHECK(weight(order[k] ^ order[(k + 4) % 8]) == 4);
    }
    CHECK(perfect_cycle(2) == CubeConfig::full(2));

    // The 6-cycle in Q3 is layered (weights {1,2}; its complement is an
    // antipodal pair).
    auto w = layered_weights(perfect_cycle(3));
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<int>{1, 2});
    CHECK_FALSE(layered_weights(perfect_cycle(4)).has_value());
}

TEST_CASE("registry cross-checks recorded in the table") {
    CHECK(count_good(named("W10").config, named("T").config).good == 120);
    CHECK(*layered_weights(named("W7").config) == std::vector<int>{0, 3});
    CHECK(*layered_weights(named("W12").config) == std::vector<int>{0, 1});
}

TEST_CASE("blow-up guarantee: one flip bit per part restricts to a copy of the base") {
    SplitMix64 rng{31};
    for (const char* base_name : {"Z4", "W10", "Y"}) {
        CubeConfig base = named(base_name).config;
        const int d = base.dim();
        const int n = 2 * d + 1;
        auto cons = generate(BlowupSpec{base, {}}, n, true);
        auto sizes = cons.part_sizes;
        for (int trial = 0; trial < 20; ++trial) {
            std::uint64_t fm = 0;
            int off = 0;
            for (int j = 0; j < d; ++j) {
                fm |= std::uint64_t{1}
                      << (off + static_cast<int>(rng.below(static_cast<std::uint64_t>(sizes[j]))));
                off += sizes[j];
            }
            std::uint64_t base_bits = rng.next() & ((std::uint64_t{1} << n) - 1) & ~fm;
            auto rest = restrict_to(*cons.materialized, Subcube{n, fm, base_bits});
            CHECK(is_exact_copy(rest, base));
        }
    }
}

TEST_CASE("random spec is pure and respects its probability roughly") {
    RandomSpec spec{Rat(1, 8), 12345};
    auto cons = generate(spec, 18);
    std::uint64_t members = 0;
    for (VertexId v = 0; v < (VertexId{1} << 18); ++v) members += cons.member(v);
    double frac = static_cast<double>(members) / static_cast<double>(VertexId{1} << 18);
    CHECK(frac > 0.10);
    CHECK(frac < 0.15);
    CHECK(cons.member(777) == cons.member(777));
}

TEST_CASE("spec json round trip") {
    std::vector<ConstructionSpec> specs = {
        LayeredSpec{3, {0, 2}},
        *standard_construction("W9"),
        BlowupSpec{named("Z4").config, {Rat(1, 3), Rat(2, 3)}},
        RandomSpec{Rat(1, 4), 99},
        ExplicitSpec{named("W2").config},
        NamedSpec{"T"},
    };
    for (const auto& spec : specs) {
        auto j = spec_to_json(spec);
        auto back = spec_from_json(j);
        CHECK(spec_to_json(back).dump() == j.dump());
    }
    // predicate equivalence after a round trip, at a concrete n
    auto spec = *standard_construction("W5");
    auto back = spec_from_json(spec_to_json(spec));
    auto a = generate(spec, 7, true);
    auto b = generate(back, 7, true);
    CHECK(*a.materialized == *b.materialized);
}

TEST_CASE("named spec dimension is enforced") {
    CHECK_THROWS_AS((void)generate(NamedSpec{"T"}, 7, true), DimensionError);
    CHECK_NOTHROW((void)generate(NamedSpec{"T"}, 6, true));
}
