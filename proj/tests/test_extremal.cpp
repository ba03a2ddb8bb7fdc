#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubedensity/constructions.hpp"
#include "cubedensity/density.hpp"
#include "cubedensity/extremal.hpp"

#include <nlohmann/json.hpp>

using namespace cubedensity;

TEST_CASE("exhaustive values frozen by brute force") {
    CHECK(ex_exhaustive(named("Z3").config, 2).ex_value == 1);
    CHECK(ex_exhaustive(named("Z3").config, 3).ex_value == Rat(2, 3));
    CHECK(ex_exhaustive(named("Z3").config, 4).ex_value == Rat(2, 3));
    CHECK(ex_exhaustive(named("Z2").config, 2).ex_value == 1);
    CHECK(ex_exhaustive(named("Z2").config, 3).ex_value == 1);
    CHECK(ex_exhaustive(named("Z2").config, 4).ex_value == Rat(5, 6));
    CHECK(ex_exhaustive(named("Z4").config, 4).ex_value == 1);
    CHECK(ex_exhaustive(named("W2").config, 3).ex_value == 1);
}

TEST_CASE("exact mode rejects n >= 5") {
    CHECK_THROWS_AS((void)ex_exhaustive(named("Z3").config, 5), DimensionError);
}

TEST_CASE("witnesses reproduce the maximum when recounted") {
    auto r = ex_exhaustive(named("Z3").config, 4);
    CHECK(!r.witnesses.empty());
    CHECK(r.witnesses.size() <= 16);
    for (const auto& w : r.witnesses)
        CHECK(count_good(named("Z3").config, w).fraction == r.ex_value);
}

TEST_CASE("exhaustive maximum dominates every registry construction") {
    for (const char* name : {"Z2", "Z3", "Z4"}) {
        auto spec = standard_construction(name);
        REQUIRE(spec.has_value());
        auto cons = generate(*spec, 4, true);
        auto constructed = count_good(named(name).config, *cons.materialized);
        CHECK(ex_exhaustive(named(name).config, 4).ex_value >= constructed.fraction);
    }
}

TEST_CASE("complement symmetry of the exhaustive maximum") {
    for (const char* name : {"Z2", "Z3", "W2", "W10"}) {
        CubeConfig h = named(name).config;
        int n = h.dim() == 2 ? 3 : 4;
        CHECK(ex_exhaustive(h, n).ex_value == ex_exhaustive(h.complemented(), n).ex_value);
    }
}

TEST_CASE("monotonicity report is nonincreasing with valid averaging") {
    auto rows = monotonicity_report(named("Z3").config, 4);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ex_value == 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].ex_value <= rows[i - 1].ex_value);
        CHECK(rows[i].averaging_ok);
    }
    auto full = monotonicity_report(CubeConfig::full(2), 4);
    for (const auto& row : full) CHECK(row.ex_value == 1);
}

TEST_CASE("search never returns less than its initialization") {
    SearchParams params;
    params.seed = 3;
    params.restarts = 2;
    params.max_steps = 2000;
    params.init = LayeredSpec{3, {0}};
    auto init_value =
        count_good(named("W8").config, *generate(*params.init, 6, true).materialized);
    auto r = local_search(named("W8").config, 6, params);
    CHECK(r.best_fraction >= init_value.fraction);
    CHECK(init_value.fraction == Rat(3, 4));
}

TEST_CASE("search reaches the half-split construction on a small instance") {
    SearchParams params;
    params.seed = 1;
    params.restarts = 4;
    auto r = local_search(named("Z3").config, 6, params);
    CHECK(r.best_fraction >= Rat(9, 15));
}

TEST_CASE("search is reproducible and thread count does not matter") {
    SearchParams params;
    params.seed = 17;
    params.restarts = 3;
    params.max_steps = 4000;
    auto a = local_search(named("Z3").config, 6, params);
    auto b = local_search(named("Z3").config, 6, params);
    CHECK(search_json(a, params, 6).dump() == search_json(b, params, 6).dump());

    SearchParams serial = params;
    serial.threads = 1;
    auto c = local_search(named("Z3").config, 6, serial);
    CHECK(search_json(c, serial, 6).dump() == search_json(a, params, 6).dump());
}

TEST_CASE("search trajectory is monotone in fraction") {
    SearchParams params;
    params.seed = 23;
    params.restarts = 2;
    params.max_steps = 3000;
    auto r = local_search(named("W8").config, 5, params);
    // within each restart the recorded best only improves
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
        if (r.trajectory[i].step / r.steps_per_restart ==
            r.trajectory[i - 1].step / r.steps_per_restart)
            CHECK(r.trajectory[i].fraction > r.trajectory[i - 1].fraction);
    }
}

TEST_CASE("extremal json") {
    auto j = extremal_json(ex_exhaustive(named("Z3").config, 3));
    CHECK(j["d"] == 2);
    CHECK(j["n"] == 3);
    CHECK(j["ex"]["num"] == "2");
    CHECK(j["ex"]["den"] == "3");
    CHECK(j["witnesses"].size() >= 1);
}
