#include "cubedensity/constructions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

std::uint64_t ambient_all_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

bool tuple_matches(std::span<const int> tuple, std::span<const int> ws) {
    for (std::size_t j = 0; j < ws.size(); ++j)
        if (tuple[j] >= 0 && tuple[j] != ws[j]) return false;
    return true;
}

std::vector<std::uint64_t> part_masks(std::span<const int> sizes) {
    std::vector<std::uint64_t> masks;
    int off = 0;
    for (int a : sizes) {
        masks.push_back(((a >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << a) - 1)) << off);
        off += a;
    }
    return masks;
}

}  // namespace

std::vector<int> concrete_part_sizes(std::span<const Rat> fractions, int n, PartRounding rounding) {
    std::vector<int> sizes(fractions.size(), 0);
    if (rounding == PartRounding::floor_first && fractions.size() == 2) {
        Rat q = fractions[0] * n;
        sizes[0] = static_cast<int>(numerator(q) / denominator(q));
        sizes[1] = n - sizes[0];
        return sizes;
    }
    std::vector<Rat> quotas(fractions.begin(), fractions.end());
    int assigned = 0;
    for (std::size_t j = 0; j < quotas.size(); ++j) {
        quotas[j] *= n;
        sizes[j] = static_cast<int>(numerator(quotas[j]) / denominator(quotas[j]));
        assigned += sizes[j];
    }
    std::vector<std::size_t> order(quotas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return quotas[a] - sizes[a] > quotas[b] - sizes[b];
    });
    for (int r = 0; r < n - assigned; ++r) ++sizes[order[static_cast<std::size_t>(r)]];
    return sizes;
}

Construction generate(const ConstructionSpec& spec, int n, bool materialize) {
    if (n < 1) throw DimensionError("construction requires n >= 1");
    Construction out;
    out.n = n;

    if (const auto* lay = std::get_if<LayeredSpec>(&spec)) {
        if (lay->modulus < 1) throw std::invalid_argument("layered modulus must be >= 1");
        std::vector<bool> in(static_cast<std::size_t>(lay->modulus), false);
        for (int r : lay->residues) in[static_cast<std::size_t>(((r % lay->modulus) + lay->modulus) % lay->modulus)] = true;
        int a = lay->modulus;
        out.member = [in, a](VertexId v) { return in[static_cast<std::size_t>(weight(v) % a)]; };
        out.part_sizes = {n};
        std::ostringstream d;
        d << "layered mod " << a;
        out.describe = d.str();
    } else if (const auto* pm = std::get_if<PartitionModularSpec>(&spec)) {
        if (pm->parts.empty()) throw std::invalid_argument("partition-modular spec needs parts");
        std::vector<Rat> fr;
        for (const auto& p : pm->parts) fr.push_back(p.fraction);
        auto sizes = concrete_part_sizes(fr, n, pm->rounding);
        for (std::size_t j = 0; j < sizes.size(); ++j)
            if (sizes[j] < 0) throw std::invalid_argument("infeasible part sizes at n");
        auto masks = part_masks(sizes);
        std::vector<int> moduli;
        for (const auto& p : pm->parts) moduli.push_back(p.modulus);
        auto allowed = pm->allowed;
        for (const auto& t : allowed)
            if (t.size() != pm->parts.size())
                throw std::invalid_argument("allowed tuple arity mismatch");
        out.member = [masks, moduli, allowed](VertexId v) {
            std::vector<int> ws(masks.size());
            for (std::size_t j = 0; j < masks.size(); ++j)
                ws[j] = popcount64(v & masks[j]) % moduli[j];
            for (const auto& t : allowed)
                if (tuple_matches(t, ws)) return true;
            return false;
        };
        out.part_sizes = sizes;
        std::ostringstream d;
        d << "partition-modular, parts";
        for (int s : sizes) d << " " << s;
        out.describe = d.str();
    } else if (const auto* bu = std::get_if<BlowupSpec>(&spec)) {
        const int dbase = bu->base.dim();
        if (n < dbase) throw std::invalid_argument("blow-up needs n >= base dimension");
        std::vector<Rat> fr = bu->fractions;
        if (fr.empty()) fr.assign(static_cast<std::size_t>(dbase), Rat(1, dbase));
        if (static_cast<int>(fr.size()) != dbase)
            throw std::invalid_argument("blow-up fraction count must match base dimension");
        auto sizes = concrete_part_sizes(fr, n, PartRounding::largest_remainder);
        for (int s : sizes)
            if (s < 1) throw std::invalid_argument("blow-up part empty at this n");
        auto masks = part_masks(sizes);
        CubeConfig base = bu->base;
        out.member = [masks, base](VertexId v) {
            std::uint64_t u = 0;
            for (std::size_t j = 0; j < masks.size(); ++j)
                if (popcount64(v & masks[j]) & 1) u |= std::uint64_t{1} << j;
            return base.test(u);
        };
        out.part_sizes = sizes;
        std::ostringstream d;
        d << "blow-up of a Q" << dbase << " configuration";
        out.describe = d.str();
    } else if (const auto* rs = std::get_if<RandomSpec>(&spec)) {
        if (rs->p < 0 || rs->p > 1) throw std::invalid_argument("bernoulli p outside [0,1]");
        double p = rat_to_double(rs->p);
        std::uint64_t seed = rs->seed;
        out.member = [p, seed](VertexId v) {
            SplitMix64 rng{seed ^ (v * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL)};
            return rng.next_unit() < p;
        };
        std::ostringstream d;
        d << "bernoulli p=" << rat_string(rs->p) << " seed=" << rs->seed;
        out.describe = d.str();
    } else if (const auto* ex = std::get_if<ExplicitSpec>(&spec)) {
        if (ex->config.dim() != n) throw DimensionError("explicit configuration dimension != n");
        CubeConfig c = ex->config;
        out.member = [c](VertexId v) { return c.test(v); };
        out.materialized = c;
        out.describe = "explicit";
    } else if (const auto* nm = std::get_if<NamedSpec>(&spec)) {
        const auto& entry = named(nm->name);
        if (entry.config.dim() != n)
            throw DimensionError("named configuration " + nm->name + " lives in Q" +
                                 std::to_string(entry.config.dim()));
        CubeConfig c = entry.config;
        out.member = [c](VertexId v) { return c.test(v); };
        out.materialized = c;
        out.describe = nm->name;
    }

    if (materialize && !out.materialized) {
        if (n > kMaxExplicitDim)
            throw DimensionError("materialization capped at n <= 24");
        CubeConfig c(n);
        std::uint64_t all = ambient_all_mask(n);
        for (std::uint64_t v = 0; v <= all; ++v)
            if (out.member(v)) c.set(v);
        out.materialized = std::move(c);
    }
    return out;
}

CubeConfig family_h(int d, int i) {
    if (!(1 <= i && i < d) || d > kMaxPatternDim)
        throw std::invalid_argument("family H(d,i) requires 1 <= i < d <= 8");
    CubeConfig c(d);
    std::uint64_t head = (std::uint64_t{1} << i) - 1;
    for (std::uint64_t v = 0; v < c.vertex_count(); ++v)
        if (popcount64(v & head) % 2 == 0) c.set(v);
    return c;
}

CubeConfig family_e(int d, int i) {
    if (!(1 <= i && i < d) || d > kMaxPatternDim)
        throw std::invalid_argument("family E(d,i) requires 1 <= i < d <= 8");
    CubeConfig c(d);
    std::uint64_t head = (std::uint64_t{1} << i) - 1;
    for (std::uint64_t v = 0; v < c.vertex_count(); ++v)
        if (popcount64(v & head) % 2 == 0 && popcount64(v >> i) % 2 == 0) c.set(v);
    return c;
}

CubeConfig hamming_code_q7() {
    CubeConfig c(7);
    c.set(0);
    std::uint64_t m = 0b0001011;  // {1,2,4}
    for (int k = 0; k < 7; ++k) {
        c.set(m);
        m = ((m << 1) | (m >> 6)) & 127;
    }
    for (VertexId v : c.vertices()) c.set(v ^ 127);
    return c;
}

CubeConfig perfect_cycle(int d) {
    if (d < 2 || d > kMaxExplicitDim) throw std::invalid_argument("perfect cycle requires 2 <= d <= 24");
    CubeConfig c(d);
    const std::uint64_t all = (std::uint64_t{1} << d) - 1;
    for (int k = 0; k <= d; ++k) c.set((std::uint64_t{1} << k) - 1);
    for (int k = 1; k < d; ++k) c.set(all ^ ((std::uint64_t{1} << k) - 1));
    return c;
}

namespace {

CubeConfig cfg(int d, std::initializer_list<VertexId> vs) {
    return CubeConfig::from_vertices(d, vs);
}

CubeConfig t_config_q6() {
    auto s = [](std::initializer_list<int> elems) {
        VertexId v = 0;
        for (int k : elems) v |= VertexId{1} << (k - 1);
        return v;
    };
    return CubeConfig::from_vertices(
        6, {s({}), s({1}),
            s({1, 2, 4}), s({1, 4, 6}), s({1, 6, 3}), s({1, 3, 5}), s({1, 5, 2}),
            s({1, 2, 3, 4}), s({1, 4, 5, 6}), s({1, 6, 2, 3}), s({1, 3, 4, 5}), s({1, 5, 6, 2}),
            s({1, 2, 3, 4, 5, 6}),
            s({2, 3}), s({3, 4}), s({4, 5}), s({5, 6}), s({6, 2}),
            s({2, 3, 5}), s({3, 4, 6}), s({4, 5, 2}), s({5, 6, 3}), s({6, 2, 4}),
            s({2, 3, 4, 5, 6})});
}

std::map<std::string, NamedConfig> build_registry() {
    std::map<std::string, NamedConfig> reg;
    auto add = [&](std::string name, CubeConfig c, std::string prov) {
        reg.emplace(name, NamedConfig{name, std::move(c), std::move(prov)});
    };

    add("Z1", CubeConfig(2), "empty configuration in Q2");
    add("Z2", cfg(2, {0}), "one vertex in Q2");
    add("Z3", cfg(2, {0, 1}), "edge of Q2");
    add("Z4", cfg(2, {0, 3}), "diagonal pair of Q2");

    add("W1", CubeConfig(3), "empty configuration in Q3");
    add("W2", cfg(3, {0, 3}), "distance-2 pair {000,110}");
    add("W3", cfg(3, {0}), "one vertex in Q3");
    add("W4", cfg(3, {0, 1}), "edge of Q3");
    add("W5", cfg(3, {4, 6, 5}), "path {001,011,101}");
    add("W6", family_h(3, 1), "sub-2-cube face, H(3,1)");
    add("W7", cfg(3, {0, 7}), "antipodal pair {000,111}");
    add("W8", cfg(3, {3, 5, 6}), "weight-2 triple {110,101,011}");
    add("W9", cfg(3, {4, 1, 2, 3}), "{001,100,010,110}");
    add("W10", cfg(3, {0, 3, 7}), "{000,110,111}");
    add("W11", cfg(3, {0, 1, 3, 7}), "induced path with 4 vertices");
    add("W12", cfg(3, {0, 1, 2, 4}), "weights {0,1} in Q3");
    add("W13", family_h(3, 2), "two antipodal edges, H(3,2)");
    CubeConfig even3(3);
    for (std::uint64_t v = 0; v < 8; ++v)
        if (weight(v) % 2 == 0) even3.set(v);
    add("W14", even3, "even-weight vertices of Q3");

    add("Y", cfg(4, {0, 3, 12, 15}), "{0000,1100,0011,1111} in Q4");
    add("Z", cfg(4, {0, 3, 5, 6}), "{0000,1100,1010,0110} in Q4");
    add("C8", perfect_cycle(4), "perfect 8-cycle in Q4");
    add("T", t_config_q6(), "24-vertex configuration in Q6");
    add("hamming7", hamming_code_q7(), "[7,4] Hamming code in Q7");
    for (int d = 1; d <= 8; ++d)
        add("U" + std::to_string(d), cfg(d, {0}), "single vertex in Q" + std::to_string(d));

    return reg;
}

const std::map<std::string, NamedConfig>& registry() {
    static const std::map<std::string, NamedConfig> reg = build_registry();
    return reg;
}

PartitionModularSpec pm_spec(std::vector<PmPart> parts, std::vector<std::vector<int>> allowed,
                             PartRounding rounding = PartRounding::largest_remainder) {
    PartitionModularSpec s;
    s.parts = std::move(parts);
    s.allowed = std::move(allowed);
    s.rounding = rounding;
    return s;
}

}  // namespace

const NamedConfig& named(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw std::invalid_argument("unknown configuration name: " + name);
    return it->second;
}

bool has_named(const std::string& name) { return registry().count(name) != 0; }

std::vector<std::string> named_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

std::optional<ConstructionSpec> standard_construction(const std::string& name) {
    const Rat half(1, 2), third(1, 3), two_thirds(2, 3);
    // Summary-table constructions. W5 follows the prose (both part weights
    // congruent to 0 or 1 mod 3); the table's compressed "01,10,11" notation
    // does not reproduce the prose construction or its bound.
    if (name == "Z1" || name == "W1") return LayeredSpec{1, {}};
    if (name == "Z2") return LayeredSpec{3, {0}};
    if (name == "Z3")
        return pm_spec({{half, 2}, {half, 1}}, {{0, -1}});
    if (name == "Z4" || name == "W14") return LayeredSpec{2, {0}};
    if (name == "W2")
        return pm_spec({{half, 2}, {half, 2}}, {{0, 0}});
    if (name == "W3") return LayeredSpec{4, {0}};
    if (name == "W4")
        return pm_spec({{two_thirds, 3}, {third, 1}}, {{0, -1}}, PartRounding::floor_first);
    if (name == "W5")
        return pm_spec({{half, 3}, {half, 3}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    if (name == "W6")
        return pm_spec({{half, 2}, {half, 1}}, {{0, -1}});
    if (name == "W7" || name == "W8") return LayeredSpec{3, {0}};
    if (name == "W9")
        return pm_spec({{two_thirds, 4}, {third, 2}}, {{0, 0}, {1, 0}, {2, 1}, {3, 1}},
                       PartRounding::floor_first);
    if (name == "W10") return BlowupSpec{named("T").config, {}};
    if (name == "W11") return BlowupSpec{named("C8").config, {}};
    if (name == "W12") return LayeredSpec{4, {0, 1}};
    if (name == "W13")
        return pm_spec({{half, 2}, {half, 1}}, {{0, -1}});
    if (name == "Y" || name == "Z")
        return pm_spec({{half, 2}, {half, 2}}, {{0, 0}});
    if (name == "C8") return BlowupSpec{named("C8").config, {}};
    if (name.size() >= 2 && name[0] == 'U') {
        int d = std::stoi(name.substr(1));
        return LayeredSpec{d + 1, {0}};
    }
    return std::nullopt;
}

nlohmann::json config_to_json(const CubeConfig& c) {
    nlohmann::json j;
    j["kind"] = "explicit";
    j["dim"] = c.dim();
    nlohmann::json verts = nlohmann::json::array();
    for (VertexId v : c.vertices()) verts.push_back(vertex_to_bitstring(v, c.dim()));
    j["vertices"] = std::move(verts);
    return j;
}

CubeConfig config_from_json(const nlohmann::json& j) {
    int dim = j.at("dim").get<int>();
    CubeConfig c(dim);
    for (const auto& s : j.at("vertices")) c.set(vertex_from_bitstring(s.get<std::string>()));
    return c;
}

nlohmann::json spec_to_json(const ConstructionSpec& spec) {
    nlohmann::json j;
    if (const auto* lay = std::get_if<LayeredSpec>(&spec)) {
        j["kind"] = "layered";
        j["modulus"] = lay->modulus;
        j["residues"] = lay->residues;
    } else if (const auto* pm = std::get_if<PartitionModularSpec>(&spec)) {
        j["kind"] = "partition_modular";
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& p : pm->parts)
            parts.push_back({{"fraction", rat_string(p.fraction)}, {"modulus", p.modulus}});
        j["parts"] = std::move(parts);
        nlohmann::json allowed = nlohmann::json::array();
        for (const auto& t : pm->allowed) {
            nlohmann::json tup = nlohmann::json::array();
            for (int r : t)
                if (r < 0)
                    tup.push_back(nullptr);
                else
                    tup.push_back(r);
            allowed.push_back(std::move(tup));
        }
        j["allowed"] = std::move(allowed);
        j["rounding"] = pm->rounding == PartRounding::floor_first ? "floor_first" : "largest_remainder";
    } else if (const auto* bu = std::get_if<BlowupSpec>(&spec)) {
        j["kind"] = "blowup";
        j["base"] = config_to_json(bu->base);
        nlohmann::json fr = nlohmann::json::array();
        for (const auto& f : bu->fractions) fr.push_back(rat_string(f));
        j["fractions"] = std::move(fr);
    } else if (const auto* rs = std::get_if<RandomSpec>(&spec)) {
        j["kind"] = "random";
        j["p"] = rat_string(rs->p);
        j["seed"] = rs->seed;
    } else if (const auto* ex = std::get_if<ExplicitSpec>(&spec)) {
        j = config_to_json(ex->config);
    } else if (const auto* nm = std::get_if<NamedSpec>(&spec)) {
        j["kind"] = "named";
        j["name"] = nm->name;
    }
    return j;
}

ConstructionSpec spec_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "layered") {
        LayeredSpec s;
        s.modulus = j.at("modulus").get<int>();
        s.residues = j.at("residues").get<std::vector<int>>();
        return s;
    }
    if (kind == "partition_modular") {
        PartitionModularSpec s;
        for (const auto& p : j.at("parts"))
            s.parts.push_back({parse_rat(p.at("fraction").get<std::string>()), p.at("modulus").get<int>()});
        for (const auto& t : j.at("allowed")) {
            std::vector<int> tup;
            for (const auto& e : t) tup.push_back(e.is_null() ? -1 : e.get<int>());
            s.allowed.push_back(std::move(tup));
        }
        if (j.contains("rounding") && j["rounding"] == "floor_first")
            s.rounding = PartRounding::floor_first;
        return s;
    }
    if (kind == "blowup") {
        BlowupSpec s{config_from_json(j.at("base")), {}};
        if (j.contains("fractions"))
            for (const auto& f : j["fractions"]) s.fractions.push_back(parse_rat(f.get<std::string>()));
        return s;
    }
    if (kind == "random") {
        RandomSpec s;
        s.p = parse_rat(j.at("p").get<std::string>());
        s.seed = j.at("seed").get<std::uint64_t>();
        return s;
    }
    if (kind == "explicit") return ExplicitSpec{config_from_json(j)};
    if (kind == "named") return NamedSpec{j.at("name").get<std::string>()};
    throw std::invalid_argument("unknown construction kind: " + kind);
}

}  // namespace cubedensity
