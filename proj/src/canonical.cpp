#include "cubedensity/canonical.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <nlohmann/json.hpp>

namespace cubedensity {

namespace {

bool words_less(const std::array<std::uint64_t, 4>& a, const std::array<std::uint64_t, 4>& b) {
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

CanonicalKey canonical_small(const CubeConfig& h) {
    const int d = h.dim();
    const std::uint64_t mask = h.mask64();
    std::uint64_t best = ~std::uint64_t{0};
    for_each_automorphism(d, [&](const Automorphism& a) {
        std::uint64_t im = 0;
        std::uint64_t m = mask;
        while (m) {
            std::uint64_t low = m & (0 - m);
            im |= std::uint64_t{1} << a(static_cast<VertexId>(std::countr_zero(low)));
            m ^= low;
        }
        best = std::min(best, im);
    });
    CanonicalKey key;
    key.dim = d;
    key.words[0] = best;
    return key;
}

// Candidates p * (H xor u) over members u and permutations p; this set is
// orbit-invariant and each candidate lies in the orbit, so its minimum is a
// canonical representative.
CanonicalKey canonical_large(const CubeConfig& h) {
    const int d = h.dim();
    const auto verts = h.vertices();
    std::vector<VertexId> translates = verts;
    if (translates.empty()) translates.push_back(0);

    std::array<std::uint64_t, 4> best{};
    best.fill(~std::uint64_t{0});

    std::array<std::uint8_t, 8> p{};
    for (int i = 0; i < d; ++i) p[i] = static_cast<std::uint8_t>(i);
    do {
        std::span<const std::uint8_t> perm(p.data(), static_cast<std::size_t>(d));
        for (VertexId u : translates) {
            // p * (H xor u): translate first, then permute.
            std::array<std::uint64_t, 4> im{};
            for (VertexId v : verts) {
                std::uint64_t t = v ^ u;
                std::uint64_t w = 0;
                for (int i = 0; i < d; ++i)
                    if ((t >> i) & 1) w |= std::uint64_t{1} << p[i];
                im[w >> 6] |= std::uint64_t{1} << (w & 63);
            }
            if (words_less(im, best)) best = im;
        }
    } while (std::next_permutation(p.begin(), p.begin() + d));

    CanonicalKey key;
    key.dim = d;
    key.words = best;
    return key;
}

}  // namespace

std::string CanonicalKey::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    bool started = false;
    for (int i = 3; i >= 0; --i) {
        for (int nib = 15; nib >= 0; --nib) {
            unsigned v = (words[i] >> (4 * nib)) & 0xf;
            if (!started && v == 0) continue;
            started = true;
            out.push_back(digits[v]);
        }
    }
    if (!started) out = "0";
    return "0x" + out;
}

CubeConfig CanonicalKey::config() const {
    CubeConfig c(dim);
    for (std::uint64_t v = 0; v < c.vertex_count(); ++v)
        if ((words[v >> 6] >> (v & 63)) & 1) c.set(v);
    return c;
}

CanonicalKey canonical_form(const CubeConfig& h) {
    const int d = h.dim();
    if (d > kMaxPatternDim)
        throw DimensionError("canonical form supports d <= 8");
    if (d <= 4) return canonical_small(h);
    return canonical_large(h);
}

bool is_exact_copy(const CubeConfig& h, const CubeConfig& k) {
    if (h.dim() != k.dim())
        throw DimensionError("exact-copy test requires equal dimensions");
    if (h.count() != k.count()) return false;
    return canonical_form(h) == canonical_form(k);
}

const std::vector<std::uint16_t>& class_table(int d) {
    if (d < 0 || d > 4) throw DimensionError("class table supports d <= 4");
    static std::array<std::vector<std::uint16_t>, 5> cache;
    static std::array<std::once_flag, 5> flags;
    std::call_once(flags[static_cast<std::size_t>(d)], [d] {
        const std::uint32_t nverts = std::uint32_t{1} << d;
        const std::uint32_t nmasks = std::uint32_t{1} << nverts;
        std::vector<std::vector<std::uint8_t>> vmaps;
        vmaps.reserve(automorphism_count(d));
        for_each_automorphism(d, [&](const Automorphism& a) { vmaps.push_back(a.vertex_map()); });

        std::vector<std::uint16_t> table(nmasks, 0xffff);
        for (std::uint32_t m = 0; m < nmasks; ++m) {
            if (table[m] != 0xffff) continue;
            // Ascending sweep: the first unseen mask is the orbit minimum.
            for (const auto& vm : vmaps) {
                std::uint32_t im = 0;
                std::uint32_t rest = m;
                while (rest) {
                    std::uint32_t low = rest & (0 - rest);
                    im |= std::uint32_t{1} << vm[static_cast<std::size_t>(std::countr_zero(low))];
                    rest ^= low;
                }
                table[im] = static_cast<std::uint16_t>(m);
            }
        }
        cache[static_cast<std::size_t>(d)] = std::move(table);
    });
    return cache[static_cast<std::size_t>(d)];
}

std::optional<std::vector<int>> layered_weights(const CubeConfig& h) {
    const int d = h.dim();
    if (d > kMaxPatternDim) throw DimensionError("layered test supports d <= 8");
    const auto verts = h.vertices();
    std::array<std::uint64_t, 9> level_size{};
    for (int w = 0; w <= d; ++w) level_size[w] = binomial_u64(d, w);

    for (std::uint64_t s = 0; s < (std::uint64_t{1} << d); ++s) {
        std::array<std::uint64_t, 9> cnt{};
        for (VertexId v : verts) ++cnt[static_cast<std::size_t>(weight(v ^ s))];
        bool determined = true;
        for (int w = 0; w <= d && determined; ++w)
            determined = cnt[w] == 0 || cnt[w] == level_size[w];
        if (determined) {
            std::vector<int> ws;
            for (int w = 0; w <= d; ++w)
                if (cnt[w] != 0) ws.push_back(w);
            return ws;
        }
    }
    return std::nullopt;
}

bool is_trivial_layered(const CubeConfig& h) {
    const int d = h.dim();
    CubeConfig even(d);
    for (std::uint64_t v = 0; v < even.vertex_count(); ++v)
        if (weight(v) % 2 == 0) even.set(v);
    return h == CubeConfig(d) || h == CubeConfig::full(d) || h == even || h == even.complemented();
}

int OrbitAtlas::class_of_mask(std::uint64_t mask) const {
    std::uint64_t key = class_table(dim)[mask];
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].key == key) return static_cast<int>(i);
    return -1;
}

int OrbitAtlas::class_of(const CubeConfig& h) const {
    if (h.dim() != dim) throw DimensionError("atlas dimension mismatch");
    return class_of_mask(h.mask64());
}

int OrbitAtlas::complement_class_count() const {
    int count = 0;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (static_cast<int>(i) <= classes[i].complement_class) ++count;
    return count;
}

int OrbitAtlas::pair_id(int class_index) const {
    return std::min(class_index, classes[static_cast<std::size_t>(class_index)].complement_class);
}

OrbitAtlas classify(int d) {
    if (d < 0 || d > 4) throw DimensionError("classification supports d <= 4");
    const auto& table = class_table(d);
    const std::uint32_t nverts = std::uint32_t{1} << d;
    const std::uint32_t nmasks = std::uint32_t{1} << nverts;
    const std::uint32_t full = nmasks - 1;

    OrbitAtlas atlas;
    atlas.dim = d;
    std::map<std::uint64_t, int> index_of;
    std::vector<std::uint64_t> orbit_size(1, 0);

    for (std::uint32_t m = 0; m < nmasks; ++m) {
        std::uint64_t key = table[m];
        auto it = index_of.find(key);
        if (it == index_of.end()) {
            index_of.emplace(key, static_cast<int>(atlas.classes.size()));
            OrbitClass cls;
            cls.key = key;
            cls.orbit_size = 1;
            CubeConfig rep = CubeConfig::from_mask64(d, key);
            cls.layered = layered_weights(rep);
            cls.trivial = is_trivial_layered(rep);
            auto verts = rep.vertices();
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t j = i + 1; j < verts.size(); ++j)
                    cls.distances.push_back(weight(verts[i] ^ verts[j]));
            std::sort(cls.distances.begin(), cls.distances.end());
            atlas.classes.push_back(std::move(cls));
        } else {
            ++atlas.classes[static_cast<std::size_t>(it->second)].orbit_size;
        }
    }
    for (auto& cls : atlas.classes)
        cls.complement_class = index_of.at(table[full ^ cls.key]);
    return atlas;
}

nlohmann::json atlas_json(const OrbitAtlas& atlas) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& cls : atlas.classes) {
        nlohmann::json row;
        CanonicalKey key;
        key.dim = atlas.dim;
        key.words[0] = cls.key;
        row["key_hex"] = key.hex();
        row["orbit_size"] = cls.orbit_size;
        row["complement_of"] = cls.complement_class;
        if (cls.layered)
            row["layered"] = *cls.layered;
        else
            row["layered"] = false;
        row["trivial"] = cls.trivial;
        row["distances"] = cls.distances;
        classes.push_back(std::move(row));
    }
    nlohmann::json out;
    out["dim"] = atlas.dim;
    out["orbit_count"] = atlas.classes.size();
    out["complement_class_count"] = atlas.complement_class_count();
    out["classes"] = std::move(classes);
    return out;
}

}  // namespace cubedensity
