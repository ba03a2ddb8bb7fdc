#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubedensity/bits.hpp"

namespace cubedensity {

// Vertex of Q_n as a bitmask: bit j is coordinate x_{j+1}. The subset
// notation of configurations maps element k to bit k-1, so "13" in Q4 is
// bits {0,2} = 5.
using VertexId = std::uint64_t;

inline int weight(VertexId v) { return popcount64(v); }

inline constexpr int kMaxPatternDim = 8;      // canonical-form cap
inline constexpr int kMaxExplicitDim = 24;    // materialized membership bitvector
inline constexpr int kMaxAmbientDim = 30;     // subcube enumeration cap

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configuration H subseteq V(Q_d), stored as a membership bitvector of
// length 2^d.
class CubeConfig {
  public:
    CubeConfig() = default;
    explicit CubeConfig(int dim) : dim_(dim) {
        if (dim < 0 || dim > kMaxExplicitDim)
            throw DimensionError("configuration dimension out of range: " + std::to_string(dim));
        words_.assign(word_count(dim), 0);
    }

    static CubeConfig from_vertices(int dim, std::span<const VertexId> vs) {
        CubeConfig c(dim);
        for (VertexId v : vs) c.set(v);
        return c;
    }
    static CubeConfig from_vertices(int dim, std::initializer_list<VertexId> vs) {
        return from_vertices(dim, std::span<const VertexId>(vs.begin(), vs.size()));
    }
    static CubeConfig full(int dim) {
        CubeConfig c(dim);
        for (std::size_t i = 0; i < c.words_.size(); ++i) c.words_[i] = ~std::uint64_t{0};
        c.trim();
        return c;
    }
    static CubeConfig from_mask64(int dim, std::uint64_t mask) {
        if (dim > 6) throw DimensionError("from_mask64 requires dim <= 6");
        CubeConfig c(dim);
        c.words_[0] = mask & c.mask_limit();
        return c;
    }

    int dim() const { return dim_; }
    std::uint64_t vertex_count() const { return std::uint64_t{1} << dim_; }

    bool test(VertexId v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    void set(VertexId v, bool on = true) {
        check_vertex(v);
        if (on)
            words_[v >> 6] |= std::uint64_t{1} << (v & 63);
        else
            words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
    void flip(VertexId v) { words_[v >> 6] ^= std::uint64_t{1} << (v & 63); }

    std::uint64_t count() const {
        std::uint64_t c = 0;
        for (auto w : words_) c += popcount64(w);
        return c;
    }
    bool empty() const { return count() == 0; }

    CubeConfig complemented() const {
        CubeConfig c(*this);
        for (auto& w : c.words_) w = ~w;
        c.trim();
        return c;
    }

    // Membership bitvector as one word; requires dim <= 6.
    std::uint64_t mask64() const {
        if (dim_ > 6) throw DimensionError("mask64 requires dim <= 6");
        return words_[0];
    }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                std::uint64_t low = w & (0 - w);
                out.push_back((std::uint64_t{wi} << 6) + std::countr_zero(low));
                w ^= low;
            }
        }
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> mutable_words() { return words_; }

    bool operator==(const CubeConfig&) const = default;

  private:
    static std::size_t word_count(int dim) {
        return dim <= 6 ? 1 : (std::size_t{1} << (dim - 6));
    }
    std::uint64_t mask_limit() const {
        return dim_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << dim_)) - 1;
    }
    void trim() {
        if (dim_ < 6) words_.back() &= mask_limit();
    }
    void check_vertex(VertexId v) const {
        if (v >= vertex_count())
            throw DimensionError("vertex index out of range for dimension " + std::to_string(dim_));
    }

    int dim_ = 0;
    std::vector<std::uint64_t> words_{0};
};

// A sub-d-cube of Q_n: popcount(flip_mask) coordinates vary, the rest are
// fixed to the bits of base (base & flip_mask == 0).
struct Subcube {
    int ambient_dim = 0;
    std::uint64_t flip_mask = 0;
    std::uint64_t base = 0;

    int dim() const { return popcount64(flip_mask); }
    VertexId vertex(std::uint64_t local) const { return base | deposit_bits(local, flip_mask); }
    bool valid() const {
        if (ambient_dim < 1 || ambient_dim > 64) return false;
        std::uint64_t all = ambient_dim == 64 ? ~std::uint64_t{0}
                                              : (std::uint64_t{1} << ambient_dim) - 1;
        return (base & flip_mask) == 0 && (flip_mask | base) <= all && flip_mask != 0;
    }
};

// Element of Aut(Q_d): coordinate permutation followed by an XOR
// translation; the group has order 2^d * d!.
class Automorphism {
  public:
    Automorphism() = default;
    Automorphism(int dim, std::span<const std::uint8_t> perm, std::uint32_t translate)
        : dim_(dim), translate_(translate) {
        if (dim < 0 || dim > kMaxPatternDim) throw DimensionError("automorphism dim out of range");
        for (int i = 0; i < dim; ++i) perm_[i] = perm[i];
    }
    static Automorphism identity(int dim) {
        std::array<std::uint8_t, 8> p{};
        for (int i = 0; i < dim; ++i) p[i] = static_cast<std::uint8_t>(i);
        return Automorphism(dim, std::span<const std::uint8_t>(p.data(), dim), 0);
    }

    int dim() const { return dim_; }
    std::uint32_t translate() const { return translate_; }
    std::span<const std::uint8_t> perm() const { return {perm_.data(), static_cast<std::size_t>(dim_)}; }

    VertexId operator()(VertexId v) const {
        std::uint64_t w = 0;
        for (int i = 0; i < dim_; ++i)
            if ((v >> i) & 1) w |= std::uint64_t{1} << perm_[i];
        return w ^ translate_;
    }

    Automorphism inverse() const {
        std::array<std::uint8_t, 8> ip{};
        for (int i = 0; i < dim_; ++i) ip[perm_[i]] = static_cast<std::uint8_t>(i);
        Automorphism inv(dim_, std::span<const std::uint8_t>(ip.data(), dim_), 0);
        inv.translate_ = static_cast<std::uint32_t>(inv.apply_perm_only(translate_));
        return inv;
    }

    // Image of each vertex, indexed by vertex; dim <= 8 so entries fit a byte.
    std::vector<std::uint8_t> vertex_map() const {
        std::vector<std::uint8_t> vm(std::size_t{1} << dim_);
        for (std::uint64_t v = 0; v < vm.size(); ++v)
            vm[v] = static_cast<std::uint8_t>((*this)(v));
        return vm;
    }

    friend Automorphism compose(const Automorphism& a, const Automorphism& b);

  private:
    std::uint64_t apply_perm_only(std::uint64_t v) const {
        std::uint64_t w = 0;
        for (int i = 0; i < dim_; ++i)
            if ((v >> i) & 1) w |= std::uint64_t{1} << perm_[i];
        return w;
    }

    int dim_ = 0;
    std::array<std::uint8_t, 8> perm_{};
    std::uint32_t translate_ = 0;
};

// compose(a,b) acts as v -> a(b(v)).
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
    if (a.dim() != b.dim()) throw DimensionError("composing automorphisms of different dimension");
    std::array<std::uint8_t, 8> p{};
    for (int i = 0; i < a.dim(); ++i) p[i] = a.perm_[b.perm_[i]];
    Automorphism c(a.dim(), std::span<const std::uint8_t>(p.data(), a.dim()), 0);
    c.translate_ = static_cast<std::uint32_t>(a(b.translate()));
    return c;
}

inline std::uint64_t automorphism_count(int d) {
    std::uint64_t f = 1;
    for (int i = 2; i <= d; ++i) f *= static_cast<std::uint64_t>(i);
    return f << d;
}

// Yields each of the 2^d * d! automorphisms once: permutations in
// lexicographic order, translates ascending within each permutation.
template <class F>
void for_each_automorphism(int d, F&& fn) {
    if (d < 0 || d > kMaxPatternDim)
        throw DimensionError("automorphism enumeration supports 0 <= d <= 8");
    std::array<std::uint8_t, 8> p{};
    for (int i = 0; i < d; ++i) p[i] = static_cast<std::uint8_t>(i);
    do {
        for (std::uint64_t t = 0; t < (std::uint64_t{1} << d); ++t)
            fn(Automorphism(d, std::span<const std::uint8_t>(p.data(), d),
                            static_cast<std::uint32_t>(t)));
    } while (std::next_permutation(p.begin(), p.begin() + d));
}

inline std::vector<Automorphism> automorphisms(int d) {
    if (d > 6) throw DimensionError("automorphism vector materialization capped at d <= 6");
    std::vector<Automorphism> out;
    out.reserve(automorphism_count(d));
    for_each_automorphism(d, [&](const Automorphism& a) { out.push_back(a); });
    return out;
}

inline CubeConfig apply_automorphism(const Automorphism& a, const CubeConfig& h) {
    if (a.dim() != h.dim())
        throw DimensionError("automorphism and configuration dimension mismatch");
    CubeConfig out(h.dim());
    for (VertexId v : h.vertices()) out.set(a(v));
    return out;
}

inline std::uint64_t subcube_count(int n, int d) {
    return binomial_u64(n, d) << (n - d);
}

// Yields each sub-d-cube exactly once: flip_mask ascending, base ascending.
template <class F>
void for_each_subcube(int n, int d, F&& fn) {
    if (d < 1 || d > n || n > kMaxAmbientDim)
        throw DimensionError("subcube enumeration requires 1 <= d <= n <= 30");
    const std::uint64_t n_masks = binomial_u64(n, d);
    const std::uint64_t n_bases = std::uint64_t{1} << (n - d);
    std::uint64_t fm = (std::uint64_t{1} << d) - 1;
    for (std::uint64_t mi = 0; mi < n_masks; ++mi) {
        std::uint64_t b = 0;
        for (std::uint64_t bi = 0; bi < n_bases; ++bi) {
            fn(Subcube{n, fm, b});
            b = next_base(b, fm);
        }
        fm = next_subset_mask(fm);
    }
}

// All flip masks of popcount d over n coordinates, ascending.
inline std::vector<std::uint64_t> flip_masks(int n, int d) {
    std::vector<std::uint64_t> out;
    out.reserve(binomial_u64(n, d));
    std::uint64_t fm = (std::uint64_t{1} << d) - 1;
    for (std::uint64_t i = 0; i < binomial_u64(n, d); ++i) {
        out.push_back(fm);
        fm = next_subset_mask(fm);
    }
    return out;
}

// S cap R read as a configuration in Q_d; subcube-local coordinate order is
// the ascending order of flip-bit positions.
inline CubeConfig restrict_to(const CubeConfig& s, const Subcube& r) {
    if (r.ambient_dim != s.dim()) throw DimensionError("subcube ambient dimension mismatch");
    const int d = r.dim();
    CubeConfig out(d);
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << d); ++u)
        if (s.test(r.vertex(u))) out.set(u);
    return out;
}

// Parse "1010" (leftmost char = x_1 = bit 0) into a vertex id.
inline VertexId vertex_from_bitstring(const std::string& s) {
    VertexId v = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == '1')
            v |= VertexId{1} << j;
        else if (s[j] != '0')
            throw std::invalid_argument("bad bitstring: " + s);
    }
    return v;
}

inline std::string vertex_to_bitstring(VertexId v, int dim) {
    std::string s(static_cast<std::size_t>(dim), '0');
    for (int j = 0; j < dim; ++j)
        if ((v >> j) & 1) s[static_cast<std::size_t>(j)] = '1';
    return s;
}

}  // namespace cubedensity
