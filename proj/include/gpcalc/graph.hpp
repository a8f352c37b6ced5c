#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace gpcalc {

// Vertex index into its graph's declaration order.
using Vertex = int;

inline constexpr int max_vertices = 64;

// Subset of {0..63}; iteration visits members in increasing index order.
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint64_t{1} << v); }
    static constexpr VertexSet first(int n) {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(Vertex v) const noexcept { return (bits_ >> v) & 1u; }
    constexpr bool subset_of(VertexSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }
    constexpr Vertex min() const noexcept { return std::countr_zero(bits_); }

    constexpr void insert(Vertex v) noexcept { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(Vertex v) noexcept { bits_ &= ~(std::uint64_t{1} << v); }

    constexpr VertexSet operator|(VertexSet o) const noexcept { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const noexcept { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const noexcept { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet& operator|=(VertexSet o) noexcept { bits_ |= o.bits_; return *this; }
    constexpr VertexSet& operator&=(VertexSet o) noexcept { bits_ &= o.bits_; return *this; }
    constexpr bool operator==(const VertexSet&) const = default;

    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr Vertex operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        for (Vertex v : *this) out.push_back(v);
        return out;
    }

private:
    std::uint64_t bits_ = 0;
};

// Finite simple graph, immutable after construction. Vertices are ordered by declaration.
class Graph {
public:
    Graph() = default;
    // Throws on duplicate names, unknown edge endpoints, self-loops, or more than 64 vertices.
    Graph(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& edges);
    // Vertices named "0".."n-1" unless names are given; edges by index.
    static Graph from_indices(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                              std::vector<std::string> names = {});

    int size() const noexcept { return static_cast<int>(names_.size()); }
    bool empty() const noexcept { return names_.empty(); }
    VertexSet vertices() const noexcept { return VertexSet::first(size()); }
    const std::string& name(Vertex v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    // Throws Error(unknown_vertex).
    Vertex index_of(std::string_view name) const;
    bool has_vertex(std::string_view name) const;

    bool adjacent(Vertex a, Vertex b) const noexcept { return links_[static_cast<std::size_t>(a)].contains(b); }
    VertexSet link(Vertex v) const noexcept { return links_[static_cast<std::size_t>(v)]; }
    VertexSet star(Vertex v) const noexcept { return link(v) | VertexSet::single(v); }
    // Vertices adjacent to every member of `s` (the whole vertex set when `s` is empty).
    VertexSet common_link(VertexSet s) const noexcept;
    bool is_complete() const noexcept;
    // Edges (a,b) with a<b, lexicographic.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    bool operator==(const Graph& o) const { return names_ == o.names_ && links_ == o.links_; }

private:
    std::vector<std::string> names_;
    std::vector<VertexSet> links_;
};

// link(v) when closed is false, star(v) otherwise.
VertexSet neighborhood(const Graph& g, Vertex v, bool closed);

// Subgraph on `u`; the i-th vertex of the result is the i-th member of `u`.
Graph induced_subgraph(const Graph& g, VertexSet u);
// Maps a subset of `u` (parent indices) to indices of induced_subgraph(g, u).
VertexSet restrict_to(VertexSet u, VertexSet s);
// Inverse of restrict_to.
VertexSet extend_from(VertexSet u, VertexSet s);

Graph complement(const Graph& g);

// Connected components of the complement graph, ordered by smallest vertex. Throws on empty g.
std::vector<VertexSet> join_decompose(const Graph& g);

struct Disconnected {};
struct Triple {
    Vertex v0, v1, v2;
};
struct TriplesFound {
    std::vector<Triple> triples;  // one per vertex, in vertex order
};
struct NotIrreducible {
    VertexSet left, right;  // every left vertex is adjacent to every right vertex
};
using IrreducibilityWitness = std::variant<Disconnected, TriplesFound, NotIrreducible>;

IrreducibilityWitness irreducibility_witness(const Graph& g);

// Parses a set given as comma/space separated names, optionally inside braces; "{}" or "" is empty.
VertexSet parse_vertex_set(const Graph& g, std::string_view text);
// "{a,b}" in vertex order.
std::string format_vertex_set(const Graph& g, VertexSet s);
std::vector<std::string> vertex_names(const Graph& g, VertexSet s);

}  // namespace gpcalc
