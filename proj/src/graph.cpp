#include "gpcalc/graph.hpp"

#include <algorithm>

#include "gpcalc/errors.hpp"

namespace gpcalc {

Graph::Graph(std::vector<std::string> names, const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(names)), links_(names_.size()) {
    if (names_.size() > static_cast<std::size_t>(max_vertices)) {
        throw Error(ErrorKind::too_many_vertices, "graphs are limited to 64 vertices");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw Error(ErrorKind::invalid_argument, "empty vertex name");
        for (std::size_t j = 0; j < i; ++j) {
            if (names_[i] == names_[j]) {
                throw Error(ErrorKind::invalid_argument, "duplicate vertex '" + names_[i] + "'");
            }
        }
    }
    for (const auto& [a, b] : edges) {
        Vertex x = index_of(a);
        Vertex y = index_of(b);
        if (x == y) throw Error(ErrorKind::invalid_argument, "self-loop at '" + a + "'");
        links_[static_cast<std::size_t>(x)].insert(y);
        links_[static_cast<std::size_t>(y)].insert(x);
    }
}

Graph Graph::from_indices(int n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                          std::vector<std::string> names) {
    if (names.empty()) {
        for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    }
    if (static_cast<int>(names.size()) != n) {
        throw Error(ErrorKind::invalid_argument, "name count does not match vertex count");
    }
    std::vector<std::pair<std::string, std::string>> named;
    named.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw Error(ErrorKind::unknown_vertex, "edge endpoint out of range");
        }
        named.emplace_back(names[static_cast<std::size_t>(a)], names[static_cast<std::size_t>(b)]);
    }
    return Graph(std::move(names), named);
}

Vertex Graph::index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw Error(ErrorKind::unknown_vertex, "unknown vertex '" + std::string(name) + "'");
    return static_cast<Vertex>(it - names_.begin());
}

bool Graph::has_vertex(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

VertexSet Graph::common_link(VertexSet s) const noexcept {
    VertexSet out = vertices();
    for (Vertex v : s) out &= link(v);
    return out;
}

bool Graph::is_complete() const noexcept {
    for (Vertex v : vertices()) {
        if (star(v) != vertices()) return false;
    }
    return true;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex a = 0; a < size(); ++a) {
        for (Vertex b : link(a)) {
            if (a < b) out.emplace_back(a, b);
        }
    }
    return out;
}

VertexSet neighborhood(const Graph& g, Vertex v, bool closed) {
    if (v < 0 || v >= g.size()) throw Error(ErrorKind::unknown_vertex, "vertex index out of range");
    return closed ? g.star(v) : g.link(v);
}

VertexSet restrict_to(VertexSet u, VertexSet s) {
    VertexSet out;
    int k = 0;
    for (Vertex v : u) {
        if (s.contains(v)) out.insert(k);
        ++k;
    }
    return out;
}

VertexSet extend_from(VertexSet u, VertexSet s) {
    VertexSet out;
    int k = 0;
    for (Vertex v : u) {
        if (s.contains(k)) out.insert(v);
        ++k;
    }
    return out;
}

Graph induced_subgraph(const Graph& g, VertexSet u) {
    if (!u.subset_of(g.vertices())) throw Error(ErrorKind::unknown_vertex, "subset not contained in graph");
    std::vector<std::string> names;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<Vertex> members = u.to_vector();
    for (Vertex v : members) names.push_back(g.name(v));
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (g.adjacent(members[i], members[j])) {
                edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
            }
        }
    }
    return Graph::from_indices(static_cast<int>(members.size()), edges, std::move(names));
}

Graph complement(const Graph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < g.size(); ++a) {
        for (Vertex b = a + 1; b < g.size(); ++b) {
            if (!g.adjacent(a, b)) edges.emplace_back(a, b);
        }
    }
    return Graph::from_indices(g.size(), edges, g.names());
}

std::vector<VertexSet> join_decompose(const Graph& g) {
    if (g.empty()) throw Error(ErrorKind::empty_graph, "join decomposition of the empty graph");
    const VertexSet all = g.vertices();
    VertexSet unseen = all;
    std::vector<VertexSet> out;
    while (!unseen.empty()) {
        VertexSet comp = VertexSet::single(unseen.min());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (Vertex v : frontier) next |= all - g.star(v);
            frontier = next - comp;
            comp |= next;
        }
        out.push_back(comp);
        unseen = unseen - comp;
    }
    return out;
}

IrreducibilityWitness irreducibility_witness(const Graph& g) {
    auto comps = join_decompose(g);
    if (comps.size() > 1) {
        return NotIrreducible{comps.front(), g.vertices() - comps.front()};
    }
    if (g.size() == 1) {
        throw Error(ErrorKind::invalid_argument, "a single vertex has neither witness form");
    }
    // Connectivity of g itself.
    VertexSet reach = VertexSet::single(0);
    VertexSet frontier = reach;
    while (!frontier.empty()) {
        VertexSet next;
        for (Vertex v : frontier) next |= g.link(v);
        frontier = next - reach;
        reach |= next;
    }
    if (reach != g.vertices()) return Disconnected{};
    TriplesFound found;
    for (Vertex v0 : g.vertices()) {
        bool done = false;
        for (Vertex v1 : g.link(v0)) {
            VertexSet far = g.vertices() - g.star(v0) - g.star(v1);
            if (!far.empty()) {
                found.triples.push_back({v0, v1, far.min()});
                done = true;
                break;
            }
        }
        if (!done) {
            throw Error(ErrorKind::invalid_argument, "no separating triple for a join-irreducible connected graph");
        }
    }
    return found;
}

VertexSet parse_vertex_set(const Graph& g, std::string_view text) {
    std::string_view body = text;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    body = trim(body);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}') throw Error(ErrorKind::invalid_argument, "unbalanced braces in vertex set");
        body = body.substr(1, body.size() - 2);
    }
    VertexSet out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t end = body.find_first_of(", ", pos);
        if (end == std::string_view::npos) end = body.size();
        std::string_view tok = trim(body.substr(pos, end - pos));
        if (!tok.empty() && tok != "∅") out.insert(g.index_of(tok));
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> vertex_names(const Graph& g, VertexSet s) {
    std::vector<std::string> out;
    for (Vertex v : s) out.push_back(g.name(v));
    return out;
}

std::string format_vertex_set(const Graph& g, VertexSet s) {
    std::string out = "{";
    bool first = true;
    for (Vertex v : s) {
        if (!first) out += ",";
        out += g.name(v);
        first = false;
    }
    return out + "}";
}

}  // namespace gpcalc
