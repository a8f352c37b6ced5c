#include "gpcalc/decider.hpp"

#include <optional>
#include <stdexcept>

#include "gpcalc/errors.hpp"

namespace gpcalc {

const char* to_string(Truth t) {
    switch (t) {
        case Truth::yes: return "yes";
        case Truth::no: return "no";
        case Truth::unknown: return "unknown";
    }
    return "unknown";
}

Truth conjunction(Truth a, Truth b) {
    if (a == Truth::no || b == Truth::no) return Truth::no;
    if (a == Truth::unknown || b == Truth::unknown) return Truth::unknown;
    return Truth::yes;
}

Truth disjunction(Truth a, Truth b) {
    if (a == Truth::yes || b == Truth::yes) return Truth::yes;
    if (a == Truth::unknown || b == Truth::unknown) return Truth::unknown;
    return Truth::no;
}

std::string label(const Graph& g, const Clause& c) {
    std::string out = c.id;
    switch (c.value) {
        case Truth::yes: out += " holds"; break;
        case Truth::no: out += " fails"; break;
        case Truth::unknown: out += " unresolved"; break;
    }
    if (c.at.size() == 1) {
        out += " at " + g.name(c.at.front());
    } else if (c.at.size() > 1) {
        out += " at (";
        for (std::size_t i = 0; i < c.at.size(); ++i) out += (i ? "," : "") + g.name(c.at[i]);
        out += ")";
    }
    return out;
}

namespace {

void collect(const Graph& g, const Clause& c, Truth want, std::vector<std::string>& out) {
    if (c.children.empty()) {
        // An Unknown verdict is explained by every leaf that did not hold.
        if (c.value == want || (want == Truth::unknown && c.value == Truth::no)) out.push_back(label(g, c));
        return;
    }
    for (const auto& ch : c.children) collect(g, ch, want, out);
}

}  // namespace

std::vector<std::string> Verdict::reasons(const Graph& g) const {
    std::vector<std::string> out;
    collect(g, witness, value, out);
    return out;
}

const char* to_string(Property p) {
    switch (p) {
        case Property::diffuse: return "diffuse";
        case Property::factor: return "factor";
        case Property::full: return "full";
        case Property::amenable: return "amenable";
    }
    return "?";
}

Property parse_property(const std::string& s) {
    if (s == "diffuse") return Property::diffuse;
    if (s == "factor") return Property::factor;
    if (s == "full") return Property::full;
    if (s == "amenable") return Property::amenable;
    throw Error(ErrorKind::invalid_argument, "unknown property '" + s + "'");
}

const char* to_string(Mode m) { return m == Mode::tracial ? "tracial" : "statial"; }

Mode parse_mode(const std::string& s) {
    if (s == "tracial") return Mode::tracial;
    if (s == "statial") return Mode::statial;
    throw Error(ErrorKind::invalid_argument, "unknown mode '" + s + "'");
}

void check_descriptors(const Graph& g, const Descriptors& d) {
    if (d.size() != static_cast<std::size_t>(g.size())) {
        throw Error(ErrorKind::missing_descriptor, "expected one descriptor per vertex");
    }
    for (const auto& x : d) validate(x);
}

namespace {

const AlgebraDescriptor& at(const Descriptors& d, Vertex v) { return d[static_cast<std::size_t>(v)]; }

bool dims_both_two(const Descriptors& d, Vertex v, Vertex w) {
    return at(d, v).l2dim == ExtNat(2) && at(d, w).l2dim == ExtNat(2);
}

bool max_dim_at_least_three(const Descriptors& d, Vertex v, Vertex w) {
    return at(d, v).l2dim >= ExtNat(3) || at(d, w).l2dim >= ExtNat(3);
}

Truth truth(bool b) { return b ? Truth::yes : Truth::no; }

Clause node(std::string id, Truth value, std::vector<Vertex> verts = {}, std::string note = {}) {
    Clause c;
    c.id = std::move(id);
    c.value = value;
    c.at = std::move(verts);
    c.note = std::move(note);
    return c;
}

// Missing state-zero unitaries, one failing clause per vertex.
std::vector<Clause> szu_failures(const Graph& g, const Descriptors& d, const std::string& id) {
    std::vector<Clause> out;
    for (Vertex v : g.vertices()) {
        if (!at(d, v).state_zero_unitary) {
            out.push_back(node(id, Truth::no, {v}, "centralizer has no state-zero unitary"));
        }
    }
    return out;
}

Verdict finish(Clause root) {
    Verdict v;
    v.value = root.value;
    v.witness = std::move(root);
    return v;
}

Verdict hypothesis_unknown(std::string id, std::vector<Clause> failures) {
    Clause root = node(std::move(id), Truth::unknown, {}, "theorem hypothesis fails");
    root.children = std::move(failures);
    return finish(std::move(root));
}

// Both v and w are adjacent to every vertex of `others`.
std::optional<Vertex> non_neighbour(const Graph& g, Vertex v, Vertex w, VertexSet others) {
    for (Vertex u : others) {
        if (!g.adjacent(u, v) || !g.adjacent(u, w)) return u;
    }
    return std::nullopt;
}

Verdict global_diffuse(const Graph& g, const Descriptors& d) {
    Clause a = node("ThmD.1.a", Truth::no, {}, "no vertex algebra is diffuse");
    for (Vertex v : g.vertices()) {
        if (at(d, v).diffuse) {
            a = node("ThmD.1.a", Truth::yes, {v}, "diffuse vertex algebra");
            break;
        }
    }
    Clause b = node("ThmD.1.b", Truth::no, {}, "graph is complete");
    for (Vertex v : g.vertices()) {
        VertexSet far = g.vertices() - g.star(v);
        if (!far.empty()) {
            b = node("ThmD.1.b", Truth::yes, {v, far.min()}, "non-adjacent pair");
            break;
        }
    }
    Clause root = node("ThmD.1", disjunction(a.value, b.value));
    root.children = {a, b};
    return finish(std::move(root));
}

Verdict global_factor_or_full(const Graph& g, const Descriptors& d, bool full) {
    const std::string id = full ? "ThmD.3" : "ThmD.2";
    Clause root = node(id, Truth::yes);
    const VertexSet all = g.vertices();
    for (Vertex v : all) {
        if (g.star(v) != all) continue;
        bool ok = full ? at(d, v).full : at(d, v).factor;
        root.children.push_back(node(id + ".a", truth(ok), {v}, full ? "central vertex must be full"
                                                                     : "central vertex must be a factor"));
    }
    for (Vertex v : all) {
        for (Vertex w : all - g.star(v)) {
            if (w < v) continue;
            if ((g.star(v) | VertexSet::single(w)) != all || (g.star(w) | VertexSet::single(v)) != all) continue;
            root.children.push_back(node(id + ".b", truth(max_dim_at_least_three(d, v, w)), {v, w},
                                         "isolated free pair needs max dim >= 3"));
        }
    }
    for (const auto& c : root.children) root.value = conjunction(root.value, c.value);
    if (root.children.empty()) root.note = "no central vertex and no isolated free pair";
    return finish(std::move(root));
}

Verdict global_amenable(const Graph& g, const Descriptors& d) {
    Clause root = node("Amen", Truth::yes);
    const VertexSet all = g.vertices();
    for (Vertex v : all) root.children.push_back(node("Amen.1", truth(at(d, v).amenable), {v}, "vertex amenable"));
    for (Vertex v : all) {
        for (Vertex w : all - g.star(v)) {
            if (w < v) continue;
            Clause pair = node("Amen.2", Truth::yes, {v, w});
            Clause dims = node("Amen.2.dim", truth(dims_both_two(d, v, w)), {v, w}, "both dims must be 2");
            Truth adj = Truth::yes;
            std::vector<Vertex> where{v, w};
            const VertexSet others = all - VertexSet::single(v) - VertexSet::single(w);
            if (auto u = non_neighbour(g, v, w, others)) {
                adj = Truth::no;
                where.push_back(*u);
            }
            Clause adjacency = node("Amen.2.adj", adj, where, "both adjacent to all other vertices");
            pair.value = conjunction(dims.value, adjacency.value);
            pair.children = {dims, adjacency};
            root.children.push_back(std::move(pair));
        }
    }
    for (const auto& c : root.children) root.value = conjunction(root.value, c.value);
    return finish(std::move(root));
}

}  // namespace

Verdict decide_global(const Graph& g, const Descriptors& d, Property p) {
    if (g.empty()) throw Error(ErrorKind::empty_graph, "graph product over the empty graph");
    check_descriptors(g, d);
    if (p == Property::amenable) return global_amenable(g, d);
    auto failures = szu_failures(g, d, "ThmD.hyp");
    if (!failures.empty()) return hypothesis_unknown("ThmD", std::move(failures));
    if (p == Property::diffuse) return global_diffuse(g, d);
    return global_factor_or_full(g, d, p == Property::full);
}

Verdict decide_global_via_join(const Graph& g, const Descriptors& d, Property p) {
    if (g.empty()) throw Error(ErrorKind::empty_graph, "graph product over the empty graph");
    check_descriptors(g, d);
    const std::string id = std::string("Join.") + to_string(p);
    if (p != Property::amenable) {
        auto failures = szu_failures(g, d, "ThmD.hyp");
        if (!failures.empty()) return hypothesis_unknown(id, std::move(failures));
    }
    // The tensor product is diffuse iff some factor is; factor, full, amenable iff all are.
    Clause root = node(id, p == Property::diffuse ? Truth::no : Truth::yes);
    for (VertexSet comp : join_decompose(g)) {
        auto members = comp.to_vector();
        bool value = false;
        std::string kind;
        if (members.size() == 1) {
            const auto& x = at(d, members[0]);
            kind = "singleton";
            switch (p) {
                case Property::diffuse: value = x.diffuse; break;
                case Property::factor: value = x.factor; break;
                case Property::full: value = x.full; break;
                case Property::amenable: value = x.amenable; break;
            }
        } else if (members.size() == 2) {
            kind = "free pair";
            const bool big = max_dim_at_least_three(d, members[0], members[1]);
            switch (p) {
                case Property::diffuse: value = true; break;
                case Property::factor:
                case Property::full: value = big; break;
                case Property::amenable: value = !big; break;
            }
        } else {
            kind = "irreducible, three or more vertices";
            value = p != Property::amenable;
        }
        root.children.push_back(node("Join.component", truth(value), members, kind));
    }
    for (const auto& c : root.children) {
        root.value = p == Property::diffuse ? disjunction(root.value, c.value) : conjunction(root.value, c.value);
    }
    return finish(std::move(root));
}

Verdict decide_relative_amenability(const Graph& g, const Descriptors& d, VertexSet v1, VertexSet v2, Mode mode,
                                    const RelativeAmenabilityOptions& options) {
    check_descriptors(g, d);
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    const std::string id = mode == Mode::tracial ? "ThmA" : "ThmB";
    auto failures = szu_failures(g, d, id + ".hyp");
    if (mode == Mode::tracial) {
        for (Vertex v : g.vertices()) {
            if (!at(d, v).tracial) failures.push_back(node(id + ".hyp.tracial", Truth::no, {v}, "state is not tracial"));
        }
    }
    if (!failures.empty()) {
        if (!options.override_hypotheses) {
            throw HypothesisViolation(label(g, failures.front()), failures.front().note);
        }
        return hypothesis_unknown(id, std::move(failures));
    }

    Clause root = node(id, Truth::yes);
    const VertexSet outside = v1 - v2;
    for (Vertex v : outside) {
        root.children.push_back(node(id + ".1", truth(at(d, v).amenable), {v}, "vertex amenable"));
    }
    for (Vertex v : outside) {
        for (Vertex w : v1 - g.star(v)) {
            Clause a = node(id + ".2.a", Truth::yes, {v, w});
            if (dims_both_two(d, v, w)) {
                a.note = "both dims 2: free product amenable";
            } else if (!v2.contains(w)) {
                a.value = Truth::no;
                a.note = "free product with max dim >= 3 is non-amenable";
            } else if (mode == Mode::tracial) {
                a.value = Truth::no;
                a.note = "tracial case requires both dims 2";
            } else if (auto it = options.assumptions.find({v, w}); it != options.assumptions.end()) {
                a.value = truth(it->second);
                a.note = "supplied assumption on relative amenability over the second vertex";
            } else {
                a.value = Truth::unknown;
                a.note = "statial, second vertex in V2, max dim >= 3: not reducible to dimensions";
            }
            std::vector<Vertex> where{v, w};
            Truth adj = Truth::yes;
            const VertexSet others = v1 - VertexSet::single(v) - VertexSet::single(w);
            if (auto u = non_neighbour(g, v, w, others)) {
                adj = Truth::no;
                where.push_back(*u);
            }
            Clause b = node(id + ".2.b", adj, where, "both adjacent to all of V1 minus the pair");
            Clause pair = node(id + ".2", conjunction(a.value, b.value), {v, w});
            pair.children = {a, b};
            root.children.push_back(std::move(pair));
        }
    }
    for (const auto& c : root.children) root.value = conjunction(root.value, c.value);
    if (root.children.empty()) root.note = "vacuous";
    return finish(std::move(root));
}

Verdict decide_relative_diffuseness(const Graph& g, const Descriptors& d, VertexSet v1, VertexSet v2,
                                    bool override_hypotheses) {
    check_descriptors(g, d);
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    std::vector<Clause> failures;
    for (Vertex v : g.vertices()) {
        if (!at(d, v).tracial) {
            failures.push_back(node("RelDiff.hyp.tracial", Truth::no, {v}, "state is not tracial"));
        } else if (!at(d, v).state_zero_unitary) {
            failures.push_back(node("RelDiff.hyp", Truth::no, {v}, "no trace-zero unitary"));
        }
    }
    if (!failures.empty()) {
        if (!override_hypotheses) throw HypothesisViolation(label(g, failures.front()), failures.front().note);
        return hypothesis_unknown("RelDiff", std::move(failures));
    }

    const VertexSet outside = v1 - v2;
    const VertexSet inside = v1 & v2;

    Clause iva = node("RelDiff.iv.a", Truth::no, {}, "no non-adjacent pair leaving V2");
    for (Vertex v : outside) {
        VertexSet far = v1 - g.star(v);
        if (!far.empty()) {
            iva = node("RelDiff.iv.a", Truth::yes, {v, far.min()}, "non-adjacent pair in V1 with a vertex outside V2");
            break;
        }
    }
    Clause ivb = node("RelDiff.iv.b", Truth::no, {}, "no diffuse vertex outside V2");
    for (Vertex v : outside) {
        if (at(d, v).diffuse) {
            ivb = node("RelDiff.iv.b", Truth::yes, {v}, "diffuse vertex outside V2");
            break;
        }
    }
    Clause iv = node("RelDiff.iv", disjunction(iva.value, ivb.value));
    iv.children = {iva, ivb};

    Clause iiia = node("RelDiff.iii.a", Truth::no, {}, "V1 minus V2 fully adjacent to V1 and V2");
    for (Vertex v : outside) {
        VertexSet far = inside - g.star(v);
        if (!far.empty()) {
            iiia = node("RelDiff.iii.a", Truth::yes, {v, far.min()}, "non-adjacent pair across V1 minus V2 and V1 and V2");
            break;
        }
    }
    Clause iiib = node("RelDiff.iii.b", Truth::no, {}, "V1 minus V2 is empty");
    if (!outside.empty()) {
        Graph sub = induced_subgraph(g, outside);
        Descriptors sd;
        for (Vertex v : outside) sd.push_back(at(d, v));
        Verdict diffuse = decide_global(sub, sd, Property::diffuse);
        iiib = node("RelDiff.iii.b", diffuse.value, outside.to_vector(), "subalgebra over V1 minus V2 diffuse");
    }
    Clause iii = node("RelDiff.iii", disjunction(iiia.value, iiib.value));
    iii.children = {iiia, iiib};

    if (iii.value != iv.value) {
        throw std::logic_error("relative diffuseness: the local and subalgebra conditions disagree");
    }
    Clause root = node("RelDiff", iv.value);
    root.children = {iv, iii};
    return finish(std::move(root));
}

}  // namespace gpcalc
