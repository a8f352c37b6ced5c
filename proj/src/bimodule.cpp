#include "gpcalc/bimodule.hpp"

#include "gpcalc/errors.hpp"

namespace gpcalc {

const char* to_string(WordCounting c) { return c == WordCounting::words ? "words" : "classes"; }

WordCounting parse_word_counting(const std::string& s) {
    if (s == "words") return WordCounting::words;
    if (s == "classes") return WordCounting::classes;
    throw Error(ErrorKind::invalid_argument, "unknown counting mode '" + s + "'");
}

namespace {

std::vector<ExtNat> weights_of(const Graph& g, const std::vector<ExtNat>& dims) {
    if (dims.size() != static_cast<std::size_t>(g.size())) {
        throw Error(ErrorKind::invalid_argument, "one dimension per vertex is required");
    }
    std::vector<ExtNat> w;
    for (const auto& d : dims) {
        if (d < ExtNat(2)) throw Error(ErrorKind::invalid_argument, "vertex dimensions must be at least 2");
        w.push_back(d.predecessor());
    }
    return w;
}

// All subsets of s, in increasing bitmask order.
std::vector<VertexSet> subsets(VertexSet s) {
    std::vector<VertexSet> out;
    std::uint64_t sub = 0;
    const std::uint64_t bits = s.bits();
    do {
        out.emplace_back(sub);
        sub = (sub - bits) & bits;
    } while (sub != 0);
    return out;
}

}  // namespace

Multiplicity multiplicity(const Graph& g, VertexSet v1, VertexSet v2, VertexSet u, const std::vector<ExtNat>& dims,
                          std::size_t max_length, const BimoduleOptions& options) {
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    if (!u.subset_of(v1 & v2)) throw Error(ErrorKind::invalid_linkset, "linkset must lie inside V1 & V2");
    const auto weights = weights_of(g, dims);
    const auto reps =
        options.counting == WordCounting::classes ? Representatives::normal_forms : Representatives::all_words;
    auto a = build_automaton(g, v1, v2, u, reps);
    auto counts = count_words(a, max_length, weights, options.execution);
    Multiplicity m;
    m.k = counts.total;
    m.series = GradedSeries{max_length, std::move(counts.per_length)};
    m.language_finite = counts.language_finite;
    return m;
}

ExtNat FormalBimodule::get(VertexSet u) const {
    auto it = mult_.find(u.bits());
    return it == mult_.end() ? ExtNat(0) : it->second;
}

void FormalBimodule::set(VertexSet u, const ExtNat& k) {
    if (!u.subset_of(left_ & right_)) throw Error(ErrorKind::invalid_linkset, "key must lie inside left & right");
    if (k.is_zero()) {
        mult_.erase(u.bits());
    } else {
        mult_[u.bits()] = k;
    }
}

void FormalBimodule::add(VertexSet u, const ExtNat& k) { set(u, get(u) + k); }

std::vector<std::pair<VertexSet, ExtNat>> FormalBimodule::entries() const {
    std::vector<std::pair<VertexSet, ExtNat>> out;
    for (const auto& [bits, k] : mult_) out.emplace_back(VertexSet(bits), k);
    return out;
}

FormalBimodule FormalBimodule::identity(VertexSet v) {
    FormalBimodule b(v, v);
    b.set(v, ExtNat(1));
    return b;
}

Decomposition decompose(const Graph& g, VertexSet v1, VertexSet v2, const std::vector<ExtNat>& dims,
                        std::size_t max_length, const BimoduleOptions& options) {
    const auto keys = subsets(v1 & v2);
    // Per-key runs are serial inside so the outer loop owns the threads.
    BimoduleOptions inner = options;
    inner.execution = ExecutionPolicy::serial;
    auto parts = kernels::map_indexed(
        keys.size(), [&](std::size_t i) { return multiplicity(g, v1, v2, keys[i], dims, max_length, inner); },
        options.execution);
    Decomposition out;
    out.bimodule = FormalBimodule(v1, v2);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        out.bimodule.set(keys[i], parts[i].k);
        out.parts.emplace_back(keys[i], std::move(parts[i]));
    }
    return out;
}

FormalBimodule fuse(const Graph& g, const FormalBimodule& first, const FormalBimodule& second,
                    const std::vector<ExtNat>& dims, std::size_t max_length, const BimoduleOptions& options) {
    if (first.right_set() != second.left_set()) {
        throw Error(ErrorKind::mismatched_middle, "right set of the first factor must equal left set of the second");
    }
    const VertexSet middle = first.right_set();
    if (!middle.subset_of(g.vertices())) throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    const Graph sub = induced_subgraph(g, middle);
    std::vector<ExtNat> sub_dims;
    for (Vertex v : middle) sub_dims.push_back(dims.at(static_cast<std::size_t>(v)));

    FormalBimodule out(first.left_set(), second.right_set());
    for (const auto& [u1, m1] : first.entries()) {
        for (const auto& [u2, m2] : second.entries()) {
            auto inner = decompose(sub, restrict_to(middle, u1), restrict_to(middle, u2), sub_dims, max_length, options);
            for (const auto& [w, k] : inner.bimodule.entries()) out.add(extend_from(middle, w), m1 * m2 * k);
        }
    }
    return out;
}

namespace {

Clause remapped(Clause c, const std::vector<Vertex>& members) {
    for (auto& v : c.at) v = members[static_cast<std::size_t>(v)];
    for (auto& ch : c.children) ch = remapped(std::move(ch), members);
    return c;
}

}  // namespace

Verdict weakly_coarse_complement(const Graph& g, VertexSet v0, const Descriptors& d) {
    check_descriptors(g, d);
    if (!v0.subset_of(g.vertices())) throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    Clause root;
    root.id = "Coarse";
    root.value = Truth::yes;
    for (Vertex v : g.vertices() - v0) {
        const VertexSet s = g.link(v) & v0;
        Clause c;
        c.id = "Coarse.star";
        c.at = {v};
        if (s.empty()) {
            c.value = Truth::yes;
            c.note = "star meets V0 in the empty set";
        } else {
            const auto members = s.to_vector();
            Descriptors sd;
            for (Vertex x : members) sd.push_back(d[static_cast<std::size_t>(x)]);
            Verdict amen = decide_global(induced_subgraph(g, s), sd, Property::amenable);
            c.value = amen.value;
            c.note = "amenability over star & V0";
            c.children.push_back(remapped(std::move(amen.witness), members));
        }
        root.value = conjunction(root.value, c.value);
        root.children.push_back(std::move(c));
    }
    if (root.children.empty()) root.note = "V0 is every vertex; the complement is zero";
    Verdict out;
    out.value = root.value;
    out.witness = std::move(root);
    return out;
}

}  // namespace gpcalc
