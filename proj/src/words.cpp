#include "gpcalc/words.hpp"

#include <algorithm>
#include <sstream>

#include "gpcalc/errors.hpp"

namespace gpcalc {

namespace {

// First offending pair (i,k) of a non-reduced word, or nullopt. Scans with the
// blocked set: v is blocked once it occurs and every later letter is adjacent to it.
std::optional<std::pair<std::size_t, std::size_t>> first_violation(const Graph& g, const Word& w) {
    std::vector<std::size_t> last(static_cast<std::size_t>(g.size()), 0);
    VertexSet blocked;
    for (std::size_t k = 0; k < w.size(); ++k) {
        Vertex u = w[k];
        if (blocked.contains(u)) return std::make_pair(last[static_cast<std::size_t>(u)], k);
        blocked = (blocked & g.link(u)) | VertexSet::single(u);
        last[static_cast<std::size_t>(u)] = k;
    }
    return std::nullopt;
}

MonotoneMatching from_origins(std::size_t left_length, const std::vector<std::vector<std::size_t>>& origins) {
    MonotoneMatching r;
    r.left_length = left_length;
    r.right_length = origins.size();
    for (std::size_t p = 0; p < origins.size(); ++p) {
        for (std::size_t o : origins[p]) r.pairs.emplace_back(o, p);
    }
    std::sort(r.pairs.begin(), r.pairs.end());
    return r;
}

}  // namespace

void check_word(const Graph& g, const Word& w) {
    for (Vertex v : w) {
        if (v < 0 || v >= g.size()) throw Error(ErrorKind::unknown_vertex, "letter outside the graph");
    }
}

bool is_reduced(const Graph& g, const Word& w) {
    check_word(g, w);
    return !first_violation(g, w).has_value();
}

Reduction reduce_tracked(const Graph& g, const Word& w) {
    check_word(g, w);
    Word cur = w;
    std::vector<std::vector<std::size_t>> origins(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) origins[i] = {i};
    while (auto bad = first_violation(g, cur)) {
        auto [i, k] = *bad;
        // Letters strictly between are adjacent to cur[k]: swap it down to i+1, then merge.
        origins[i].insert(origins[i].end(), origins[k].begin(), origins[k].end());
        std::sort(origins[i].begin(), origins[i].end());
        cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(k));
        origins.erase(origins.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return {cur, from_origins(w.size(), origins)};
}

Word reduce(const Graph& g, const Word& w) { return reduce_tracked(g, w).word; }

std::vector<std::size_t> lex_normal_order(const Graph& g, const Word& w) {
    std::vector<std::size_t> remaining(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) remaining[i] = i;
    std::vector<std::size_t> order;
    order.reserve(w.size());
    while (!remaining.empty()) {
        VertexSet prior;
        std::size_t best = remaining.size();
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            Vertex u = w[remaining[r]];
            if (prior.subset_of(g.link(u)) && (best == remaining.size() || u < w[remaining[best]])) best = r;
            prior.insert(u);
        }
        order.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return order;
}

Word lex_normal_form(const Graph& g, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (std::size_t i : lex_normal_order(g, w)) out.push_back(w[i]);
    return out;
}

Word normal_form(const Graph& g, const Word& w) { return lex_normal_form(g, reduce(g, w)); }

namespace {

std::optional<Permutation> sigma_of_reduced(const Graph& g, const Word& w, const Word& w2) {
    if (w.size() != w2.size()) return std::nullopt;
    std::vector<std::vector<std::size_t>> occ(static_cast<std::size_t>(g.size()));
    for (std::size_t j = 0; j < w2.size(); ++j) occ[static_cast<std::size_t>(w2[j])].push_back(j);
    std::vector<std::size_t> used(static_cast<std::size_t>(g.size()), 0);
    Permutation sigma(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto v = static_cast<std::size_t>(w[i]);
        if (used[v] >= occ[v].size()) return std::nullopt;
        sigma[i] = occ[v][used[v]++];
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (!g.adjacent(w[i], w[j]) && sigma[i] > sigma[j]) return std::nullopt;
        }
    }
    return sigma;
}

}  // namespace

std::optional<Permutation> equivalent(const Graph& g, const Word& w, const Word& w2, EquivalenceOptions options) {
    check_word(g, w);
    check_word(g, w2);
    if (!options.auto_reduce) {
        if (!is_reduced(g, w) || !is_reduced(g, w2)) {
            throw Error(ErrorKind::non_reduced_input, "equivalence certificate requires reduced words");
        }
        return sigma_of_reduced(g, w, w2);
    }
    return sigma_of_reduced(g, reduce(g, w), reduce(g, w2));
}

std::optional<MonotoneMatching> monotone_matching(const Graph& g, const Word& w, const Word& w2) {
    Reduction r1 = reduce_tracked(g, w);
    Reduction r2 = reduce_tracked(g, w2);
    auto sigma = sigma_of_reduced(g, r1.word, r2.word);
    if (!sigma) return std::nullopt;
    // Origins of each reduced position are consecutive occurrences of one letter;
    // pair the two origin chains by a monotone staircase.
    std::vector<std::vector<std::size_t>> from1(r1.word.size()), from2(r2.word.size());
    for (auto [i, p] : r1.relation.pairs) from1[p].push_back(i);
    for (auto [j, q] : r2.relation.pairs) from2[q].push_back(j);
    MonotoneMatching out;
    out.left_length = w.size();
    out.right_length = w2.size();
    for (std::size_t p = 0; p < r1.word.size(); ++p) {
        const auto& a = from1[p];
        const auto& b = from2[(*sigma)[p]];
        std::size_t steps = std::max(a.size(), b.size());
        for (std::size_t t = 0; t < steps; ++t) {
            out.pairs.emplace_back(a[std::min(t, a.size() - 1)], b[std::min(t, b.size() - 1)]);
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
    return out;
}

bool is_monotone_matching(const Graph& g, const Word& w, const Word& w2, const MonotoneMatching& r) {
    if (r.left_length != w.size() || r.right_length != w2.size()) return false;
    std::vector<bool> hit1(w.size(), false), hit2(w2.size(), false);
    for (auto [i, j] : r.pairs) {
        if (i >= w.size() || j >= w2.size()) return false;
        if (w[i] != w2[j]) return false;
        hit1[i] = true;
        hit2[j] = true;
    }
    if (std::find(hit1.begin(), hit1.end(), false) != hit1.end()) return false;
    if (std::find(hit2.begin(), hit2.end(), false) != hit2.end()) return false;
    for (auto [i, j] : r.pairs) {
        for (auto [k, l] : r.pairs) {
            if (g.adjacent(w[i], w[k])) continue;
            if (i < k && j > l) return false;
            if (j < l && i > k) return false;
        }
    }
    return true;
}

MonotoneMatching compose(const MonotoneMatching& r, const MonotoneMatching& s) {
    if (r.right_length != s.left_length) {
        throw Error(ErrorKind::invalid_argument, "composing matchings with mismatched middle word");
    }
    std::vector<std::vector<std::size_t>> next(s.left_length);
    for (auto [j, k] : s.pairs) next[j].push_back(k);
    MonotoneMatching out;
    out.left_length = r.left_length;
    out.right_length = s.right_length;
    for (auto [i, j] : r.pairs) {
        for (std::size_t k : next[j]) out.pairs.emplace_back(i, k);
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
    return out;
}

MonotoneMatching inverse(const MonotoneMatching& r) {
    MonotoneMatching out;
    out.left_length = r.right_length;
    out.right_length = r.left_length;
    for (auto [i, j] : r.pairs) out.pairs.emplace_back(j, i);
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

MonotoneMatching identity_matching(std::size_t n) {
    MonotoneMatching out;
    out.left_length = n;
    out.right_length = n;
    for (std::size_t i = 0; i < n; ++i) out.pairs.emplace_back(i, i);
    return out;
}

bool is_relatively_reduced(const Graph& g, const Word& w, VertexSet v1, VertexSet v2) {
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    check_word(g, w);
    // Seeding with all of v1 at once is equivalent to prepending each member separately,
    // since blocking only involves equal letters. The right condition uses the word alone.
    VertexSet from_left = v1;
    VertexSet own;
    for (Vertex u : w) {
        if (from_left.contains(u)) return false;
        from_left = (from_left & g.link(u)) | VertexSet::single(u);
        own = (own & g.link(u)) | VertexSet::single(u);
    }
    return (own & v2).empty();
}

VertexSet linkset(const Graph& g, const Word& w, VertexSet pool) {
    VertexSet out = pool;
    for (Vertex u : w) out &= g.link(u);
    return out;
}

Factorization relative_factorize(const Graph& g, const Word& w, VertexSet v1, VertexSet v2) {
    if (!v1.subset_of(g.vertices()) || !v2.subset_of(g.vertices())) {
        throw Error(ErrorKind::unknown_vertex, "vertex set outside the graph");
    }
    Word rest = reduce(g, w);
    // Longest prefix over v1 across the swap class: extract available v1-letters until none remain.
    Word left;
    for (bool progress = true; progress;) {
        progress = false;
        VertexSet prior;
        for (std::size_t r = 0; r < rest.size(); ++r) {
            Vertex u = rest[r];
            if (v1.contains(u) && prior.subset_of(g.link(u))) {
                left.push_back(u);
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
                progress = true;
                break;
            }
            prior.insert(u);
        }
    }
    // Then the longest suffix over v2 of what remains.
    Word right_reversed;
    for (bool progress = true; progress;) {
        progress = false;
        VertexSet later;
        for (std::size_t r = rest.size(); r-- > 0;) {
            Vertex u = rest[r];
            if (v2.contains(u) && later.subset_of(g.link(u))) {
                right_reversed.push_back(u);
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
                progress = true;
                break;
            }
            later.insert(u);
        }
    }
    Word right(right_reversed.rbegin(), right_reversed.rend());
    Factorization f;
    f.left = lex_normal_form(g, left);
    f.middle = lex_normal_form(g, rest);
    f.right = lex_normal_form(g, right);
    f.linkset = linkset(g, f.middle, v1 & v2);
    return f;
}

bool satisfies_factorization_conditions(const Graph& g, const Factorization& f, VertexSet v1, VertexSet v2) {
    for (Vertex u : f.left) {
        if (!v1.contains(u)) return false;
    }
    for (Vertex u : f.right) {
        if (!v2.contains(u)) return false;
    }
    if (f.linkset != linkset(g, f.middle, v1 & v2)) return false;
    return is_reduced(g, f.left) && is_relatively_reduced(g, f.middle, v1, v2) &&
           is_relatively_reduced(g, f.right, f.linkset, VertexSet{});
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

std::string format_word(const Graph& g, const Word& w) {
    if (w.empty()) return "ε";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += g.name(w[i]);
    }
    return out;
}

Word parse_word(const Graph& g, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    Word out;
    while (in >> tok) {
        if (tok == "ε") continue;
        out.push_back(g.index_of(tok));
    }
    return out;
}

}  // namespace gpcalc
