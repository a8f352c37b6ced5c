#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpcalc/graph.hpp"

namespace gpcalc {

using Word = std::vector<Vertex>;

// sigma[i] is the position in the second word of the i-th letter of the first word.
using Permutation = std::vector<std::size_t>;

// Relation between positions of two words, 0-based, sorted, no duplicates.
struct MonotoneMatching {
    std::size_t left_length = 0;
    std::size_t right_length = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    bool operator==(const MonotoneMatching&) const = default;
};

struct Factorization {
    Word left;    // letters in V1
    Word middle;  // reduced relative to (V1, V2)
    Word right;   // letters in V2, reduced relative to (linkset, {})
    VertexSet linkset;

    bool operator==(const Factorization&) const = default;
};

// Throws Error(unknown_vertex) on a letter outside g.
void check_word(const Graph& g, const Word& w);

bool is_reduced(const Graph& g, const Word& w);

struct Reduction {
    Word word;                  // reduced
    MonotoneMatching relation;  // from the input to `word`
};

// Reduces by swaps and merges (leftmost-first); tracks the composed elementary relation.
Reduction reduce_tracked(const Graph& g, const Word& w);
Word reduce(const Graph& g, const Word& w);

// Lexicographically least swap-equivalent word; `w` must be reduced.
Word lex_normal_form(const Graph& g, const Word& w);
// Positions of `w` listed in the order lex_normal_form emits them.
std::vector<std::size_t> lex_normal_order(const Graph& g, const Word& w);
// Canonical representative of the equivalence class of `w`.
Word normal_form(const Graph& g, const Word& w);

struct EquivalenceOptions {
    bool auto_reduce = true;  // otherwise non-reduced input throws Error(non_reduced_input)
};

// Certificate permutation between the reduced forms of w and w2, or nullopt.
std::optional<Permutation> equivalent(const Graph& g, const Word& w, const Word& w2,
                                      EquivalenceOptions options = {});

std::optional<MonotoneMatching> monotone_matching(const Graph& g, const Word& w, const Word& w2);

// Checks totality on both sides, label preservation, and for pairs (i,j),(k,l) whose labels
// are non-adjacent (equal labels included): i<k implies j<=l and j<l implies i<=k.
bool is_monotone_matching(const Graph& g, const Word& w, const Word& w2, const MonotoneMatching& r);

// s after r: {(i,k) : (i,j) in r, (j,k) in s}.
MonotoneMatching compose(const MonotoneMatching& r, const MonotoneMatching& s);
MonotoneMatching inverse(const MonotoneMatching& r);
MonotoneMatching identity_matching(std::size_t n);

bool is_relatively_reduced(const Graph& g, const Word& w, VertexSet v1, VertexSet v2);

// Members of `pool` adjacent to every letter of w.
VertexSet linkset(const Graph& g, const Word& w, VertexSet pool);

Factorization relative_factorize(const Graph& g, const Word& w, VertexSet v1, VertexSet v2);

// The three conditions certifying that left.middle.right is reduced.
bool satisfies_factorization_conditions(const Graph& g, const Factorization& f, VertexSet v1, VertexSet v2);

Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);

// Whitespace-separated ids; "ε" for the empty word.
std::string format_word(const Graph& g, const Word& w);
Word parse_word(const Graph& g, std::string_view text);

}  // namespace gpcalc
