#pragma once

// Brute-force references used by the unit tests and the acceptance binary.
// Nothing here calls into the library code it is meant to check.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gpcalc/gauss.hpp"
#include "gpcalc/graph.hpp"
#include "gpcalc/moments.hpp"
#include "gpcalc/vertex_algebra.hpp"
#include "gpcalc/words.hpp"

namespace oracle {

using gpcalc::Gauss;
using gpcalc::Graph;
using gpcalc::Vertex;
using gpcalc::VertexSet;
using gpcalc::Word;

// Every word over n letters of length <= max_len, shortest first, lexicographic inside a length.
std::vector<Word> all_words(int n, int max_len);
std::vector<Word> words_of_length(int n, int len);

// Literal definition: for i<k with equal letters some letter strictly between is non-adjacent.
bool reduced(const Graph& g, const Word& w);
// Literal definition: v.w reduced for v in v1, w.v reduced for v in v2.
bool relatively_reduced(const Graph& g, const Word& w, VertexSet v1, VertexSet v2);
// Members of pool adjacent to every letter; the whole pool for the empty word.
VertexSet linkset(const Graph& g, const Word& w, VertexSet pool);

// Words one swap, merge or split away from w, never longer than cap.
std::vector<Word> moves(const Graph& g, const Word& w, std::size_t cap);

// Class label per word of `words` under the closure of the three moves, restricted to
// lengths <= cap. `words` must contain every word of length <= cap.
std::vector<int> closure_classes(const Graph& g, const std::vector<Word>& words, std::size_t cap);

// Equivalence by breadth-first search from w, lengths capped at max(|w|, |w2|).
bool bfs_equivalent(const Graph& g, const Word& w, const Word& w2);

// Labeled graphs on n vertices, by edge bitmask.
std::vector<Graph> all_graphs(int n);
// One representative per isomorphism class.
std::vector<Graph> graph_classes(int n);
Graph random_graph(int n, double p, std::mt19937_64& rng);

// Bipartitions (A, B), A and B nonempty, every a in A adjacent to every b in B.
bool splits_as_join(const Graph& g, VertexSet s);

// Non-crossing partitions of {0..n-1}; blocks sorted, listed by first element.
std::vector<std::vector<std::vector<int>>> noncrossing_partitions(int n);

struct Letter {
    Vertex vertex;
    gpcalc::Matrix matrix;
};

// State on a complete graph: each vertex's letters multiply in order, vertex states multiply.
Gauss tensor_moment(const std::vector<gpcalc::ConcreteAlgebra>& algebras, const std::vector<Letter>& word);
// State on an edgeless graph: sum over non-crossing partitions whose blocks are
// single-vertex, of products of free cumulants computed by Moebius recursion.
Gauss free_moment(const std::vector<gpcalc::ConcreteAlgebra>& algebras, const std::vector<Letter>& word);

// sum_j Tr(x_j a_j) by direct index arithmetic.
Gauss vertex_state(const gpcalc::ConcreteAlgebra& a, const gpcalc::Matrix& x);

// Random algebra with total matrix size <= max_size; tracial forces equal eigenvalues per block.
gpcalc::ConcreteAlgebra random_algebra(std::mt19937_64& rng, int max_size, bool tracial);
// Small Gaussian-integer entries, some rational.
gpcalc::Matrix random_matrix(std::mt19937_64& rng, const gpcalc::ConcreteAlgebra& a);
// random_matrix minus its state times the identity.
gpcalc::Matrix random_centered(std::mt19937_64& rng, const gpcalc::ConcreteAlgebra& a);

// min |sum_b weight_b * mean_k exp(i theta_bk)| over angles, sizes[b] angles per block,
// by multistart coordinate descent. Used for unitary trace and centralizer state ranges.
double min_abs_weighted_phase_sum(const std::vector<double>& weights, const std::vector<int>& sizes,
                                  std::mt19937_64& rng, int starts = 24);

}  // namespace oracle
